//! The morphism category `Mor_n(A)`: chains `X_n → X_{n-1} → ⋯ → X_1` of
//! `A`-module maps, the monomorphism and epimorphism subcategories, the
//! functors `m_i`/`p_i`, and the equivalence with `T_n(A)`-modules.
//!
//! Branch and map indices in the public API are 1-based: `branch(1)` is the
//! receiving end `X_1` and `phi(i)` is `φ_i: X_{i+1} → X_i`.

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::algcore::{triangular_algebra, Algebra};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Rational};
use crate::modrep::{
    self, cokernel, direct_sum, dual, ext_dims, fitting_decompose, hom_basis, hom_dim, hom_matrices, inj_dim,
    is_injective, is_isomorphic, is_projective, kernel, proj_dim, DimBound, Module, ModuleMap,
};
use crate::Caps;

struct MorData {
    algebra: Arc<Algebra>,
    branches: Vec<Module>,
    phi: Vec<ModuleMap>,
    flat: OnceLock<Module>,
}

/// An object `(X_1, …, X_n; φ_1, …, φ_{n-1})` of `Mor_n(A)`. Cheap to clone.
#[derive(Clone)]
pub struct MorObject(Arc<MorData>);

impl std::fmt::Debug for MorObject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ranks: Vec<usize> = self.0.phi.iter().map(ModuleMap::rank).collect();
        write!(f, "MorObject(dims {:?}, ranks {:?} over {})", self.dims(), ranks, self.0.algebra.name())
    }
}

impl MorObject {
    /// Validates the chain: every branch lives over `algebra` and every
    /// `phi[k]` is an intertwiner `branches[k+1] → branches[k]`.
    pub fn new(algebra: &Arc<Algebra>, branches: Vec<Module>, phi: Vec<ModuleMap>) -> Result<MorObject> {
        let mats = phi.into_iter().map(|f| f.matrix).collect();
        MorObject::from_matrices(algebra, branches, mats)
    }

    pub fn from_matrices(algebra: &Arc<Algebra>, branches: Vec<Module>, phi: Vec<Matrix>) -> Result<MorObject> {
        if branches.is_empty() {
            return Err(Error::input("a chain needs at least one branch"));
        }
        if phi.len() + 1 != branches.len() {
            return Err(Error::input(format!(
                "{} branches need {} connecting maps, got {}",
                branches.len(),
                branches.len() - 1,
                phi.len()
            )));
        }
        for (i, b) in branches.iter().enumerate() {
            if !b.algebra().same_as(algebra) {
                return Err(Error::input(format!("branch {} lives over a different algebra", i + 1)));
            }
        }
        let mut maps = Vec::with_capacity(phi.len());
        for (k, m) in phi.into_iter().enumerate() {
            let f = ModuleMap::new(&branches[k + 1], &branches[k], m)
                .map_err(|e| Error::input(format!("phi {}: {e}", k + 1)))?;
            maps.push(f);
        }
        Ok(MorObject::new_unchecked(algebra, branches, maps))
    }

    pub(crate) fn new_unchecked(algebra: &Arc<Algebra>, branches: Vec<Module>, phi: Vec<ModuleMap>) -> MorObject {
        MorObject(Arc::new(MorData { algebra: algebra.clone(), branches, phi, flat: OnceLock::new() }))
    }

    pub fn zero(algebra: &Arc<Algebra>, n: usize) -> MorObject {
        let z = Module::zero(algebra);
        let phi = (1..n).map(|_| ModuleMap::zero(&z, &z)).collect();
        MorObject::new_unchecked(algebra, vec![z; n], phi)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.0.algebra
    }

    pub fn n(&self) -> usize {
        self.0.branches.len()
    }

    /// `X_i`, 1-based.
    pub fn branch(&self, i: usize) -> &Module {
        &self.0.branches[i - 1]
    }

    /// `φ_i: X_{i+1} → X_i`, 1-based.
    pub fn phi(&self, i: usize) -> &ModuleMap {
        &self.0.phi[i - 1]
    }

    pub fn branches(&self) -> &[Module] {
        &self.0.branches
    }

    pub fn phis(&self) -> &[ModuleMap] {
        &self.0.phi
    }

    pub fn dims(&self) -> Vec<usize> {
        self.0.branches.iter().map(Module::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims().iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// `φ_i ⋯ φ_{j-1}: X_j → X_i` for `1 ≤ i ≤ j ≤ n`.
    pub fn composite(&self, i: usize, j: usize) -> ModuleMap {
        assert!(1 <= i && i <= j && j <= self.n(), "composite({i}, {j}) out of range");
        let mut f = ModuleMap::identity(self.branch(j));
        for k in (i..j).rev() {
            f = self.phi(k).compose(&f);
        }
        f
    }

    pub fn is_monic_chain(&self) -> bool {
        self.0.phi.iter().all(ModuleMap::is_injective)
    }

    pub fn is_epic_chain(&self) -> bool {
        self.0.phi.iter().all(ModuleMap::is_surjective)
    }

    /// The corresponding `T_n(A)`-module, cached on the object.
    pub fn flat(&self) -> Result<Module> {
        if let Some(m) = self.0.flat.get() {
            return Ok(m.clone());
        }
        let m = build_flat(self)?;
        Ok(self.0.flat.get_or_init(|| m).clone())
    }

    pub fn ptr_eq(&self, other: &MorObject) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

/// A morphism of chains: `components[i]` is `f_{i+1}: X_{i+1} → Y_{i+1}`.
#[derive(Clone, Debug)]
pub struct MorMap {
    pub source: MorObject,
    pub target: MorObject,
    pub components: Vec<ModuleMap>,
}

impl MorMap {
    /// Checks every component and every square `θ_i f_{i+1} = f_i φ_i`.
    pub fn new(source: &MorObject, target: &MorObject, mats: Vec<Matrix>) -> Result<MorMap> {
        if source.n() != target.n() || mats.len() != source.n() {
            return Err(Error::input("chain map has the wrong number of components"));
        }
        let mut components = Vec::new();
        for (k, m) in mats.into_iter().enumerate() {
            let f = ModuleMap::new(&source.0.branches[k], &target.0.branches[k], m)
                .map_err(|e| Error::input(format!("component {}: {e}", k + 1)))?;
            components.push(f);
        }
        let f = MorMap { source: source.clone(), target: target.clone(), components };
        if let Some(i) = f.failing_square() {
            return Err(Error::input(format!("square {i} does not commute")));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: &MorObject, target: &MorObject, mats: Vec<Matrix>) -> MorMap {
        let components = mats
            .into_iter()
            .enumerate()
            .map(|(k, m)| ModuleMap::new_unchecked(&source.0.branches[k], &target.0.branches[k], m))
            .collect();
        MorMap { source: source.clone(), target: target.clone(), components }
    }

    /// First `i` (1-based) whose square fails to commute.
    pub fn failing_square(&self) -> Option<usize> {
        (1..self.source.n()).find(|&i| {
            &self.target.phi(i).matrix * &self.components[i].matrix
                != &self.components[i - 1].matrix * &self.source.phi(i).matrix
        })
    }

    pub fn identity(x: &MorObject) -> MorMap {
        MorMap::new_unchecked(x, x, x.branches().iter().map(|b| Matrix::identity(b.dim())).collect())
    }

    pub fn zero(x: &MorObject, y: &MorObject) -> MorMap {
        let mats = x.branches().iter().zip(y.branches()).map(|(a, b)| Matrix::zeros(b.dim(), a.dim())).collect();
        MorMap::new_unchecked(x, y, mats)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &MorMap) -> MorMap {
        let mats = self.components.iter().zip(&other.components).map(|(f, g)| &f.matrix * &g.matrix).collect();
        MorMap::new_unchecked(&other.source, &self.target, mats)
    }

    pub fn is_injective(&self) -> bool {
        self.components.iter().all(ModuleMap::is_injective)
    }

    pub fn is_surjective(&self) -> bool {
        self.components.iter().all(ModuleMap::is_surjective)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.components.iter().all(ModuleMap::is_isomorphism)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(ModuleMap::is_zero)
    }

    /// The block-diagonal map between the flat modules.
    pub fn flat(&self) -> Result<ModuleMap> {
        let parts: Vec<&Matrix> = self.components.iter().map(|f| &f.matrix).collect();
        Ok(ModuleMap::new_unchecked(&self.source.flat()?, &self.target.flat()?, Matrix::block_diag(&parts)))
    }

    /// Reads a flat map between `to_flat` modules back into components.
    pub fn from_flat(source: &MorObject, target: &MorObject, f: &Matrix) -> MorMap {
        let (mut r0, mut c0) = (0, 0);
        let mut mats = Vec::new();
        for (a, b) in source.branches().iter().zip(target.branches()) {
            mats.push(f.block(r0, c0, b.dim(), a.dim()));
            r0 += b.dim();
            c0 += a.dim();
        }
        MorMap::new_unchecked(source, target, mats)
    }
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::input(format!("index {i} outside 1..={n}")));
    }
    Ok(())
}

fn planted(m: &Module, n: usize, present: impl Fn(usize) -> bool) -> MorObject {
    let a = m.algebra();
    let z = Module::zero(a);
    let branches: Vec<Module> = (1..=n).map(|j| if present(j) { m.clone() } else { z.clone() }).collect();
    let phi = (1..n)
        .map(|j| {
            let (s, t) = (&branches[j], &branches[j - 1]);
            if present(j) && present(j + 1) {
                ModuleMap::identity(m)
            } else {
                ModuleMap::zero(s, t)
            }
        })
        .collect();
    MorObject::new_unchecked(a, branches, phi)
}

/// `m_i(M)`: `M` in branches `1..=i`, identities between them.
pub fn m_i(m: &Module, i: usize, n: usize) -> Result<MorObject> {
    check_index(i, n)?;
    Ok(planted(m, n, |j| j <= i))
}

/// `p_i(M)`: `M` in branches `n-i+1..=n`, identities between them.
pub fn p_i(m: &Module, i: usize, n: usize) -> Result<MorObject> {
    check_index(i, n)?;
    Ok(planted(m, n, |j| j + i > n))
}

fn planted_map(f: &ModuleMap, x: &MorObject, y: &MorObject) -> MorMap {
    let mats = x
        .branches()
        .iter()
        .zip(y.branches())
        .map(|(a, b)| if a.is_zero() || b.is_zero() { Matrix::zeros(b.dim(), a.dim()) } else { f.matrix.clone() })
        .collect();
    MorMap::new_unchecked(x, y, mats)
}

/// `m_i(f)` between `m_i(source)` and `m_i(target)`.
pub fn m_i_map(f: &ModuleMap, i: usize, n: usize) -> Result<MorMap> {
    Ok(planted_map(f, &m_i(&f.source, i, n)?, &m_i(&f.target, i, n)?))
}

pub fn p_i_map(f: &ModuleMap, i: usize, n: usize) -> Result<MorMap> {
    Ok(planted_map(f, &p_i(&f.source, i, n)?, &p_i(&f.target, i, n)?))
}

/// A direct sum of chains with its injections and projections.
#[derive(Clone, Debug)]
pub struct MorSum {
    pub object: MorObject,
    pub injections: Vec<MorMap>,
    pub projections: Vec<MorMap>,
}

pub fn mor_direct_sum(algebra: &Arc<Algebra>, xs: &[MorObject]) -> Result<MorSum> {
    let n = match xs.first() {
        Some(x) => x.n(),
        None => return Err(Error::input("empty direct sum of chains")),
    };
    if xs.iter().any(|x| x.n() != n) {
        return Err(Error::input("chains of different lengths"));
    }
    let mut sums = Vec::with_capacity(n);
    for j in 0..n {
        let parts: Vec<Module> = xs.iter().map(|x| x.0.branches[j].clone()).collect();
        sums.push(direct_sum(algebra, &parts)?);
    }
    let branches: Vec<Module> = sums.iter().map(|s| s.module.clone()).collect();
    let phi = (0..n - 1)
        .map(|k| {
            let parts: Vec<&Matrix> = xs.iter().map(|x| &x.0.phi[k].matrix).collect();
            ModuleMap::new_unchecked(&branches[k + 1], &branches[k], Matrix::block_diag(&parts))
        })
        .collect();
    let object = MorObject::new_unchecked(algebra, branches, phi);
    let injections = (0..xs.len())
        .map(|t| MorMap::new_unchecked(&xs[t], &object, sums.iter().map(|s| s.injections[t].matrix.clone()).collect()))
        .collect();
    let projections = (0..xs.len())
        .map(|t| MorMap::new_unchecked(&object, &xs[t], sums.iter().map(|s| s.projections[t].matrix.clone()).collect()))
        .collect();
    Ok(MorSum { object, injections, projections })
}

/// `m(T) = ⊕_i m_i(T)`.
pub fn m_of(t: &Module, n: usize) -> Result<MorObject> {
    let parts = (1..=n).map(|i| m_i(t, i, n)).collect::<Result<Vec<_>>>()?;
    Ok(mor_direct_sum(t.algebra(), &parts)?.object)
}

/// `p(T) = ⊕_i p_i(T)`.
pub fn p_of(t: &Module, n: usize) -> Result<MorObject> {
    let parts = (1..=n).map(|i| p_i(t, i, n)).collect::<Result<Vec<_>>>()?;
    Ok(mor_direct_sum(t.algebra(), &parts)?.object)
}

fn build_flat(x: &MorObject) -> Result<Module> {
    let a = x.algebra();
    let n = x.n();
    let t = triangular_algebra(a, n)?;
    let d = a.dim();
    let offs: Vec<usize> = x
        .dims()
        .iter()
        .scan(0, |s, &v| {
            let o = *s;
            *s += v;
            Some(o)
        })
        .collect();
    let total = x.total_dim();
    let mut action = Vec::with_capacity(t.dim());
    for i in 1..=n {
        for j in i..=n {
            let c = x.composite(i, j);
            for k in 0..d {
                let mut m = Matrix::zeros(total, total);
                if !c.matrix.is_zero() {
                    m.set_block(offs[i - 1], offs[j - 1], &(x.branch(i).action(k) * &c.matrix));
                }
                action.push(m);
            }
        }
    }
    debug_assert_eq!(action.len(), t.dim());
    Ok(Module::new_unchecked(&t, total, action))
}

/// The `T_n(A)`-module of a chain: `(a·x)_i = Σ_{j≥i} a_ij φ_i⋯φ_{j-1}(x_j)`.
pub fn to_flat(x: &MorObject) -> Result<Module> {
    x.flat()
}

fn right_inverse(m: &Matrix) -> Option<Matrix> {
    m.transpose().left_inverse().map(|l| l.transpose())
}

/// Recovers the chain of a `T_n(A)`-module together with the isomorphism
/// `to_flat(chain) → m` (columns: bases of `e_11 m, …, e_nn m`).
pub fn from_flat_with_iso(m: &Module) -> Result<(MorObject, ModuleMap)> {
    let t = m.algebra();
    let info =
        t.triangular_info().ok_or_else(|| Error::input(format!("{} is not a triangular matrix algebra", t.name())))?;
    let (a, n) = (info.base.clone(), info.n);
    let d = a.dim();
    let elem = |i: usize, j: usize| {
        let mut v = vec![Rational::default(); t.dim()];
        for (k, u) in a.unit().iter().enumerate() {
            v[info.index(i, j, k)] = u.clone();
        }
        v
    };
    let mut bases = Vec::with_capacity(n);
    let mut linvs = Vec::with_capacity(n);
    let mut branches = Vec::with_capacity(n);
    for i in 0..n {
        let b = m.act(&elem(i, i)).column_space();
        let linv = if b.cols() == 0 { Matrix::zeros(0, m.dim()) } else { b.left_inverse().expect("column basis") };
        let action: Vec<Matrix> = (0..d).map(|k| &(&linv * m.action(info.index(i, i, k))) * &b).collect();
        branches.push(if b.cols() == 0 { Module::zero(&a) } else { Module::new_unchecked(&a, b.cols(), action) });
        bases.push(b);
        linvs.push(linv);
    }
    let mut phi = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n - 1 {
        let mat = &(&linvs[i] * &m.act(&elem(i, i + 1))) * &bases[i + 1];
        phi.push(ModuleMap::new_unchecked(&branches[i + 1], &branches[i], mat));
    }
    let x = MorObject::new_unchecked(&a, branches, phi);
    let refs: Vec<&Matrix> = bases.iter().collect();
    let iso = ModuleMap::new_unchecked(&x.flat()?, m, Matrix::hstack(m.dim(), &refs));
    if !iso.is_isomorphism() || !iso.is_intertwiner() {
        return Err(Error::internal("flat module is not recovered by its corner decomposition"));
    }
    Ok((x, iso))
}

pub fn from_flat(m: &Module) -> Result<MorObject> {
    Ok(from_flat_with_iso(m)?.0)
}

/// Basis of `Hom(x, y)` in `Mor_n(A)`, solved branchwise.
pub fn mor_hom_basis(x: &MorObject, y: &MorObject) -> Result<Vec<MorMap>> {
    if x.n() != y.n() {
        return Err(Error::input("chains of different lengths"));
    }
    let n = x.n();
    let bases: Vec<Vec<Matrix>> =
        (0..n).map(|k| hom_matrices(&x.0.branches[k], &y.0.branches[k])).collect::<Result<_>>()?;
    let offs: Vec<usize> = bases
        .iter()
        .scan(0, |s, b| {
            let o = *s;
            *s += b.len();
            Some(o)
        })
        .collect();
    let nvars: usize = bases.iter().map(Vec::len).sum();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for k in 0..n - 1 {
        // θ_k f_{k+1} − f_k φ_k = 0
        let (theta, phi) = (&y.0.phi[k].matrix, &x.0.phi[k].matrix);
        let size = theta.rows() * phi.cols();
        let mut block = vec![vec![Rational::default(); nvars]; size];
        for (v, h) in bases[k + 1].iter().enumerate() {
            for (r, e) in (theta * h).flatten().into_iter().enumerate() {
                block[r][offs[k + 1] + v] += e;
            }
        }
        for (v, h) in bases[k].iter().enumerate() {
            for (r, e) in (h * phi).flatten().into_iter().enumerate() {
                block[r][offs[k] + v] -= e;
            }
        }
        rows.extend(block);
    }
    let sol = if rows.is_empty() {
        Matrix::identity(nvars).columns()
    } else {
        Matrix::from_rows(nvars, rows)?.kernel_basis()
    };
    Ok(sol
        .into_iter()
        .map(|c| {
            let mats = (0..n)
                .map(|k| {
                    let mut m = Matrix::zeros(y.0.branches[k].dim(), x.0.branches[k].dim());
                    for (v, h) in bases[k].iter().enumerate() {
                        m.add_scaled(&c[offs[k] + v], h);
                    }
                    m
                })
                .collect();
            MorMap::new_unchecked(x, y, mats)
        })
        .collect())
}

/// `dim Hom(x, y)` computed on the flat side.
pub fn mor_hom_dim(x: &MorObject, y: &MorObject) -> Result<usize> {
    hom_dim(&x.flat()?, &y.flat()?)
}

pub fn mor_ext_dims(x: &MorObject, y: &MorObject, max_j: usize, cap: usize) -> Result<Vec<usize>> {
    ext_dims(&x.flat()?, &y.flat()?, max_j, cap)
}

/// Isomorphism test on the flat side, with the certificate read back into
/// components.
pub fn mor_is_isomorphic(x: &MorObject, y: &MorObject, seed: u64) -> Result<Option<MorMap>> {
    if x.n() != y.n() || x.dims() != y.dims() {
        return Ok(None);
    }
    let d = is_isomorphic(&x.flat()?, &y.flat()?, seed)?;
    Ok(d.certificate.map(|c| MorMap::from_flat(x, y, &c.matrix)))
}

/// Indecomposable summands of a chain (via the flat module).
pub fn mor_decompose(x: &MorObject, seed: u64) -> Result<Vec<(MorObject, bool)>> {
    let dec = fitting_decompose(&x.flat()?, seed)?;
    dec.summands.iter().map(|s| Ok((from_flat(&s.module)?, s.certified))).collect()
}

/// The chain of `T_n(A)`-projectives `m_i(P)` and injectives `p_i(I)`.
pub fn classify_projinj(a: &Arc<Algebra>, n: usize) -> Result<(Vec<MorObject>, Vec<MorObject>)> {
    let mut proj = Vec::new();
    let mut inj = Vec::new();
    for i in 1..=n {
        for p in modrep::projectives(a) {
            proj.push(m_i(&p, i, n)?);
        }
        for q in modrep::injectives(a) {
            inj.push(p_i(&q, i, n)?);
        }
    }
    Ok((proj, inj))
}

/// Kernel of a chain map, computed branchwise.
pub fn mor_kernel(f: &MorMap) -> (MorObject, MorMap) {
    let ks: Vec<(Module, ModuleMap)> = f.components.iter().map(kernel).collect();
    let x = &f.source;
    let phi = (0..x.n() - 1)
        .map(|k| {
            let (ref s, ref si) = ks[k + 1];
            let (ref t, ref ti) = ks[k];
            let m = if s.is_zero() || t.is_zero() {
                Matrix::zeros(t.dim(), s.dim())
            } else {
                &(&ti.matrix.left_inverse().expect("inclusion") * &x.0.phi[k].matrix) * &si.matrix
            };
            ModuleMap::new_unchecked(s, t, m)
        })
        .collect();
    let k = MorObject::new_unchecked(x.algebra(), ks.iter().map(|p| p.0.clone()).collect(), phi);
    let incl = MorMap::new_unchecked(&k, x, ks.into_iter().map(|p| p.1.matrix).collect());
    (k, incl)
}

/// Cokernel of a chain map, computed branchwise.
pub fn mor_cokernel(f: &MorMap) -> (MorObject, MorMap) {
    let cs: Vec<(Module, ModuleMap)> = f.components.iter().map(cokernel).collect();
    let y = &f.target;
    let phi = (0..y.n() - 1)
        .map(|k| {
            let (ref s, ref sp) = cs[k + 1];
            let (ref t, ref tp) = cs[k];
            let m = if s.is_zero() || t.is_zero() {
                Matrix::zeros(t.dim(), s.dim())
            } else {
                &(&tp.matrix * &y.0.phi[k].matrix) * &right_inverse(&sp.matrix).expect("projection")
            };
            ModuleMap::new_unchecked(s, t, m)
        })
        .collect();
    let c = MorObject::new_unchecked(y.algebra(), cs.iter().map(|p| p.0.clone()).collect(), phi);
    let proj = MorMap::new_unchecked(y, &c, cs.into_iter().map(|p| p.1.matrix).collect());
    (c, proj)
}

/// `Coker(φ_1⋯φ_i)` with its canonical epimorphism from `X_1`, for
/// `i = 1..n-1`.
pub fn coker_chain(x: &MorObject) -> Vec<(Module, ModuleMap)> {
    (1..x.n()).map(|i| cokernel(&x.composite(1, i + 1))).collect()
}

/// `Ker(φ_i⋯φ_{n-1}) ⊆ X_n` with its inclusion, for `i = 1..n-1`.
pub fn ker_chain(x: &MorObject) -> Vec<(Module, ModuleMap)> {
    (1..x.n()).map(|i| kernel(&x.composite(i, x.n()))).collect()
}

/// `(Coker φ_1, Coker φ_1φ_2, …, Coker φ_1⋯φ_{n-1}, X_1)` with the
/// canonical epimorphisms.
pub fn sn_to_fn(x: &MorObject) -> Result<MorObject> {
    if !x.is_monic_chain() {
        return Err(Error::input("sn_to_fn needs injective connecting maps"));
    }
    let n = x.n();
    let chain = coker_chain(x);
    let mut branches: Vec<Module> = chain.iter().map(|c| c.0.clone()).collect();
    branches.push(x.branch(1).clone());
    let mut epis: Vec<Matrix> = chain.iter().map(|c| c.1.matrix.clone()).collect();
    epis.push(Matrix::identity(x.branch(1).dim()));
    let phi = (0..n - 1)
        .map(|k| {
            let (s, t) = (&branches[k + 1], &branches[k]);
            let m = if s.is_zero() || t.is_zero() {
                Matrix::zeros(t.dim(), s.dim())
            } else {
                &epis[k] * &right_inverse(&epis[k + 1]).expect("epimorphism")
            };
            ModuleMap::new_unchecked(s, t, m)
        })
        .collect();
    Ok(MorObject::new_unchecked(x.algebra(), branches, phi))
}

/// `(X_n, Ker φ_1⋯φ_{n-1}, …, Ker φ_{n-1})` with the canonical inclusions.
pub fn fn_to_sn(x: &MorObject) -> Result<MorObject> {
    if !x.is_epic_chain() {
        return Err(Error::input("fn_to_sn needs surjective connecting maps"));
    }
    let n = x.n();
    let xn = x.branch(n).clone();
    let mut branches = vec![xn.clone()];
    let mut incls = vec![Matrix::identity(xn.dim())];
    for (k, i) in ker_chain(x) {
        branches.push(k);
        incls.push(i.matrix);
    }
    let phi = (0..n - 1)
        .map(|k| {
            let (s, t) = (&branches[k + 1], &branches[k]);
            let m = if s.is_zero() || t.is_zero() {
                Matrix::zeros(t.dim(), s.dim())
            } else {
                &incls[k].left_inverse().expect("inclusion") * &incls[k + 1]
            };
            ModuleMap::new_unchecked(s, t, m)
        })
        .collect();
    Ok(MorObject::new_unchecked(x.algebra(), branches, phi))
}

/// Branchwise vector-space dual over the opposite algebra, with the chain
/// reversed: branch `i` of the result is `D X_{n+1-i}`.
pub fn mor_dual(x: &MorObject) -> MorObject {
    let n = x.n();
    let op = x.algebra().opposite();
    let branches: Vec<Module> = (0..n).map(|k| dual(&x.0.branches[n - 1 - k])).collect();
    let phi = (0..n - 1)
        .map(|k| ModuleMap::new_unchecked(&branches[k + 1], &branches[k], x.0.phi[n - 2 - k].matrix.transpose()))
        .collect();
    MorObject::new_unchecked(&op, branches, phi)
}

/// `D f: D(target) → D(source)` between the given duals.
pub fn mor_dual_map(f: &MorMap, dsource: &MorObject, dtarget: &MorObject) -> MorMap {
    let n = f.components.len();
    let mats = (0..n).map(|k| f.components[n - 1 - k].matrix.transpose()).collect();
    MorMap::new_unchecked(dtarget, dsource, mats)
}

/// A full subcategory of `A`-mod whose membership is decidable.
#[derive(Clone, Debug)]
pub enum SubcatSpec {
    All,
    /// `^⊥T`: `Ext^i(X, T) = 0` for all `i ≥ 1`.
    PerpLeft(Module),
    /// `T^⊥`: `Ext^i(T, X) = 0` for all `i ≥ 1`.
    PerpRight(Module),
    /// `add` of the listed modules.
    Add(Vec<Module>),
    Predicate(NamedPredicate),
    Intersection(Vec<SubcatSpec>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NamedPredicate {
    Projective,
    Injective,
    Zero,
}

#[derive(Clone, Debug)]
enum Compiled {
    All,
    PerpLeft { t: Module, inj_dim: DimBound },
    PerpRight { t: Module, proj_dim: DimBound },
    Add { indecs: Vec<Module> },
    Predicate(NamedPredicate),
    Intersection(Vec<Compiled>),
}

/// A [`SubcatSpec`] with the data its membership test needs precomputed.
#[derive(Clone, Debug)]
pub struct CompiledSpec {
    kind: Compiled,
    caps: Caps,
    seed: u64,
}

impl SubcatSpec {
    pub fn compile(&self, caps: Caps, seed: u64) -> Result<CompiledSpec> {
        Ok(CompiledSpec { kind: compile(self, caps, seed)?, caps, seed })
    }
}

fn compile(spec: &SubcatSpec, caps: Caps, seed: u64) -> Result<Compiled> {
    Ok(match spec {
        SubcatSpec::All => Compiled::All,
        SubcatSpec::PerpLeft(t) => Compiled::PerpLeft { t: t.clone(), inj_dim: inj_dim(t, caps.res)? },
        SubcatSpec::PerpRight(t) => Compiled::PerpRight { t: t.clone(), proj_dim: proj_dim(t, caps.res)? },
        SubcatSpec::Add(ms) => {
            let mut indecs: Vec<Module> = Vec::new();
            for m in ms {
                for s in fitting_decompose(m, seed)?.summands {
                    if !contains_iso(&indecs, &s.module, seed)? {
                        indecs.push(s.module);
                    }
                }
            }
            Compiled::Add { indecs }
        }
        SubcatSpec::Predicate(p) => Compiled::Predicate(*p),
        SubcatSpec::Intersection(v) => {
            Compiled::Intersection(v.iter().map(|s| compile(s, caps, seed)).collect::<Result<_>>()?)
        }
    })
}

fn contains_iso(list: &[Module], x: &Module, seed: u64) -> Result<bool> {
    for m in list {
        if m.dim() == x.dim() && is_isomorphic(m, x, seed)?.isomorphic {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `Ext^i(x, y) = 0` for `1 ≤ i ≤ r`.
pub fn ext_vanishes(x: &Module, y: &Module, r: usize, cap: usize) -> Result<bool> {
    if r == 0 || x.is_zero() || y.is_zero() {
        return Ok(true);
    }
    let dims = ext_dims(x, y, r, cap)?;
    Ok(dims[1..].iter().all(|&e| e == 0))
}

/// Smallest finite bound among the given ones; both infinite means the
/// vanishing of all higher Ext cannot be certified.
fn ext_bound(a: DimBound, b: DimBound, what: &str) -> Result<usize> {
    match (a.finite(), b.finite()) {
        (Some(p), Some(q)) => Ok(p.min(q)),
        (Some(p), None) | (None, Some(p)) => Ok(p),
        (None, None) => Err(Error::inconclusive(format!("{what}: no finite dimension bounds the Ext degrees"))),
    }
}

/// `x ∈ ^⊥t`, using the degree bound `min(inj.dim t, proj.dim x)`.
pub fn in_perp_left(x: &Module, t: &Module, t_inj_dim: DimBound, cap: usize) -> Result<bool> {
    if x.is_zero() || t.is_zero() {
        return Ok(true);
    }
    let pd = if t_inj_dim.is_finite() { DimBound::ExceedsCap } else { proj_dim(x, cap)? };
    let r = ext_bound(t_inj_dim, pd, "left perpendicular")?;
    ext_vanishes(x, t, r, cap)
}

/// `x ∈ t^⊥`, using the degree bound `min(proj.dim t, inj.dim x)`.
pub fn in_perp_right(x: &Module, t: &Module, t_proj_dim: DimBound, cap: usize) -> Result<bool> {
    if x.is_zero() || t.is_zero() {
        return Ok(true);
    }
    let id = if t_proj_dim.is_finite() { DimBound::ExceedsCap } else { inj_dim(x, cap)? };
    let r = ext_bound(t_proj_dim, id, "right perpendicular")?;
    ext_vanishes(t, x, r, cap)
}

impl CompiledSpec {
    pub fn contains(&self, x: &Module) -> Result<bool> {
        self.eval(&self.kind, x)
    }

    fn eval(&self, kind: &Compiled, x: &Module) -> Result<bool> {
        if x.is_zero() {
            return Ok(true);
        }
        match kind {
            Compiled::All => Ok(true),
            Compiled::PerpLeft { t, inj_dim } => in_perp_left(x, t, *inj_dim, self.caps.res),
            Compiled::PerpRight { t, proj_dim } => in_perp_right(x, t, *proj_dim, self.caps.res),
            Compiled::Add { indecs } => {
                for s in fitting_decompose(x, self.seed)?.summands {
                    if !contains_iso(indecs, &s.module, self.seed)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Compiled::Predicate(NamedPredicate::Projective) => is_projective(x),
            Compiled::Predicate(NamedPredicate::Injective) => is_injective(x),
            Compiled::Predicate(NamedPredicate::Zero) => Ok(false),
            Compiled::Intersection(v) => {
                for k in v {
                    if !self.eval(k, x)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

/// A membership decision; negative answers name the failing piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    pub witness: Option<String>,
}

impl Membership {
    fn yes() -> Self {
        Membership { member: true, witness: None }
    }

    fn no(w: String) -> Self {
        Membership { member: false, witness: Some(w) }
    }
}

/// `x ∈ S_n(𝒳)`: monic connecting maps, branches and cokernels in `𝒳`.
pub fn sn_membership(x: &MorObject, spec: &CompiledSpec) -> Result<Membership> {
    for i in 1..x.n() {
        if !x.phi(i).is_injective() {
            return Ok(Membership::no(format!("phi {i} is not injective")));
        }
    }
    for i in 1..=x.n() {
        if !spec.contains(x.branch(i))? {
            return Ok(Membership::no(format!("branch {i} is not in the subcategory")));
        }
    }
    for i in 1..x.n() {
        let (c, _) = cokernel(x.phi(i));
        if !spec.contains(&c)? {
            return Ok(Membership::no(format!("Coker phi {i} is not in the subcategory")));
        }
    }
    Ok(Membership::yes())
}

/// `x ∈ F_n(𝒳)`: epic connecting maps, branches and kernels in `𝒳`.
pub fn fn_membership(x: &MorObject, spec: &CompiledSpec) -> Result<Membership> {
    for i in 1..x.n() {
        if !x.phi(i).is_surjective() {
            return Ok(Membership::no(format!("phi {i} is not surjective")));
        }
    }
    for i in 1..=x.n() {
        if !spec.contains(x.branch(i))? {
            return Ok(Membership::no(format!("branch {i} is not in the subcategory")));
        }
    }
    for i in 1..x.n() {
        let (k, _) = kernel(x.phi(i));
        if !spec.contains(&k)? {
            return Ok(Membership::no(format!("Ker phi {i} is not in the subcategory")));
        }
    }
    Ok(Membership::yes())
}

/// `0 → Z → Y → X → 0` in `Mor_n(A)`, given by `f: Z → Y` and `g: Y → X`.
#[derive(Clone, Debug)]
pub struct MorSes {
    pub f: MorMap,
    pub g: MorMap,
}

impl MorSes {
    /// Checks exactness branch by branch; the error names the failing branch.
    pub fn check(&self) -> Result<()> {
        if !self.f.target.ptr_eq(&self.g.source) && self.f.target.dims() != self.g.source.dims() {
            return Err(Error::input("f and g are not composable"));
        }
        for (k, (f, g)) in self.f.components.iter().zip(&self.g.components).enumerate() {
            let ok = f.is_injective()
                && g.is_surjective()
                && (&g.matrix * &f.matrix).is_zero()
                && f.rank() + g.rank() == f.target.dim();
            if !ok {
                return Err(Error::input(format!("sequence is not exact at branch {}", k + 1)));
            }
        }
        Ok(())
    }

    /// `0 → Z → Z ⊕ X → X → 0`.
    pub fn split(z: &MorObject, x: &MorObject) -> Result<MorSes> {
        let s = mor_direct_sum(z.algebra(), &[z.clone(), x.clone()])?;
        Ok(MorSes { f: s.injections[0].clone(), g: s.projections[1].clone() })
    }

    /// Termwise direct sum of two sequences.
    pub fn sum(&self, other: &MorSes) -> Result<MorSes> {
        let a = self.f.source.algebra();
        let zs = mor_direct_sum(a, &[self.f.source.clone(), other.f.source.clone()])?;
        let ys = mor_direct_sum(a, &[self.f.target.clone(), other.f.target.clone()])?;
        let xs = mor_direct_sum(a, &[self.g.target.clone(), other.g.target.clone()])?;
        let bd = |p: &MorMap, q: &MorMap| -> Vec<Matrix> {
            p.components.iter().zip(&q.components).map(|(u, v)| Matrix::block_diag(&[&u.matrix, &v.matrix])).collect()
        };
        Ok(MorSes {
            f: MorMap::new_unchecked(&zs.object, &ys.object, bd(&self.f, &other.f)),
            g: MorMap::new_unchecked(&ys.object, &xs.object, bd(&self.g, &other.g)),
        })
    }
}

/// One six-term sequence `0 → Ker c_Z → Ker c_Y → Ker c_X → Coker c_Z →
/// Coker c_Y → Coker c_X → 0`.
#[derive(Clone, Debug, Serialize)]
pub struct SixTerm {
    /// `"composite"` for `φ_1⋯φ_i`, `"single"` for `φ_i`.
    pub kind: &'static str,
    pub index: usize,
    pub dims: [usize; 6],
    pub exact: bool,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SnakeReport {
    pub sequences: Vec<SixTerm>,
    pub all_exact: bool,
}

fn six_term(
    kind: &'static str,
    index: usize,
    c: [&Matrix; 3],
    f: (&Matrix, &Matrix),
    g: (&Matrix, &Matrix),
) -> SixTerm {
    // c = [c_Z, c_Y, c_X]; f = (f at source level, f at target level); g likewise
    let kers: Vec<Matrix> = c.iter().map(|m| m.kernel_matrix()).collect();
    let cokers: Vec<Matrix> = c.iter().map(|m| coker_projection(m)).collect();
    let linv = |m: &Matrix| if m.cols() == 0 { Matrix::zeros(0, m.rows()) } else { m.left_inverse().expect("basis") };
    let rinv = |m: &Matrix| if m.rows() == 0 { Matrix::zeros(m.cols(), 0) } else { right_inverse(m).expect("epi") };
    let a1 = &(&linv(&kers[1]) * f.0) * &kers[0];
    let a2 = &(&linv(&kers[2]) * g.0) * &kers[1];
    let delta = &(&(&(&cokers[0] * &linv(f.1)) * c[1]) * &rinv(g.0)) * &kers[2];
    let b1 = &(&cokers[1] * f.1) * &rinv(&cokers[0]);
    let b2 = &(&cokers[2] * g.1) * &rinv(&cokers[1]);
    let dims = [kers[0].cols(), kers[1].cols(), kers[2].cols(), cokers[0].rows(), cokers[1].rows(), cokers[2].rows()];
    let maps = [&a1, &a2, &delta, &b1, &b2];
    let mut failure = None;
    if a1.rank() != dims[0] {
        failure = Some("first map is not injective".to_string());
    }
    for k in 0..4 {
        if failure.is_some() {
            break;
        }
        let (p, q) = (maps[k], maps[k + 1]);
        let composite_zero = p.rows() == 0 || p.cols() == 0 || q.rows() == 0 || (q * p).is_zero();
        if !composite_zero || p.rank() + q.rank() != dims[k + 1] {
            failure = Some(format!("not exact at term {}", k + 2));
        }
    }
    if failure.is_none() && b2.rank() != dims[5] {
        failure = Some("last map is not surjective".to_string());
    }
    SixTerm { kind, index, dims, exact: failure.is_none(), failure }
}

/// Matrix of a projection onto a complement of the column space.
fn coker_projection(m: &Matrix) -> Matrix {
    let rows = m.rows();
    let mut basis = m.column_space().columns();
    let r = basis.len();
    let mut chosen = Vec::new();
    let mut rr = crate::exactla::RowReducer::new(rows);
    for v in &basis {
        rr.insert(v.clone());
    }
    for c in 0..rows {
        let e = crate::exactla::unit_vec(rows, c);
        if rr.insert(e.clone()) {
            chosen.push(e);
        }
    }
    basis.extend(chosen);
    let inv = Matrix::from_columns(rows, &basis).inverse().expect("completed basis");
    inv.block(r, 0, rows - r, rows)
}

/// Both families of six-term sequences induced by a short exact sequence.
pub fn snake_sequences(ses: &MorSes) -> Result<SnakeReport> {
    ses.check()?;
    let (z, y, x) = (&ses.f.source, &ses.f.target, &ses.g.target);
    let n = z.n();
    let mut sequences = Vec::new();
    for i in 1..n {
        let cs = [z.composite(1, i + 1), y.composite(1, i + 1), x.composite(1, i + 1)];
        sequences.push(six_term(
            "composite",
            i,
            [&cs[0].matrix, &cs[1].matrix, &cs[2].matrix],
            (&ses.f.components[i].matrix, &ses.f.components[0].matrix),
            (&ses.g.components[i].matrix, &ses.g.components[0].matrix),
        ));
    }
    for i in 1..n {
        sequences.push(six_term(
            "single",
            i,
            [&z.phi(i).matrix, &y.phi(i).matrix, &x.phi(i).matrix],
            (&ses.f.components[i].matrix, &ses.f.components[i - 1].matrix),
            (&ses.g.components[i].matrix, &ses.g.components[i - 1].matrix),
        ));
    }
    let all_exact = sequences.iter().all(|s| s.exact);
    Ok(SnakeReport { sequences, all_exact })
}

/// Both sides of one Hom or Ext identity at one index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityRow {
    pub identity: &'static str,
    pub i: usize,
    pub j: usize,
    pub lhs: usize,
    pub rhs: usize,
}

impl IdentityRow {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Hom dimensions on both sides of the six adjunction isomorphisms for
/// `m_i` and `p_i`.
pub fn adjunction_dims(x: &MorObject, m: &Module) -> Result<Vec<IdentityRow>> {
    let n = x.n();
    let fx = x.flat()?;
    let row = |identity, i, lhs, rhs| IdentityRow { identity, i, j: 0, lhs, rhs };
    let mut out = Vec::new();
    for i in 1..=n {
        let lhs = hom_dim(&m_i(m, i, n)?.flat()?, &fx)?;
        out.push(row("hom(m_i M, X) = hom(M, X_i)", i, lhs, hom_dim(m, x.branch(i))?));
    }
    let chain = coker_chain(x);
    for i in 1..n {
        let lhs = hom_dim(&fx, &m_i(m, i, n)?.flat()?)?;
        out.push(row("hom(X, m_i M) = hom(Coker phi_1..phi_i, M)", i, lhs, hom_dim(&chain[i - 1].0, m)?));
    }
    let lhs = hom_dim(&fx, &m_i(m, n, n)?.flat()?)?;
    out.push(row("hom(X, m_n M) = hom(X_1, M)", n, lhs, hom_dim(x.branch(1), m)?));
    for i in 1..=n {
        let lhs = hom_dim(&fx, &p_i(m, i, n)?.flat()?)?;
        out.push(row("hom(X, p_i M) = hom(X_{n-i+1}, M)", i, lhs, hom_dim(x.branch(n - i + 1), m)?));
    }
    let kchain = ker_chain(x);
    for i in 1..n {
        let lhs = hom_dim(&p_i(m, i, n)?.flat()?, &fx)?;
        out.push(row("hom(p_i M, X) = hom(M, Ker phi_{n-i}..phi_{n-1})", i, lhs, hom_dim(m, &kchain[n - i - 1].0)?));
    }
    let lhs = hom_dim(&p_i(m, n, n)?.flat()?, &fx)?;
    out.push(row("hom(p_n M, X) = hom(M, X_n)", n, lhs, hom_dim(m, x.branch(n))?));
    Ok(out)
}

/// Ext dimensions on both sides of the `m_i`/`p_i` Ext identities for
/// `0 ≤ j ≤ max_j`. The cokernel identity is included only when `x` has
/// monic connecting maps and the kernel identity only when they are epic.
pub fn ext_identity_dims(x: &MorObject, m: &Module, max_j: usize, cap: usize) -> Result<Vec<IdentityRow>> {
    let n = x.n();
    let fx = x.flat()?;
    let mut out = Vec::new();
    let mut push = |identity: &'static str, i: usize, lhs: Vec<usize>, rhs: Vec<usize>| {
        for j in 0..=max_j {
            out.push(IdentityRow { identity, i, j, lhs: lhs[j], rhs: rhs[j] });
        }
    };
    for i in 1..=n {
        let lhs = ext_dims(&m_i(m, i, n)?.flat()?, &fx, max_j, cap)?;
        push("ext(m_i M, X) = ext(M, X_i)", i, lhs, ext_dims(m, x.branch(i), max_j, cap)?);
    }
    let lhs = ext_dims(&fx, &m_i(m, n, n)?.flat()?, max_j, cap)?;
    push("ext(X, m_n M) = ext(X_1, M)", n, lhs, ext_dims(x.branch(1), m, max_j, cap)?);
    for i in 1..=n {
        let lhs = ext_dims(&fx, &p_i(m, i, n)?.flat()?, max_j, cap)?;
        push("ext(X, p_i M) = ext(X_{n-i+1}, M)", i, lhs, ext_dims(x.branch(n - i + 1), m, max_j, cap)?);
    }
    let lhs = ext_dims(&p_i(m, n, n)?.flat()?, &fx, max_j, cap)?;
    push("ext(p_n M, X) = ext(M, X_n)", n, lhs, ext_dims(m, x.branch(n), max_j, cap)?);
    if x.is_monic_chain() {
        let chain = coker_chain(x);
        for i in 1..n {
            let lhs = ext_dims(&fx, &m_i(m, i, n)?.flat()?, max_j, cap)?;
            push("ext(X, m_i M) = ext(Coker phi_1..phi_i, M)", i, lhs, ext_dims(&chain[i - 1].0, m, max_j, cap)?);
        }
    }
    if x.is_epic_chain() {
        let kchain = ker_chain(x);
        for i in 1..n {
            let lhs = ext_dims(&p_i(m, i, n)?.flat()?, &fx, max_j, cap)?;
            let rhs = ext_dims(m, &kchain[n - i - 1].0, max_j, cap)?;
            push("ext(p_i M, X) = ext(M, Ker phi_{n-i}..phi_{n-1})", i, lhs, rhs);
        }
    }
    Ok(out)
}

/// A random element of `Hom(x, y)` with small integer coefficients.
pub(crate) fn random_hom<R: rand::Rng>(x: &Module, y: &Module, rng: &mut R) -> Result<ModuleMap> {
    let mut m = Matrix::zeros(y.dim(), x.dim());
    for h in hom_basis(x, y)? {
        let c: i64 = rng.gen_range(-2..=2);
        m.add_scaled(&Rational::from_integer(c.into()), &h.matrix);
    }
    Ok(ModuleMap::new_unchecked(x, y, m))
}

/// A seeded random chain whose branches are direct sums drawn from `pool`.
pub fn random_mor_object(
    a: &Arc<Algebra>,
    n: usize,
    pool: &[Module],
    max_parts: usize,
    seed: u64,
) -> Result<MorObject> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut branches = Vec::with_capacity(n);
    for _ in 0..n {
        let k = rng.gen_range(0..=max_parts);
        let parts: Vec<Module> = (0..k).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
        branches.push(if parts.is_empty() { Module::zero(a) } else { direct_sum(a, &parts)?.module });
    }
    let mut phi = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n - 1 {
        phi.push(random_hom(&branches[k + 1], &branches[k], &mut rng)?);
    }
    Ok(MorObject::new_unchecked(a, branches, phi))
}

/// Every component is an identity matrix.
pub fn is_identity_map(f: &MorMap) -> bool {
    f.components.iter().all(|c| c.matrix.is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ka2, lambda};
    use crate::modrep::{injective_cogenerator, projective, regular_module, simple};

    fn sigma() -> MorObject {
        let a = ka2();
        let (p1, s2) = (projective(&a, 0), simple(&a, 1));
        let inc = hom_basis(&s2, &p1).unwrap().remove(0);
        MorObject::new(&a, vec![p1, s2], vec![inc]).unwrap()
    }

    #[test]
    fn planted_functors() {
        let a = ka2();
        let m = projective(&a, 0);
        let x = m_i(&m, 2, 3).unwrap();
        assert_eq!(x.dims(), vec![2, 2, 0]);
        assert!(x.phi(1).matrix.is_identity());
        assert!(x.phi(2).is_zero());
        let (mn, pn) = (m_i(&m, 3, 3).unwrap(), p_i(&m, 3, 3).unwrap());
        assert_eq!(mn.dims(), pn.dims());
        assert!(mor_is_isomorphic(&mn, &pn, 0).unwrap().is_some());
        assert!(m_i(&Module::zero(&a), 1, 2).unwrap().is_zero());
        assert_eq!(p_i(&m, 1, 3).unwrap().dims(), vec![0, 0, 2]);
        assert!(m_i(&m, 0, 2).is_err());
    }

    #[test]
    fn m_of_and_p_of() {
        let a = ka2();
        let d = injective_cogenerator(&a);
        let x = m_of(&d, 2).unwrap();
        assert_eq!(x.dims(), vec![6, 3]);
        assert_eq!(x.total_dim(), 3 * 3);
        let p = p_of(&regular_module(&a), 3).unwrap();
        assert_eq!(p.branch(3).dim(), 9);
    }

    #[test]
    fn flat_round_trip() {
        let x = sigma();
        let f = x.flat().unwrap();
        assert_eq!(f.dim(), 3);
        f.check().unwrap();
        let (y, iso) = from_flat_with_iso(&f).unwrap();
        assert!(iso.is_intertwiner() && iso.is_isomorphism());
        assert!(mor_is_isomorphic(&x, &y, 0).unwrap().is_some());
        let a = ka2();
        let p = m_i(&projective(&a, 0), 1, 2).unwrap().flat().unwrap();
        assert_eq!(p.dim(), 2);
        assert!(is_projective(&p).unwrap());
        assert!(fitting_decompose(&p, 0).unwrap().is_indecomposable());
        assert!(from_flat(&regular_module(&a)).is_err());
    }

    #[test]
    fn projective_injective_counts() {
        let a = ka2();
        let (p, i) = classify_projinj(&a, 2).unwrap();
        assert_eq!((p.len(), i.len()), (4, 4));
        let all = SubcatSpec::All.compile(Caps::default(), 0).unwrap();
        for x in &p {
            assert!(is_projective(&x.flat().unwrap()).unwrap());
            assert!(sn_membership(x, &all).unwrap().member);
        }
        for x in &i {
            assert!(is_injective(&x.flat().unwrap()).unwrap());
            assert!(fn_membership(x, &all).unwrap().member);
        }
        let l = lambda(2);
        for n in [2, 3] {
            let (p, i) = classify_projinj(&l, n).unwrap();
            assert_eq!((p.len(), i.len()), (n, n));
        }
    }

    #[test]
    fn mono_membership() {
        let a = ka2();
        let all = SubcatSpec::All.compile(Caps::default(), 0).unwrap();
        assert!(sn_membership(&sigma(), &all).unwrap().member);
        let zero_map =
            MorObject::from_matrices(&a, vec![projective(&a, 0), simple(&a, 1)], vec![Matrix::zeros(2, 1)]).unwrap();
        let verdict = sn_membership(&zero_map, &all).unwrap();
        assert!(!verdict.member);
        assert!(verdict.witness.unwrap().contains("phi 1"));
        let proj = SubcatSpec::Add(modrep::projectives(&a)).compile(Caps::default(), 0).unwrap();
        assert!(sn_membership(&m_i(&projective(&a, 0), 2, 2).unwrap(), &proj).unwrap().member);
        assert!(!sn_membership(&sigma(), &proj).unwrap().member);
        for i in 1..=3 {
            assert!(sn_membership(&m_i(&simple(&a, 0), i, 3).unwrap(), &all).unwrap().member);
        }
    }

    #[test]
    fn cokernel_chain_and_equivalence() {
        let a = ka2();
        let x = sigma();
        let c = coker_chain(&x);
        assert!(is_isomorphic(&c[0].0, &simple(&a, 0), 0).unwrap().isomorphic);
        let m = projective(&a, 0);
        assert!(is_isomorphic(&coker_chain(&m_i(&m, 1, 2).unwrap())[0].0, &m, 0).unwrap().isomorphic);
        let f = sn_to_fn(&x).unwrap();
        assert_eq!(f.dims(), vec![1, 2]);
        assert!(f.is_epic_chain());
        let back = fn_to_sn(&f).unwrap();
        assert!(mor_is_isomorphic(&x, &back, 0).unwrap().is_some());
        let y = sn_to_fn(&m_i(&m, 3, 3).unwrap()).unwrap();
        assert_eq!(y.dims(), vec![0, 0, 2]);
        assert!(sn_to_fn(
            &MorObject::from_matrices(&a, vec![Module::zero(&a), m.clone()], vec![Matrix::zeros(0, 2)]).unwrap()
        )
        .is_err());
    }

    #[test]
    fn hom_bases_agree() {
        let a = ka2();
        let x = sigma();
        let y = m_of(&injective_cogenerator(&a), 2).unwrap();
        for (u, v) in [(&x, &y), (&y, &x), (&x, &x)] {
            let direct = mor_hom_basis(u, v).unwrap();
            assert_eq!(direct.len(), mor_hom_dim(u, v).unwrap());
            assert!(direct.iter().all(|f| f.failing_square().is_none()));
        }
    }

    #[test]
    fn duality() {
        let a = ka2();
        let x = sigma();
        let d = mor_dual(&x);
        let all_op = SubcatSpec::All.compile(Caps::default(), 0).unwrap();
        assert!(fn_membership(&d, &all_op).unwrap().member);
        let dd = mor_dual(&d);
        assert!(dd.algebra().same_as(&a));
        assert!(mor_is_isomorphic(&x, &dd, 0).unwrap().is_some());
        let m = projective(&a, 0);
        for i in 1..=2 {
            let lhs = mor_dual(&m_i(&m, i, 2).unwrap());
            let rhs = p_i(&dual(&m), i, 2).unwrap();
            assert!(mor_is_isomorphic(&lhs, &rhs, 0).unwrap().is_some());
        }
    }

    #[test]
    fn adjunction_example() {
        let a = ka2();
        let rows = adjunction_dims(&sigma(), &simple(&a, 0)).unwrap();
        assert!(rows.iter().all(IdentityRow::holds), "{rows:?}");
        let r = rows.iter().find(|r| r.identity.starts_with("hom(X, m_n M)")).unwrap();
        assert_eq!((r.lhs, r.rhs), (1, 1));
        let m = projective(&a, 0);
        let x = m_i(&m, 1, 2).unwrap();
        let r = &adjunction_dims(&x, &m).unwrap()[0];
        assert_eq!((r.lhs, r.rhs), (hom_dim(&m, &m).unwrap(), hom_dim(&m, &m).unwrap()));
        let ext = ext_identity_dims(&sigma(), &simple(&a, 1), 2, 32).unwrap();
        assert!(ext.iter().all(IdentityRow::holds), "{ext:?}");
    }

    #[test]
    fn snake_on_split_and_sums() {
        let a = ka2();
        let x = sigma();
        let z = m_i(&simple(&a, 0), 1, 2).unwrap();
        let ses = MorSes::split(&z, &x).unwrap();
        assert!(snake_sequences(&ses).unwrap().all_exact);
        let both = ses.sum(&MorSes::split(&x, &z).unwrap()).unwrap();
        let r = snake_sequences(&both).unwrap();
        assert!(r.all_exact);
        assert_eq!(r.sequences.len(), 2);
        let bad = MorSes { f: MorMap::zero(&z, &x), g: MorMap::identity(&x) };
        assert!(snake_sequences(&bad).is_err());
    }

    #[test]
    fn kernel_and_cokernel_of_chain_maps() {
        let x = sigma();
        let a = ka2();
        let t = m_i(&simple(&a, 0), 1, 2).unwrap();
        let f = mor_hom_basis(&x, &t).unwrap().remove(0);
        let (k, incl) = mor_kernel(&f);
        assert!(incl.failing_square().is_none() && incl.is_injective());
        assert_eq!(k.dims(), vec![1, 1]);
        let (c, proj) = mor_cokernel(&f);
        assert!(c.is_zero() && proj.failing_square().is_none());
        let ses = MorSes { f: incl, g: f };
        assert!(snake_sequences(&ses).unwrap().all_exact);
    }
}
