//! Finite-dimensional left modules, module maps and homological algebra.
//!
//! A [`Module`] stores one action matrix per basis element of its algebra.
//! Whenever basis idempotents of the algebra act diagonally (vertex
//! idempotents of path algebras, `e_ii ⊗ e_v` in `T_n(A)`), submodules and
//! quotients are given bases that keep them diagonal; `hom_basis` uses this
//! to prune most of the unknowns before solving.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algcore::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{int, is_zero_vec, unit_vec, zero_vec, Matrix, Rational, RowReducer};

/// Default bound on the length of projective resolutions.
pub const DEFAULT_RES_CAP: usize = 32;

/// Number of seeded random combinations tried by splitting and isomorphism
/// searches.
pub const RANDOM_TRIES: usize = 16;

pub struct ModuleData {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<Matrix>,
    diag: OnceLock<Vec<(usize, Vec<bool>)>>,
    resolution: Mutex<Option<Arc<Resolution>>>,
}

/// A finite-dimensional left module; cheap to clone.
#[derive(Clone)]
pub struct Module(Arc<ModuleData>);

impl std::fmt::Debug for Module {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Module(dim {} over {})", self.dim(), self.algebra().name())
    }
}

impl Module {
    /// Builds a module and checks every module axiom exactly.
    pub fn new(algebra: &Arc<Algebra>, action: Vec<Matrix>) -> Result<Module> {
        if action.len() != algebra.dim() {
            return Err(Error::input(format!("module needs {} action matrices, got {}", algebra.dim(), action.len())));
        }
        let dim = action.first().map_or(0, Matrix::rows);
        for (i, m) in action.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::input(format!(
                    "action of {} is {}x{}, expected {dim}x{dim}",
                    algebra.labels()[i],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let x = Module::new_unchecked(algebra, dim, action);
        x.check()?;
        Ok(x)
    }

    pub(crate) fn new_unchecked(algebra: &Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Module {
        Module(Arc::new(ModuleData {
            algebra: algebra.clone(),
            dim,
            action,
            diag: OnceLock::new(),
            resolution: Mutex::new(None),
        }))
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Module {
        Module::new_unchecked(algebra, 0, vec![Matrix::zeros(0, 0); algebra.dim()])
    }

    /// Checks that the action is unital and respects the structure constants.
    pub fn check(&self) -> Result<()> {
        let a = self.algebra();
        if !self.act(a.unit()).is_identity() {
            return Err(Error::input("the unit does not act as the identity"));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.action(i) * self.action(j);
                let rhs = self.act(&a.structure_constant(i, j));
                if lhs != rhs {
                    return Err(Error::input(format!(
                        "action does not respect the product {} * {}",
                        a.labels()[i],
                        a.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// A representation of a bound quiver: one space per vertex and one
    /// matrix (target dim × source dim) per arrow. Missing entries are zero.
    pub fn from_representation(
        algebra: &Arc<Algebra>,
        spaces: &BTreeMap<String, usize>,
        maps: &BTreeMap<String, Matrix>,
    ) -> Result<Module> {
        let q =
            algebra.quiver().ok_or_else(|| Error::input(format!("{} has no quiver presentation", algebra.name())))?;
        for v in spaces.keys() {
            if q.vertex_index(v).is_none() {
                return Err(Error::input(format!("unknown vertex {v:?}")));
            }
        }
        for a in maps.keys() {
            if q.arrow_index(a).is_none() {
                return Err(Error::input(format!("unknown arrow {a:?}")));
            }
        }
        let nv = q.presentation.vertices.len();
        let dims: Vec<usize> = q.presentation.vertices.iter().map(|v| spaces.get(v).copied().unwrap_or(0)).collect();
        let mut offsets = vec![0; nv + 1];
        for v in 0..nv {
            offsets[v + 1] = offsets[v] + dims[v];
        }
        let total = offsets[nv];
        let mut arrow_mats = Vec::new();
        for (ai, (name, _, _)) in q.presentation.arrows.iter().enumerate() {
            let (s, t) = q.arrow_ends[ai];
            let m = match maps.get(name) {
                Some(m) => {
                    if m.rows() != dims[t] || m.cols() != dims[s] {
                        return Err(Error::input(format!(
                            "arrow {name}: matrix is {}x{}, expected {}x{}",
                            m.rows(),
                            m.cols(),
                            dims[t],
                            dims[s]
                        )));
                    }
                    m.clone()
                }
                None => Matrix::zeros(dims[t], dims[s]),
            };
            arrow_mats.push(m);
        }
        let mut action = Vec::with_capacity(algebra.dim());
        for p in &q.basis_paths {
            let mut full = Matrix::zeros(total, total);
            if p.is_trivial() {
                full.set_block(offsets[p.source], offsets[p.source], &Matrix::identity(dims[p.source]));
            } else {
                let mut m = arrow_mats[p.arrows[0]].clone();
                for &a in &p.arrows[1..] {
                    m = &arrow_mats[a] * &m;
                }
                full.set_block(offsets[p.target], offsets[p.source], &m);
            }
            action.push(full);
        }
        Module::new(algebra, action)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.0.algebra
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn is_zero(&self) -> bool {
        self.0.dim == 0
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.0.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.0.action
    }

    pub fn ptr_eq(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// The action of an arbitrary algebra element.
    pub fn act(&self, x: &[Rational]) -> Matrix {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m.add_scaled(c, self.action(i));
            }
        }
        m
    }

    /// Multiplicity of each indecomposable projective's top, counted as
    /// `dim e_i x` for the representative idempotents.
    pub fn dimension_vector(&self) -> Vec<usize> {
        projective_table(self.algebra()).iter().map(|p| self.act(&p.idempotent).rank()).collect()
    }

    /// Basis idempotents acting as 0/1 diagonal matrices, with their diagonals.
    fn diag_idempotents(&self) -> &[(usize, Vec<bool>)] {
        self.0.diag.get_or_init(|| {
            let mut out = Vec::new();
            for &k in self.algebra().idempotent_basis() {
                let m = self.action(k);
                if m.is_diagonal() && (0..self.dim()).all(|i| m[(i, i)].is_zero() || m[(i, i)].is_one()) {
                    out.push((k, (0..self.dim()).map(|i| m[(i, i)].is_one()).collect()));
                }
            }
            out
        })
    }

    /// Coordinates grouped by their joint eigenvalues under the diagonal
    /// idempotents, in order of first appearance.
    pub(crate) fn classes(&self) -> Vec<Vec<usize>> {
        let diag = self.diag_idempotents();
        let mut groups: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
        for c in 0..self.dim() {
            let sig: Vec<bool> = diag.iter().map(|(_, d)| d[c]).collect();
            match groups.iter_mut().find(|(s, _)| *s == sig) {
                Some((_, g)) => g.push(c),
                None => groups.push((sig, vec![c])),
            }
        }
        groups.into_iter().map(|(_, g)| g).collect()
    }
}

fn ensure_same_algebra(x: &Module, y: &Module) -> Result<()> {
    if x.algebra().same_as(y.algebra()) {
        Ok(())
    } else {
        Err(Error::input(format!(
            "modules over different algebras ({} and {})",
            x.algebra().name(),
            y.algebra().name()
        )))
    }
}

/// A module homomorphism; `matrix` is `target.dim × source.dim`.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: Module,
    pub target: Module,
    pub matrix: Matrix,
}

impl ModuleMap {
    /// Builds a map and checks that it intertwines the actions.
    pub fn new(source: &Module, target: &Module, matrix: Matrix) -> Result<ModuleMap> {
        ensure_same_algebra(source, target)?;
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::input(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let f = ModuleMap::new_unchecked(source, target, matrix);
        if !f.is_intertwiner() {
            return Err(Error::input("matrix does not commute with the module actions"));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: &Module, target: &Module, matrix: Matrix) -> ModuleMap {
        debug_assert_eq!((matrix.rows(), matrix.cols()), (target.dim(), source.dim()));
        ModuleMap { source: source.clone(), target: target.clone(), matrix }
    }

    pub fn zero(source: &Module, target: &Module) -> ModuleMap {
        ModuleMap::new_unchecked(source, target, Matrix::zeros(target.dim(), source.dim()))
    }

    pub fn identity(x: &Module) -> ModuleMap {
        ModuleMap::new_unchecked(x, x, Matrix::identity(x.dim()))
    }

    /// Checks `f ρ_source(g) = ρ_target(g) f` on a generating set.
    pub fn is_intertwiner(&self) -> bool {
        self.source
            .algebra()
            .generators()
            .iter()
            .all(|&g| &self.matrix * self.source.action(g) == self.target.action(g) * &self.matrix)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap::new_unchecked(&other.source, &self.target, &self.matrix * &other.matrix)
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap::new_unchecked(&self.source, &self.target, &self.matrix + &other.matrix)
    }

    pub fn scale(&self, s: &Rational) -> ModuleMap {
        ModuleMap::new_unchecked(&self.source, &self.target, self.matrix.scale(s))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Basis matrices of `Hom_A(x, y)`.
pub fn hom_matrices(x: &Module, y: &Module) -> Result<Vec<Matrix>> {
    ensure_same_algebra(x, y)?;
    let (dx, dy) = (x.dim(), y.dim());
    if dx == 0 || dy == 0 {
        return Ok(Vec::new());
    }
    let xd = x.diag_idempotents();
    let yd = y.diag_idempotents();
    let common: Vec<(&Vec<bool>, &Vec<bool>)> =
        xd.iter().filter_map(|(k, dxk)| yd.iter().find(|(l, _)| l == k).map(|(_, dyk)| (dxk, dyk))).collect();
    let common_idx: Vec<usize> = xd.iter().filter(|(k, _)| yd.iter().any(|(l, _)| l == k)).map(|(k, _)| *k).collect();
    // unknown (r, c) survives if every common diagonal idempotent agrees on r and c
    let mut var = vec![usize::MAX; dy * dx];
    let mut unknowns = Vec::new();
    for r in 0..dy {
        for c in 0..dx {
            if common.iter().all(|(a, b)| a[c] == b[r]) {
                var[r * dx + c] = unknowns.len();
                unknowns.push((r, c));
            }
        }
    }
    let u = unknowns.len();
    if u == 0 {
        return Ok(Vec::new());
    }
    let mut rr = RowReducer::new(u);
    for &g in x.algebra().generators() {
        if common_idx.contains(&g) {
            continue;
        }
        let gx = x.action(g);
        let gy = y.action(g);
        for r in 0..dy {
            for c in 0..dx {
                // (f gx - gy f)[r][c]
                let mut row = zero_vec(u);
                let mut any = false;
                for k in 0..dx {
                    let v = var[r * dx + k];
                    if v != usize::MAX && !gx[(k, c)].is_zero() {
                        row[v] += &gx[(k, c)];
                        any = true;
                    }
                }
                for k in 0..dy {
                    let v = var[k * dx + c];
                    if v != usize::MAX && !gy[(r, k)].is_zero() {
                        row[v] -= &gy[(r, k)];
                        any = true;
                    }
                }
                if any {
                    rr.insert(row);
                    if rr.rank() == u {
                        return Ok(Vec::new());
                    }
                }
            }
        }
    }
    Ok(rr
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let mut m = Matrix::zeros(dy, dx);
            for (i, val) in v.into_iter().enumerate() {
                if !val.is_zero() {
                    let (r, c) = unknowns[i];
                    m[(r, c)] = val;
                }
            }
            m
        })
        .collect())
}

/// A basis of `Hom_A(x, y)` as module maps.
pub fn hom_basis(x: &Module, y: &Module) -> Result<Vec<ModuleMap>> {
    Ok(hom_matrices(x, y)?.into_iter().map(|m| ModuleMap::new_unchecked(x, y, m)).collect())
}

pub fn hom_dim(x: &Module, y: &Module) -> Result<usize> {
    Ok(hom_matrices(x, y)?.len())
}

/// The submodule spanned by `vectors`, which must already be closed under
/// the action. The basis is adapted to the diagonal idempotents of `x`.
pub fn submodule(x: &Module, vectors: &[Vec<Rational>]) -> (Module, ModuleMap) {
    let n = x.dim();
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for class in x.classes() {
        let mut rr = RowReducer::new(n);
        for v in vectors {
            let mut w = zero_vec(n);
            for &c in &class {
                w[c] = v[c].clone();
            }
            rr.insert(w);
        }
        basis.extend(rr.basis());
    }
    let s = Matrix::from_columns(n, &basis);
    let d = basis.len();
    let sub = if d == 0 {
        Module::zero(x.algebra())
    } else {
        let linv = s.left_inverse().expect("adapted basis is independent");
        let action = x.actions().iter().map(|m| &(&linv * m) * &s).collect();
        Module::new_unchecked(x.algebra(), d, action)
    };
    let incl = ModuleMap::new_unchecked(&sub, x, s);
    (sub, incl)
}

/// The submodule generated by `vectors`.
pub fn generated_submodule(x: &Module, vectors: &[Vec<Rational>]) -> (Module, ModuleMap) {
    let mut rr = RowReducer::new(x.dim());
    let mut queue: Vec<Vec<Rational>> = Vec::new();
    for v in vectors {
        if rr.insert(v.clone()) {
            queue.push(v.clone());
        }
    }
    let gens = x.algebra().generators().to_vec();
    let mut span = queue.clone();
    while let Some(v) = queue.pop() {
        for &g in &gens {
            let w = x.action(g).mul_vec(&v);
            if rr.insert(w.clone()) {
                span.push(w.clone());
                queue.push(w);
            }
        }
    }
    submodule(x, &span)
}

/// `x / U` for a submodule `U` spanned by `vectors`, with the quotient map.
/// The quotient basis is the images of standard basis vectors.
pub fn quotient(x: &Module, vectors: &[Vec<Rational>]) -> (Module, ModuleMap) {
    let n = x.dim();
    let mut rr = RowReducer::new(n);
    for v in vectors {
        rr.insert(v.clone());
    }
    let sub_basis = rr.basis();
    let mut chosen = Vec::new();
    for class in x.classes() {
        for c in class {
            if rr.insert(unit_vec(n, c)) {
                chosen.push(c);
            }
        }
    }
    chosen.sort_unstable();
    let d = chosen.len();
    if d == 0 {
        let q = Module::zero(x.algebra());
        return (q.clone(), ModuleMap::zero(x, &q));
    }
    let mut cols = sub_basis.clone();
    cols.extend(chosen.iter().map(|&c| unit_vec(n, c)));
    let full = Matrix::from_columns(n, &cols);
    let inv = full.inverse().expect("complement completes a basis");
    let proj = inv.block(sub_basis.len(), 0, d, n);
    let action = x.actions().iter().map(|m| &proj * &m.select_columns(&chosen)).collect();
    let q = Module::new_unchecked(x.algebra(), d, action);
    let map = ModuleMap::new_unchecked(x, &q, proj);
    (q, map)
}

/// Kernel, cokernel and the canonical maps of `f`.
#[derive(Clone, Debug)]
pub struct KernelCokernel {
    pub ker: Module,
    pub incl: ModuleMap,
    pub coker: Module,
    pub proj: ModuleMap,
}

pub fn kernel(f: &ModuleMap) -> (Module, ModuleMap) {
    submodule(&f.source, &f.matrix.kernel_basis())
}

pub fn image(f: &ModuleMap) -> (Module, ModuleMap) {
    let cols = f.matrix.column_space().columns();
    submodule(&f.target, &cols)
}

pub fn cokernel(f: &ModuleMap) -> (Module, ModuleMap) {
    quotient(&f.target, &f.matrix.columns())
}

pub fn kernel_cokernel(f: &ModuleMap) -> KernelCokernel {
    let (ker, incl) = kernel(f);
    let (coker, proj) = cokernel(f);
    KernelCokernel { ker, incl, coker, proj }
}

/// A direct sum with its canonical injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Module,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

pub fn direct_sum(algebra: &Arc<Algebra>, xs: &[Module]) -> Result<DirectSum> {
    for x in xs {
        if !x.algebra().same_as(algebra) {
            return Err(Error::input("direct_sum: summand over a different algebra"));
        }
    }
    let total: usize = xs.iter().map(Module::dim).sum();
    let action = (0..algebra.dim())
        .map(|k| {
            let parts: Vec<&Matrix> = xs.iter().map(|x| x.action(k)).collect();
            Matrix::block_diag(&parts)
        })
        .collect();
    let module = Module::new_unchecked(algebra, total, action);
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut off = 0;
    for x in xs {
        let mut inj = Matrix::zeros(total, x.dim());
        let mut pr = Matrix::zeros(x.dim(), total);
        for i in 0..x.dim() {
            inj[(off + i, i)] = Rational::one();
            pr[(i, off + i)] = Rational::one();
        }
        injections.push(ModuleMap::new_unchecked(x, &module, inj));
        projections.push(ModuleMap::new_unchecked(&module, x, pr));
        off += x.dim();
    }
    Ok(DirectSum { module, injections, projections })
}

/// Block-diagonal sum of maps `f_k: x_k → y_k` between the given sums.
pub fn direct_sum_map(source: &Module, target: &Module, fs: &[&ModuleMap]) -> ModuleMap {
    let parts: Vec<&Matrix> = fs.iter().map(|f| &f.matrix).collect();
    ModuleMap::new_unchecked(source, target, Matrix::block_diag(&parts))
}

/// The vector-space dual, a left module over the opposite algebra.
pub fn dual(x: &Module) -> Module {
    let op = x.algebra().opposite();
    let action = x.actions().iter().map(Matrix::transpose).collect();
    Module::new_unchecked(&op, x.dim(), action)
}

/// `D f: D(target) → D(source)`.
pub fn dual_map(f: &ModuleMap, dsource: &Module, dtarget: &Module) -> ModuleMap {
    ModuleMap::new_unchecked(dtarget, dsource, f.matrix.transpose())
}

pub fn regular_module(a: &Arc<Algebra>) -> Module {
    let action = (0..a.dim()).map(|i| a.left(i).clone()).collect();
    Module::new_unchecked(a, a.dim(), action)
}

/// `(A_A, D(A_A))`-style pair: the left regular module and the right regular
/// module viewed as a left module over the opposite algebra.
pub fn regular_modules(a: &Arc<Algebra>) -> (Module, Module) {
    (regular_module(a), regular_module(&a.opposite()))
}

/// `D(A_A)`, the injective cogenerator of `A`-mod.
pub fn injective_cogenerator(a: &Arc<Algebra>) -> Module {
    dual(&regular_module(&a.opposite()))
}

/// An indecomposable projective `A e` together with the data used to read
/// maps out of it.
#[derive(Clone, Debug)]
pub struct ProjectiveData {
    pub idempotent: Vec<Rational>,
    /// Columns: a basis of `A e` in algebra coordinates.
    pub basis: Matrix,
    pub action: Vec<Matrix>,
    /// Coordinates of `e` in `basis`.
    pub generator: Vec<Rational>,
}

/// One representative per isomorphism class of indecomposable projectives.
pub fn projective_table(a: &Arc<Algebra>) -> &[ProjectiveData] {
    a.projective_cache().get_or_init(|| {
        let (ids, _) = a.primitive_idempotents();
        let mut reps: Vec<Vec<Rational>> = Vec::new();
        for e in ids {
            if !reps.iter().any(|f| a.corner_top_dim(f, e) > 0) {
                reps.push(e.clone());
            }
        }
        reps.into_iter()
            .map(|e| {
                let basis = a.right_mult(&e).column_space();
                let linv = basis.left_inverse().expect("column space is independent");
                let action = (0..a.dim()).map(|k| &(&linv * a.left(k)) * &basis).collect();
                let generator = linv.mul_vec(&e);
                ProjectiveData { idempotent: e, basis, action, generator }
            })
            .collect()
    })
}

pub fn num_projectives(a: &Arc<Algebra>) -> usize {
    projective_table(a).len()
}

/// The `i`-th indecomposable projective (vertex order for quiver algebras).
pub fn projective(a: &Arc<Algebra>, i: usize) -> Module {
    let p = &projective_table(a)[i];
    Module::new_unchecked(a, p.basis.cols(), p.action.clone())
}

pub fn projectives(a: &Arc<Algebra>) -> Vec<Module> {
    (0..num_projectives(a)).map(|i| projective(a, i)).collect()
}

/// The simple top of the `i`-th indecomposable projective.
pub fn simple(a: &Arc<Algebra>, i: usize) -> Module {
    top(&projective(a, i)).0
}

/// The `i`-th indecomposable injective, with socle `simple(a, i)`.
pub fn injective(a: &Arc<Algebra>, i: usize) -> Module {
    dual(&projective(&a.opposite(), i))
}

pub fn injectives(a: &Arc<Algebra>) -> Vec<Module> {
    (0..num_projectives(a)).map(|i| injective(a, i)).collect()
}

/// A basis of `rad(A) · x`.
pub fn radical_basis(x: &Module) -> Vec<Vec<Rational>> {
    let mut rr = RowReducer::new(x.dim());
    for r in x.algebra().radical() {
        let m = x.act(r);
        for c in 0..x.dim() {
            rr.insert(m.column(c));
        }
    }
    rr.basis()
}

/// `x / rad x` with the quotient map.
pub fn top(x: &Module) -> (Module, ModuleMap) {
    quotient(x, &radical_basis(x))
}

/// A minimal projective cover: `map` is onto with kernel inside the radical;
/// `summands[k]` is the table index of the `k`-th summand of the source.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub map: ModuleMap,
    pub summands: Vec<usize>,
}

pub fn projective_cover(x: &Module) -> Result<ProjectiveCover> {
    let a = x.algebra();
    let table = projective_table(a);
    let n = x.dim();
    let mut w = RowReducer::new(n);
    for v in radical_basis(x) {
        w.insert(v);
    }
    let mut chosen: Vec<(usize, Vec<Rational>)> = Vec::new();
    'outer: for (i, p) in table.iter().enumerate() {
        let e = x.act(&p.idempotent);
        for c in 0..n {
            if w.rank() == n {
                break 'outer;
            }
            let v = e.column(c);
            if is_zero_vec(&v) || w.contains(&v) {
                continue;
            }
            for k in 0..a.dim() {
                w.insert(x.action(k).mul_vec(&v));
            }
            chosen.push((i, v));
        }
    }
    if w.rank() != n {
        return Err(Error::internal("projective cover: tops of projectives do not span the top"));
    }
    let parts: Vec<Module> = chosen.iter().map(|(i, _)| projective(a, *i)).collect();
    let sum = direct_sum(a, &parts)?.module;
    let mut cols = Vec::with_capacity(sum.dim());
    for (i, v) in &chosen {
        let basis = &table[*i].basis;
        let images: Vec<Vec<Rational>> = (0..a.dim()).map(|k| x.action(k).mul_vec(v)).collect();
        for j in 0..basis.cols() {
            let mut col = zero_vec(n);
            for (k, img) in images.iter().enumerate() {
                let c = &basis[(k, j)];
                if !c.is_zero() {
                    crate::exactla::axpy(&mut col, c, img);
                }
            }
            cols.push(col);
        }
    }
    let matrix = Matrix::from_columns(n, &cols);
    let map = ModuleMap::new_unchecked(&sum, x, matrix);
    // minimality certificate: ker ⊆ rad P
    let mut rad = RowReducer::new(sum.dim());
    for v in radical_basis(&sum) {
        rad.insert(v);
    }
    if !map.is_surjective() || !map.matrix.kernel_basis().iter().all(|k| rad.contains(k)) {
        return Err(Error::internal("projective cover failed its minimality certificate"));
    }
    Ok(ProjectiveCover { map, summands: chosen.into_iter().map(|(i, _)| i).collect() })
}

/// A minimal injective envelope, computed as the dual of the projective
/// cover of the dual.
#[derive(Clone, Debug)]
pub struct InjectiveEnvelope {
    pub map: ModuleMap,
    pub summands: Vec<usize>,
}

pub fn injective_envelope(x: &Module) -> Result<InjectiveEnvelope> {
    let cover = projective_cover(&dual(x))?;
    let target = dual(&cover.map.source);
    let map = ModuleMap::new_unchecked(x, &target, cover.map.matrix.transpose());
    Ok(InjectiveEnvelope { map, summands: cover.summands })
}

pub fn is_projective(x: &Module) -> Result<bool> {
    Ok(projective_cover(x)?.map.source.dim() == x.dim())
}

pub fn is_injective(x: &Module) -> Result<bool> {
    is_projective(&dual(x))
}

/// Resolutions stop once a syzygy is larger than this; over wild algebras
/// syzygy dimensions grow exponentially long before the length cap.
pub const MAX_SYZYGY_DIM: usize = 256;

/// A term `P_j` of a minimal projective resolution.
#[derive(Clone, Debug)]
pub struct ResolutionTerm {
    pub module: Module,
    pub summands: Vec<usize>,
    pub offsets: Vec<usize>,
}

/// A minimal projective resolution `… → P_1 → P_0 → x`, possibly truncated.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub terms: Vec<ResolutionTerm>,
    /// `differentials[j - 1]` is the matrix of `P_j → P_{j-1}`.
    pub differentials: Vec<Matrix>,
    pub augmentation: Matrix,
    /// Kernel of the last computed map, with its inclusion into the last term.
    last_kernel: (Module, ModuleMap),
    /// True when the last kernel is zero.
    pub complete: bool,
}

impl Resolution {
    /// Projective dimension if the resolution has terminated.
    pub fn length(&self) -> Option<usize> {
        self.complete.then(|| self.terms.len().saturating_sub(1))
    }
}

fn term_of(cover: &ProjectiveCover) -> ResolutionTerm {
    let a = cover.map.source.algebra();
    let mut offsets = Vec::new();
    let mut off = 0;
    for &i in &cover.summands {
        offsets.push(off);
        off += projective_table(a)[i].basis.cols();
    }
    ResolutionTerm { module: cover.map.source.clone(), summands: cover.summands.clone(), offsets }
}

/// Minimal projective resolution with at least `terms` terms (or complete).
pub fn resolution(x: &Module, terms: usize) -> Result<Arc<Resolution>> {
    let mut slot = x.0.resolution.lock().expect("resolution cache poisoned");
    let mut res = match slot.as_ref() {
        Some(r) if r.complete || r.terms.len() >= terms => return Ok(r.clone()),
        Some(r) => (**r).clone(),
        None => {
            let cover = projective_cover(x)?;
            let ker = kernel(&cover.map);
            let complete = ker.0.is_zero();
            Resolution {
                terms: vec![term_of(&cover)],
                differentials: Vec::new(),
                augmentation: cover.map.matrix.clone(),
                last_kernel: ker,
                complete,
            }
        }
    };
    while !res.complete && res.terms.len() < terms {
        if res.last_kernel.0.dim() > MAX_SYZYGY_DIM {
            // left incomplete, so callers report it as exceeding the cap
            break;
        }
        let (k, incl) = res.last_kernel.clone();
        let cover = projective_cover(&k)?;
        let d = &incl.matrix * &cover.map.matrix;
        let ker = kernel(&cover.map);
        res.complete = ker.0.is_zero();
        res.terms.push(term_of(&cover));
        res.differentials.push(d);
        res.last_kernel = ker;
    }
    let res = Arc::new(res);
    *slot = Some(res.clone());
    Ok(res)
}

/// Whether a dimension was found within the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum DimBound {
    Finite(usize),
    ExceedsCap,
}

impl DimBound {
    pub fn finite(self) -> Option<usize> {
        match self {
            DimBound::Finite(d) => Some(d),
            DimBound::ExceedsCap => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, DimBound::Finite(_))
    }
}

impl std::fmt::Display for DimBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DimBound::Finite(d) => write!(f, "{d}"),
            DimBound::ExceedsCap => write!(f, "exceeds cap"),
        }
    }
}

pub fn proj_dim(x: &Module, cap: usize) -> Result<DimBound> {
    if x.is_zero() {
        return Ok(DimBound::Finite(0));
    }
    let res = resolution(x, cap + 1)?;
    Ok(match res.length() {
        Some(l) if l <= cap => DimBound::Finite(l),
        _ => DimBound::ExceedsCap,
    })
}

pub fn inj_dim(x: &Module, cap: usize) -> Result<DimBound> {
    proj_dim(&dual(x), cap)
}

/// Column-space bases of `e_i y` for each projective representative.
fn corner_bases(y: &Module) -> Vec<Matrix> {
    projective_table(y.algebra()).iter().map(|p| y.act(&p.idempotent).column_space()).collect()
}

/// Matrix of `Hom(P_{j-1}, y) → Hom(P_j, y)` in the identification
/// `Hom(P_i, y) = e_i y`.
fn delta(res: &Resolution, j: usize, y: &Module, corners: &[Matrix]) -> Matrix {
    let a = y.algebra();
    let table = projective_table(a);
    let src = &res.terms[j - 1];
    let tgt = &res.terms[j];
    let d = &res.differentials[j - 1];
    let col_sizes: Vec<usize> = src.summands.iter().map(|&i| corners[i].cols()).collect();
    let rows = tgt.summands.len() * y.dim();
    let cols: usize = col_sizes.iter().sum();
    let mut out = Matrix::zeros(rows, cols);
    for (k, &ik) in tgt.summands.iter().enumerate() {
        // generator of the k-th summand of P_j in P_j coordinates
        let mut g = zero_vec(tgt.module.dim());
        for (t, c) in table[ik].generator.iter().enumerate() {
            g[tgt.offsets[k] + t] = c.clone();
        }
        let img = d.mul_vec(&g);
        let mut c0 = 0;
        for (l, &il) in src.summands.iter().enumerate() {
            let pl = &table[il];
            let block = &img[src.offsets[l]..src.offsets[l] + pl.basis.cols()];
            if !is_zero_vec(block) {
                let elem = pl.basis.mul_vec(block);
                let m = &y.act(&elem) * &corners[il];
                out.set_block(k * y.dim(), c0, &m);
            }
            c0 += col_sizes[l];
        }
    }
    out
}

/// `dim Ext^j(x, y)` for `j = 0..=max_j`, resolving `x` to length at most
/// `cap`.
pub fn ext_dims(x: &Module, y: &Module, max_j: usize, cap: usize) -> Result<Vec<usize>> {
    ensure_same_algebra(x, y)?;
    if x.is_zero() || y.is_zero() {
        return Ok(vec![0; max_j + 1]);
    }
    let res = resolution(x, (max_j + 2).min(cap + 1))?;
    if !res.complete && res.terms.len() < max_j + 2 {
        return Err(Error::inconclusive(format!(
            "Ext^{max_j} needs a resolution of length {} but it stopped at {} (cap {cap}, syzygy limit {MAX_SYZYGY_DIM})",
            max_j + 1,
            res.terms.len() - 1
        )));
    }
    let corners = corner_bases(y);
    let h: Vec<usize> = res.terms.iter().map(|t| t.summands.iter().map(|&i| corners[i].cols()).sum()).collect();
    let nterms = res.terms.len();
    let mut ranks = vec![0usize; max_j + 2];
    for (j, r) in ranks.iter_mut().enumerate().skip(1) {
        if j < nterms {
            *r = delta(&res, j, y, &corners).rank();
        }
    }
    Ok((0..=max_j).map(|j| if j < nterms { h[j] - ranks[j + 1] - ranks[j] } else { 0 }).collect())
}

pub fn ext_dim(x: &Module, y: &Module, j: usize) -> Result<usize> {
    ext_dim_capped(x, y, j, DEFAULT_RES_CAP)
}

pub fn ext_dim_capped(x: &Module, y: &Module, j: usize, cap: usize) -> Result<usize> {
    Ok(ext_dims(x, y, j, cap)?[j])
}

/// The algebra spanned by the given endomorphism matrices under composition:
/// `b_i · b_j = maps[i] ∘ maps[j]`. The span must contain the identity and be
/// closed under composition.
pub(crate) fn composition_algebra(name: &str, maps: &[Matrix]) -> Result<Arc<Algebra>> {
    let r = maps.len();
    let d = maps.first().map_or(0, Matrix::rows);
    let flat: Vec<Vec<Rational>> = maps.iter().map(Matrix::flatten).collect();
    let fm = Matrix::from_columns(d * d, &flat);
    // r positions where the basis is already independent
    let positions = fm.transpose().pivot_columns();
    if positions.len() != r {
        return Err(Error::internal("endomorphism basis is dependent"));
    }
    let square = fm.select_rows(&positions);
    let inv = square.inverse().ok_or_else(|| Error::internal("coordinate chart is singular"))?;
    let coords = |entries: Vec<Rational>| -> Vec<Rational> { inv.mul_vec(&entries) };
    let entry = |f: &Matrix, g: &Matrix, pos: usize| -> Rational {
        let (p, q) = (pos / d, pos % d);
        let mut s = Rational::zero();
        for k in 0..d {
            let (x, y) = (&f[(p, k)], &g[(k, q)]);
            if !x.is_zero() && !y.is_zero() {
                s += x * y;
            }
        }
        s
    };
    let mut left = Vec::with_capacity(r);
    for i in 0..r {
        let cols: Vec<Vec<Rational>> =
            (0..r).map(|j| coords(positions.iter().map(|&pos| entry(&maps[i], &maps[j], pos)).collect())).collect();
        left.push(Matrix::from_columns(r, &cols));
    }
    let id = Matrix::identity(d).flatten();
    let unit = coords(positions.iter().map(|&p| id[p].clone()).collect());
    if fm.mul_vec(&unit) != id {
        return Err(Error::internal("identity is not in the endomorphism span"));
    }
    let labels = (0..r).map(|i| format!("f{i}")).collect();
    Ok(Algebra::new_unchecked(name.to_string(), labels, left, unit))
}

/// Whether `End(x)` is local with residue field the rationals, i.e. `x` is
/// certified indecomposable.
pub fn has_local_endomorphisms(x: &Module) -> Result<bool> {
    if x.is_zero() {
        return Ok(false);
    }
    let basis = hom_matrices(x, x)?;
    if basis.len() == 1 {
        return Ok(true);
    }
    let e = composition_algebra("End", &basis)?;
    Ok(e.dim() - e.radical().len() == 1)
}

/// One indecomposable summand found by [`fitting_decompose`].
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Module,
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
    /// `End` was verified local; otherwise no split was found but
    /// indecomposability is only Monte Carlo.
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// `(index of a representative summand, multiplicity)` per isomorphism class.
    pub classes: Vec<(usize, usize)>,
}

impl Decomposition {
    pub fn certified(&self) -> bool {
        self.summands.iter().all(|s| s.certified)
    }

    pub fn is_indecomposable(&self) -> bool {
        self.summands.len() == 1
    }
}

fn fitting_split(phi: &Matrix) -> Option<(Vec<Vec<Rational>>, Vec<Vec<Rational>>)> {
    let d = phi.rows();
    let psi = phi.pow(d as u32);
    let ker = psi.kernel_basis();
    if ker.is_empty() || ker.len() == d {
        return None;
    }
    Some((ker, psi.column_space().columns()))
}

fn random_combination(basis: &[Matrix], rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = Matrix::zeros(basis[0].rows(), basis[0].cols());
    for b in basis {
        let c: i64 = rng.gen_range(-4..=4);
        if c != 0 {
            m.add_scaled(&int(c), b);
        }
    }
    m
}

/// Finds a nontrivial direct-sum splitting of `x`, if the schedule turns one up.
fn split_module(x: &Module, rng: &mut ChaCha8Rng) -> Result<Option<(Vec<Vec<Rational>>, Vec<Vec<Rational>>)>> {
    let end = hom_matrices(x, x)?;
    if end.len() <= 1 {
        return Ok(None);
    }
    let d = x.dim();
    let id = Matrix::identity(d);
    let try_one = |phi: &Matrix| -> Option<(Vec<Vec<Rational>>, Vec<Vec<Rational>>)> {
        if let Some(s) = fitting_split(phi) {
            return Some(s);
        }
        for lambda in crate::exactla::rational_roots(&phi.charpoly()) {
            let shifted = phi - &id.scale(&lambda);
            if let Some(s) = fitting_split(&shifted) {
                return Some(s);
            }
        }
        None
    };
    for b in &end {
        if let Some(s) = try_one(b) {
            return Ok(Some(s));
        }
    }
    for i in 0..end.len() {
        for j in 0..end.len() {
            if let Some(s) = try_one(&(&end[i] * &end[j])) {
                return Ok(Some(s));
            }
        }
    }
    for i in 0..end.len() {
        for j in i + 1..end.len() {
            if let Some(s) = try_one(&(&end[i] - &end[j])) {
                return Ok(Some(s));
            }
        }
    }
    for _ in 0..RANDOM_TRIES {
        if let Some(s) = try_one(&random_combination(&end, rng)) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Krull–Schmidt decomposition by repeated Fitting splitting.
pub fn fitting_decompose(x: &Module, seed: u64) -> Result<Decomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = x.dim();
    // pieces carry their inclusion into x
    let mut stack: Vec<(Module, Matrix)> = vec![(x.clone(), Matrix::identity(n))];
    let mut done: Vec<(Module, Matrix, bool)> = Vec::new();
    while let Some((piece, incl)) = stack.pop() {
        if piece.is_zero() {
            continue;
        }
        match split_module(&piece, &mut rng)? {
            Some((k, i)) => {
                let (km, kin) = submodule(&piece, &k);
                let (im, iin) = submodule(&piece, &i);
                stack.push((im, &incl * &iin.matrix));
                stack.push((km, &incl * &kin.matrix));
            }
            None => {
                let certified = has_local_endomorphisms(&piece)?;
                done.push((piece, incl, certified));
            }
        }
    }
    let summands = if done.is_empty() {
        Vec::new()
    } else {
        let parts: Vec<&Matrix> = done.iter().map(|(_, m, _)| m).collect();
        let all = Matrix::hstack(n, &parts);
        let inv = all.inverse().ok_or_else(|| Error::internal("summands do not span the module"))?;
        let mut off = 0;
        done.into_iter()
            .map(|(m, inc, certified)| {
                let proj = inv.block(off, 0, m.dim(), n);
                off += m.dim();
                Summand {
                    inclusion: ModuleMap::new_unchecked(&m, x, inc),
                    projection: ModuleMap::new_unchecked(x, &m, proj),
                    module: m,
                    certified,
                }
            })
            .collect()
    };
    let mut classes: Vec<(usize, usize)> = Vec::new();
    'next: for (i, s) in summands.iter().enumerate() {
        for (rep, mult) in classes.iter_mut() {
            if is_isomorphic(&summands[*rep].module, &s.module, seed)?.isomorphic {
                *mult += 1;
                continue 'next;
            }
        }
        classes.push((i, 1));
    }
    Ok(Decomposition { summands, classes })
}

/// Outcome of an isomorphism test.
#[derive(Clone, Debug)]
pub struct IsoDecision {
    pub isomorphic: bool,
    /// A verified invertible intertwiner when `isomorphic`.
    pub certificate: Option<ModuleMap>,
    /// Why the answer is negative, when it is.
    pub reason: String,
}

pub fn is_isomorphic(x: &Module, y: &Module, seed: u64) -> Result<IsoDecision> {
    ensure_same_algebra(x, y)?;
    let no = |reason: &str| IsoDecision { isomorphic: false, certificate: None, reason: reason.to_string() };
    if x.dim() != y.dim() {
        return Ok(no("dimensions differ"));
    }
    if x.is_zero() {
        return Ok(IsoDecision { isomorphic: true, certificate: Some(ModuleMap::identity(x)), reason: String::new() });
    }
    if x.dimension_vector() != y.dimension_vector() {
        return Ok(no("dimension vectors differ"));
    }
    let homs = hom_matrices(x, y)?;
    if homs.is_empty() {
        return Ok(no("Hom(x, y) = 0"));
    }
    let d = x.dim();
    let found = |m: &Matrix| m.rank() == d;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut candidates: Vec<Matrix> = homs.clone();
    let mut sum = Matrix::zeros(d, d);
    for h in &homs {
        sum = &sum + h;
    }
    candidates.push(sum);
    for m in candidates.into_iter().chain((0..RANDOM_TRIES).map(|_| random_combination(&homs, &mut rng))) {
        if found(&m) {
            let cert = ModuleMap::new_unchecked(x, y, m);
            debug_assert!(cert.is_intertwiner());
            return Ok(IsoDecision { isomorphic: true, certificate: Some(cert), reason: String::new() });
        }
    }
    if homs.len() != hom_dim(x, x)? {
        return Ok(no("dim Hom(x, y) differs from dim End(x)"));
    }
    Ok(no("no certificate found among seeded combinations"))
}

/// Resolves a named module: `P(v)`, `S(v)`, `I(v)`, `A`, `D(A)` or `0`.
/// Vertices are quiver vertex names, or 1-based indices otherwise.
pub fn named_module(a: &Arc<Algebra>, name: &str) -> Result<Module> {
    let name = name.trim();
    match name {
        "0" => return Ok(Module::zero(a)),
        "A" => return Ok(regular_module(a)),
        "D(A)" => return Ok(injective_cogenerator(a)),
        _ => {}
    }
    let bad = || Error::input(format!("unknown module name {name:?}"));
    let (kind, rest) = name.split_at(1);
    let v = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let idx = match a.quiver().and_then(|q| q.vertex_index(v)) {
        Some(i) => i,
        None => v.parse::<usize>().ok().and_then(|i| i.checked_sub(1)).ok_or_else(bad)?,
    };
    if idx >= num_projectives(a) {
        return Err(Error::input(format!("vertex {v:?} out of range")));
    }
    match kind {
        "P" => Ok(projective(a, idx)),
        "S" => Ok(simple(a, idx)),
        "I" => Ok(injective(a, idx)),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ka2, lambda};

    #[test]
    fn projectives_and_simples_of_ka2() {
        let a = ka2();
        assert_eq!(projective(&a, 0).dim(), 2);
        assert_eq!(projective(&a, 1).dim(), 1);
        assert_eq!(simple(&a, 0).dim(), 1);
        assert_eq!(injective(&a, 1).dim(), 2);
        assert_eq!(injective(&a, 0).dim(), 1);
    }

    #[test]
    fn hom_examples() {
        let a = ka2();
        let (s1, s2, p1) = (simple(&a, 0), simple(&a, 1), projective(&a, 0));
        assert_eq!(hom_dim(&s1, &s1).unwrap(), 1);
        assert_eq!(hom_dim(&s1, &s2).unwrap(), 0);
        assert_eq!(hom_dim(&p1, &s1).unwrap(), 1);
        assert_eq!(hom_dim(&s2, &p1).unwrap(), 1);
        assert_eq!(hom_dim(&p1, &s2).unwrap(), 0);
    }

    #[test]
    fn kernel_cokernel_examples() {
        let a = ka2();
        let (s1, s2, p1) = (simple(&a, 0), simple(&a, 1), projective(&a, 0));
        let kc = kernel_cokernel(&ModuleMap::identity(&p1));
        assert_eq!((kc.ker.dim(), kc.coker.dim()), (0, 0));
        let kc = kernel_cokernel(&ModuleMap::zero(&s2, &s1));
        assert!(is_isomorphic(&kc.ker, &s2, 0).unwrap().isomorphic);
        assert!(is_isomorphic(&kc.coker, &s1, 0).unwrap().isomorphic);
        let inc = hom_basis(&s2, &p1).unwrap().remove(0);
        let kc = kernel_cokernel(&inc);
        assert!(is_isomorphic(&kc.coker, &s1, 0).unwrap().isomorphic);
        assert!(kc.proj.is_intertwiner());
    }

    #[test]
    fn direct_sum_biproduct() {
        let a = ka2();
        let ds = direct_sum(&a, &[simple(&a, 0), projective(&a, 0)]).unwrap();
        assert_eq!(ds.module.dim(), 3);
        for (i, inj) in ds.injections.iter().enumerate() {
            for (j, pr) in ds.projections.iter().enumerate() {
                let c = pr.compose(inj);
                assert_eq!(c.matrix.is_identity(), i == j);
                if i != j {
                    assert!(c.is_zero());
                }
            }
        }
        assert_eq!(direct_sum(&a, &[]).unwrap().module.dim(), 0);
    }

    #[test]
    fn covers_and_envelopes() {
        let a = ka2();
        let c = projective_cover(&simple(&a, 0)).unwrap();
        assert_eq!(c.map.source.dim(), 2);
        assert_eq!(kernel(&c.map).0.dim(), 1);
        let e = injective_envelope(&simple(&a, 1)).unwrap();
        assert!(is_isomorphic(&e.map.target, &projective(&a, 0), 0).unwrap().isomorphic);
        assert!(e.map.is_intertwiner());
        let l = lambda(2);
        let s = simple(&l, 0);
        assert_eq!(projective_cover(&s).unwrap().map.source.dim(), 2);
        assert_eq!(injective_envelope(&s).unwrap().map.target.dim(), 2);
    }

    #[test]
    fn ext_examples() {
        let a = ka2();
        let (s1, s2) = (simple(&a, 0), simple(&a, 1));
        assert_eq!(ext_dim(&s1, &s2, 1).unwrap(), 1);
        assert_eq!(ext_dim(&s2, &s1, 1).unwrap(), 0);
        assert_eq!(ext_dim(&s1, &s1, 0).unwrap(), 1);
        let l = lambda(2);
        let s = simple(&l, 0);
        for j in 0..6 {
            assert_eq!(ext_dim(&s, &s, j).unwrap(), 1);
        }
        assert!(ext_dim_capped(&s, &s, 10, 4).unwrap_err().is_inconclusive());
    }

    #[test]
    fn dimensions() {
        let a = ka2();
        assert_eq!(proj_dim(&projective(&a, 0), 8).unwrap(), DimBound::Finite(0));
        assert_eq!(inj_dim(&regular_module(&a), 8).unwrap(), DimBound::Finite(1));
        let l = lambda(2);
        assert_eq!(proj_dim(&simple(&l, 0), 20).unwrap(), DimBound::ExceedsCap);
    }

    #[test]
    fn decompositions() {
        let a = ka2();
        let (s1, s2) = (simple(&a, 0), simple(&a, 1));
        let x = direct_sum(&a, &[s1.clone(), s1.clone(), s2.clone()]).unwrap().module;
        let d = fitting_decompose(&x, 3).unwrap();
        assert_eq!(d.summands.len(), 3);
        assert_eq!(d.classes.len(), 2);
        assert!(d.certified());
        let d = fitting_decompose(&regular_module(&a), 0).unwrap();
        let mut dims: Vec<usize> = d.summands.iter().map(|s| s.module.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
        let l = lambda(2);
        assert!(fitting_decompose(&regular_module(&l), 0).unwrap().is_indecomposable());
    }

    #[test]
    fn dual_of_regular_is_sum_of_injectives() {
        let a = ka2();
        let d = injective_cogenerator(&a);
        assert_eq!(d.algebra().name(), a.name());
        let dec = fitting_decompose(&d, 0).unwrap();
        assert_eq!(dec.summands.len(), 2);
        for s in &dec.summands {
            assert!(is_injective(&s.module).unwrap());
        }
    }

    #[test]
    fn isomorphism_with_changed_basis() {
        let a = ka2();
        let p1 = projective(&a, 0);
        let g = Matrix::from_i64(2, 2, &[2, 0, 0, 3]);
        let gi = g.inverse().unwrap();
        let action = p1.actions().iter().map(|m| &(&g * m) * &gi).collect();
        let q = Module::new(&a, action).unwrap();
        let dec = is_isomorphic(&p1, &q, 0).unwrap();
        assert!(dec.isomorphic);
        assert!(dec.certificate.unwrap().is_intertwiner());
        assert!(!is_isomorphic(&simple(&a, 0), &simple(&a, 1), 0).unwrap().isomorphic);
    }

    #[test]
    fn invalid_action_is_rejected() {
        let a = lambda(2);
        // x acting invertibly violates x^2 = 0
        let bad = Module::new(&a, vec![Matrix::identity(1), Matrix::identity(1)]);
        assert!(bad.is_err());
    }

    #[test]
    fn named_modules() {
        let a = ka2();
        assert_eq!(named_module(&a, "P(1)").unwrap().dim(), 2);
        assert_eq!(named_module(&a, "I(1)").unwrap().dim(), 1);
        assert_eq!(named_module(&a, "D(A)").unwrap().dim(), 3);
        assert!(named_module(&a, "Q(1)").is_err());
    }
}
