//! Endomorphism algebras, global dimension, `add(M)`, relative dimension,
//! bi-generators of `S_n(A)` and brute-force enumeration of indecomposables.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::algcore::Algebra;
use crate::approx::{is_right_approximation_modules, is_right_minimal_module};
use crate::cotilt::{Catalog, Stabilization};
use crate::error::{Error, Result};
use crate::exactla::{unit_vec, Matrix, Rational};
use crate::modrep::{
    self, cokernel, composition_algebra, direct_sum, fitting_decompose, generated_submodule, hom_matrices,
    injective_cogenerator, is_isomorphic, kernel, proj_dim, quotient, DimBound, Module, ModuleMap,
};
use crate::morcat::{m_i, m_of, mor_direct_sum, MorObject};
use crate::Caps;

/// `End(M)` with `b_i · b_j = maps[i] ∘ maps[j]`; `Γ` is its opposite.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub algebra: Arc<Algebra>,
    pub maps: Vec<ModuleMap>,
}

impl EndAlgebra {
    /// `Γ = End(M)^op`, over which `Hom(M, X)` is a left module.
    pub fn gamma(&self) -> Arc<Algebra> {
        self.algebra.opposite()
    }

    pub fn module(&self) -> &Module {
        &self.maps[0].source
    }
}

pub fn end_algebra(m: &Module) -> Result<EndAlgebra> {
    if m.is_zero() {
        return Err(Error::input("End of the zero module has no unit"));
    }
    let mats = hom_matrices(m, m)?;
    let algebra = composition_algebra(&format!("End(dim {})", m.dim()), &mats)?;
    let maps = mats.into_iter().map(|x| ModuleMap::new_unchecked(m, m, x)).collect();
    Ok(EndAlgebra { algebra, maps })
}

/// Coordinates of matrices in a fixed basis of matrices.
struct Chart {
    positions: Vec<usize>,
    inv: Matrix,
    cols: usize,
}

impl Chart {
    fn new(basis: &[Matrix], rows: usize, cols: usize) -> Result<Chart> {
        let flat: Vec<Vec<Rational>> = basis.iter().map(Matrix::flatten).collect();
        let fm = Matrix::from_columns(rows * cols, &flat);
        let positions = fm.transpose().pivot_columns();
        if positions.len() != basis.len() {
            return Err(Error::internal("hom basis is dependent"));
        }
        let inv = fm.select_rows(&positions).inverse().ok_or_else(|| Error::internal("singular chart"))?;
        Ok(Chart { positions, inv, cols })
    }

    fn coords(&self, m: &Matrix) -> Vec<Rational> {
        let v: Vec<Rational> = self.positions.iter().map(|&p| m[(p / self.cols, p % self.cols)].clone()).collect();
        self.inv.mul_vec(&v)
    }
}

/// `Hom(M, X)` as a left `Γ`-module, with its basis of maps.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: Module,
    pub basis: Vec<Matrix>,
    chart: Option<Arc<Chart>>,
}

impl std::fmt::Debug for Chart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Chart({} coordinates)", self.positions.len())
    }
}

pub fn hom_module(end: &EndAlgebra, x: &Module) -> Result<HomModule> {
    let gamma = end.gamma();
    let m = end.module();
    let basis = hom_matrices(m, x)?;
    if basis.is_empty() {
        return Ok(HomModule { module: Module::zero(&gamma), basis, chart: None });
    }
    let chart = Chart::new(&basis, x.dim(), m.dim())?;
    let action = end
        .maps
        .iter()
        .map(|s| {
            let cols: Vec<Vec<Rational>> = basis.iter().map(|h| chart.coords(&(h * &s.matrix))).collect();
            Matrix::from_columns(basis.len(), &cols)
        })
        .collect();
    let module = Module::new_unchecked(&gamma, basis.len(), action);
    Ok(HomModule { module, basis, chart: Some(Arc::new(chart)) })
}

/// `f_*: Hom(M, X) → Hom(M, X')`.
pub fn hom_module_map(f: &ModuleMap, src: &HomModule, tgt: &HomModule) -> ModuleMap {
    let cols: Vec<Vec<Rational>> = match &tgt.chart {
        Some(chart) => src.basis.iter().map(|h| chart.coords(&(&f.matrix * h))).collect(),
        None => src.basis.iter().map(|_| Vec::new()).collect(),
    };
    ModuleMap::new_unchecked(&src.module, &tgt.module, Matrix::from_columns(tgt.basis.len(), &cols))
}

/// Largest projective dimension of a simple module.
pub fn global_dimension(a: &Arc<Algebra>, cap: usize) -> Result<DimBound> {
    let mut best = 0;
    for i in 0..modrep::num_projectives(a) {
        match proj_dim(&modrep::simple(a, i), cap)? {
            DimBound::Finite(d) => best = best.max(d),
            DimBound::ExceedsCap => return Ok(DimBound::ExceedsCap),
        }
    }
    Ok(DimBound::Finite(best))
}

/// The indecomposable summands of a module, up to isomorphism.
#[derive(Clone, Debug)]
pub struct AddClosure {
    pub indecomposables: Vec<Module>,
    seed: u64,
}

impl AddClosure {
    pub fn new(generators: &[Module], seed: u64) -> Result<AddClosure> {
        let mut indecomposables: Vec<Module> = Vec::new();
        for g in generators {
            for s in fitting_decompose(g, seed)?.summands {
                if find_iso(&indecomposables, &s.module, seed)?.is_none() {
                    indecomposables.push(s.module);
                }
            }
        }
        Ok(AddClosure { indecomposables, seed })
    }

    /// `None` if `x ∈ add`, otherwise the index of an offending summand.
    pub fn missing(&self, x: &Module) -> Result<Option<usize>> {
        if x.is_zero() {
            return Ok(None);
        }
        for (k, s) in fitting_decompose(x, self.seed)?.summands.iter().enumerate() {
            if find_iso(&self.indecomposables, &s.module, self.seed)?.is_none() {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    pub fn contains(&self, x: &Module) -> Result<bool> {
        Ok(self.missing(x)?.is_none())
    }
}

pub(crate) fn find_iso(list: &[Module], x: &Module, seed: u64) -> Result<Option<usize>> {
    let dv = x.dimension_vector();
    for (k, m) in list.iter().enumerate() {
        if m.dim() == x.dim() && m.dimension_vector() == dv && is_isomorphic(m, x, seed)?.isomorphic {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AddVerdict {
    pub member: bool,
    /// Index of a summand of `x` not found in `add(M)`.
    pub witness: Option<usize>,
}

pub fn add_membership(x: &Module, m: &Module, seed: u64) -> Result<AddVerdict> {
    let w = AddClosure::new(std::slice::from_ref(m), seed)?.missing(x)?;
    Ok(AddVerdict { member: w.is_none(), witness: w })
}

/// Evaluation map `⊕_j M_j^{Hom(M_j, x)} → x` over the indecomposables of
/// `add(M)`, with the summand list of its source.
fn evaluation(closure: &AddClosure, x: &Module) -> Result<(Vec<Module>, Vec<Matrix>)> {
    let mut parts = Vec::new();
    let mut blocks = Vec::new();
    for m in &closure.indecomposables {
        for h in hom_matrices(m, x)? {
            parts.push(m.clone());
            blocks.push(h);
        }
    }
    Ok((parts, blocks))
}

fn assemble(a: &Arc<Algebra>, x: &Module, parts: &[Module], blocks: &[Matrix]) -> Result<ModuleMap> {
    let src = if parts.is_empty() { Module::zero(a) } else { direct_sum(a, parts)?.module };
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let mat = if refs.is_empty() { Matrix::zeros(x.dim(), 0) } else { Matrix::hstack(x.dim(), &refs) };
    Ok(ModuleMap::new_unchecked(&src, x, mat))
}

/// Minimal right `add(M)`-approximation of `x`, by greedy deletion of
/// summands from the evaluation map.
pub fn minimal_right_approximation(closure: &AddClosure, x: &Module) -> Result<ModuleMap> {
    let a = x.algebra();
    let (mut parts, mut blocks) = evaluation(closure, x)?;
    let mut k = 0;
    while k < parts.len() {
        let mut p2 = parts.clone();
        let mut b2 = blocks.clone();
        p2.remove(k);
        b2.remove(k);
        let f = assemble(a, x, &p2, &b2)?;
        if is_right_approximation_modules(&f, &closure.indecomposables)?.holds {
            parts = p2;
            blocks = b2;
        } else {
            k += 1;
        }
    }
    let f = assemble(a, x, &parts, &blocks)?;
    if !is_right_minimal_module(&f)? {
        return Err(Error::inconclusive("greedy summand deletion did not reach a right minimal map"));
    }
    Ok(f)
}

#[derive(Clone, Debug)]
pub struct RelDimStep {
    pub approximation: ModuleMap,
    /// `Ω_M` of the previous term.
    pub kernel: Module,
}

#[derive(Clone, Debug)]
pub struct RelDimTrace {
    pub steps: Vec<RelDimStep>,
    pub outcome: DimBound,
}

/// Length of the minimal `add(M)`-resolution of `x`.
pub fn rel_dim(x: &Module, m: &Module, cap: usize, seed: u64) -> Result<RelDimTrace> {
    let closure = AddClosure::new(std::slice::from_ref(m), seed)?;
    let mut steps = Vec::new();
    let mut cur = x.clone();
    loop {
        if closure.contains(&cur)? {
            return Ok(RelDimTrace { outcome: DimBound::Finite(steps.len()), steps });
        }
        if steps.len() >= cap {
            return Ok(RelDimTrace { steps, outcome: DimBound::ExceedsCap });
        }
        let f = minimal_right_approximation(&closure, &cur)?;
        let (k, _) = kernel(&f);
        steps.push(RelDimStep { approximation: f, kernel: k.clone() });
        cur = k;
    }
}

/// Projective dimension of `Hom(M, x)` over `Γ`.
pub fn hom_proj_dim(end: &EndAlgebra, x: &Module, cap: usize) -> Result<DimBound> {
    proj_dim(&hom_module(end, x)?.module, cap)
}

/// `0 → x → T_0 → T_1` built from coevaluation maps into `add(T)`.
fn coresolve2(x: &Module, t: &AddClosure) -> Result<(ModuleMap, ModuleMap)> {
    let a = x.algebra();
    let coev = |y: &Module| -> Result<ModuleMap> {
        let mut parts = Vec::new();
        let mut rows = Vec::new();
        for ti in &t.indecomposables {
            for h in hom_matrices(y, ti)? {
                parts.push(ti.clone());
                rows.push(h);
            }
        }
        let tgt = if parts.is_empty() { Module::zero(a) } else { direct_sum(a, &parts)?.module };
        let refs: Vec<&Matrix> = rows.iter().collect();
        let mat = if refs.is_empty() { Matrix::zeros(0, y.dim()) } else { Matrix::vstack(y.dim(), &refs) };
        Ok(ModuleMap::new_unchecked(y, &tgt, mat))
    };
    let u = coev(x)?;
    if !u.is_injective() {
        return Err(Error::input("x is not cogenerated by T"));
    }
    let (c, p) = cokernel(&u);
    let w = coev(&c)?;
    if !w.is_injective() {
        return Err(Error::input("Coker u is not cogenerated by T"));
    }
    Ok((u.clone(), w.compose(&p)))
}

/// The `Coker v_*` construction for `x ∉ add(T)`.
#[derive(Clone, Debug, Serialize)]
pub struct CokerVReport {
    pub pd_hom: DimBound,
    pub pd_y: DimBound,
    pub holds: bool,
}

/// Builds `0 → x → T_0 → T_1`, applies `Hom(M, -)` and compares
/// `proj.dim Coker v_*` with `2 + proj.dim Hom(M, x)`.
pub fn coker_v_check(m: &Module, t: &Module, x: &Module, cap: usize, seed: u64) -> Result<CokerVReport> {
    let tclosure = AddClosure::new(std::slice::from_ref(t), seed)?;
    if tclosure.contains(x)? {
        return Err(Error::input("x lies in add(T)"));
    }
    let (u, v) = coresolve2(x, &tclosure)?;
    let end = end_algebra(m)?;
    let h0 = hom_module(&end, &u.target)?;
    let h1 = hom_module(&end, &v.target)?;
    let vstar = hom_module_map(&v, &h0, &h1);
    let (y, _) = cokernel(&vstar);
    let pd_hom = hom_proj_dim(&end, x, cap)?;
    let pd_y = proj_dim(&y, cap)?;
    let holds = match (pd_hom, pd_y) {
        (DimBound::Finite(a), DimBound::Finite(b)) => b == a + 2,
        _ => false,
    };
    Ok(CokerVReport { pd_hom, pd_y, holds })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<String>,
}

impl Verdict {
    fn yes() -> Self {
        Verdict { holds: true, witness: None }
    }

    fn no(w: impl Into<String>) -> Self {
        Verdict { holds: false, witness: Some(w.into()) }
    }
}

/// `M ∈ S_n(A)`, every indecomposable projective `T_n(A)`-module lies in
/// `add(M)`, and `m(D(A_A)) ∈ add(M)`.
pub fn bigenerator_check(m: &MorObject, seed: u64) -> Result<Verdict> {
    if !m.is_monic_chain() {
        return Ok(Verdict::no("M is not in the monomorphism category"));
    }
    let (a, n) = (m.algebra().clone(), m.n());
    let closure = AddClosure::new(&[m.flat()?], seed)?;
    for i in 1..=n {
        for (v, p) in modrep::projectives(&a).iter().enumerate() {
            if !closure.contains(&m_i(p, i, n)?.flat()?)? {
                return Ok(Verdict::no(format!("m_{i}(P{}) is not in add(M)", v + 1)));
            }
        }
    }
    if !closure.contains(&m_of(&injective_cogenerator(&a), n)?.flat()?)? {
        return Ok(Verdict::no("m(D(A)) is not in add(M)"));
    }
    Ok(Verdict::yes())
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteTypeReport {
    /// Bi-generator check of `M`.
    pub bigenerator: Verdict,
    pub end_dim: usize,
    pub end_gldim: DimBound,
    /// `add(M)` against `^⊥m(D(A_A))` over the ambient catalog, when given.
    pub add_equals_perp: Option<Verdict>,
    pub holds: bool,
}

/// Sum of catalog objects.
pub fn catalog_sum(catalog: &Catalog) -> Result<MorObject> {
    let objs = catalog.mor_objects()?;
    Ok(mor_direct_sum(&catalog.algebra, &objs)?.object)
}

/// Both directions of the finite-type criterion: `M` must be a bi-generator
/// with `gl.dim End(M) ≤ 2`, and, given an ambient catalog of `Mor_n(A)`,
/// `add(M)` must equal `^⊥m(D(A_A))` on it.
pub fn finite_type_check(m: &MorObject, ambient: Option<&Catalog>, caps: Caps, seed: u64) -> Result<FiniteTypeReport> {
    let bigenerator = bigenerator_check(m, seed)?;
    let flat = m.flat()?;
    let end = end_algebra(&flat)?;
    let end_gldim = global_dimension(&end.algebra, caps.depth)?;
    let add_equals_perp = match ambient {
        None => None,
        Some(cat) => {
            let a = m.algebra();
            let t = m_of(&injective_cogenerator(a), m.n())?.flat()?;
            let t_id = modrep::inj_dim(&t, caps.res)?;
            let closure = AddClosure::new(&[flat], seed)?;
            let mut verdict = Verdict::yes();
            for (k, x) in cat.mor_objects()?.iter().enumerate() {
                let fx = x.flat()?;
                let in_add = closure.contains(&fx)?;
                let in_perp = crate::morcat::in_perp_left(&fx, &t, t_id, caps.res)?;
                if in_add != in_perp {
                    verdict = Verdict::no(format!("object {} ({})", k, cat.names[k]));
                    break;
                }
            }
            Some(verdict)
        }
    };
    let holds = bigenerator.holds
        && matches!(end_gldim, DimBound::Finite(d) if d <= 2)
        && add_equals_perp.as_ref().is_none_or(|v| v.holds);
    Ok(FiniteTypeReport { bigenerator, end_dim: end.algebra.dim(), end_gldim, add_equals_perp, holds })
}

/// Nonzero vectors of `x` used as candidate generators: coordinate vectors
/// and sums/differences of two coordinate vectors in the same idempotent
/// class.
fn sparse_vectors(x: &Module) -> Vec<Vec<Rational>> {
    let n = x.dim();
    let mut out = Vec::new();
    for class in x.classes() {
        for (p, &c) in class.iter().enumerate() {
            out.push(unit_vec(n, c));
            for &d in &class[p + 1..] {
                let mut v = unit_vec(n, c);
                v[d] = Rational::from_integer(1.into());
                out.push(v.clone());
                v[d] = Rational::from_integer((-1).into());
                out.push(v);
            }
        }
    }
    out
}

/// Distinct submodules generated by at most `max_gens` sparse vectors,
/// including `0`.
fn sparse_submodules(x: &Module, max_gens: usize) -> Vec<(Module, ModuleMap)> {
    let vecs = sparse_vectors(x);
    let mut seen: HashSet<Matrix> = HashSet::new();
    let mut out = Vec::new();
    let mut push = |gens: &[Vec<Rational>], out: &mut Vec<(Module, ModuleMap)>| {
        let (s, incl) = generated_submodule(x, gens);
        let key = if incl.matrix.cols() == 0 { Matrix::zeros(0, x.dim()) } else { incl.matrix.transpose().rref().0 };
        if seen.insert(key) {
            out.push((s, incl));
        }
    };
    push(&[], &mut out);
    for (i, v) in vecs.iter().enumerate() {
        push(std::slice::from_ref(v), &mut out);
        if max_gens >= 2 {
            for w in &vecs[i + 1..] {
                push(&[v.clone(), w.clone()], &mut out);
            }
        }
    }
    out
}

/// All multisets from `items` (with weights) of total weight in `1..=cap`.
fn multisets(weights: &[usize], cap: usize) -> Vec<Vec<usize>> {
    fn go(w: &[usize], start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for i in start..w.len() {
            if w[i] > 0 && w[i] <= left {
                cur.push(i);
                go(w, i, left - w[i], cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(weights, 0, cap, &mut Vec::new(), &mut out);
    out
}

/// Collects indecomposable summands into `found`, up to isomorphism.
struct Collector {
    found: Vec<Module>,
    keys: Vec<(usize, Vec<usize>)>,
    seed: u64,
}

impl Collector {
    fn new(seed: u64) -> Self {
        Collector { found: Vec::new(), keys: Vec::new(), seed }
    }

    fn add(&mut self, m: &Module) -> Result<()> {
        if m.is_zero() {
            return Ok(());
        }
        for s in fitting_decompose(m, self.seed)?.summands {
            let key = (s.module.dim(), s.module.dimension_vector());
            let same: Vec<Module> =
                self.keys.iter().zip(&self.found).filter(|(k, _)| **k == key).map(|(_, f)| f.clone()).collect();
            if find_iso(&same, &s.module, self.seed)?.is_none() {
                self.keys.push(key);
                self.found.push(s.module);
            }
        }
        Ok(())
    }
}

/// Indecomposable `A`-modules of dimension `≤ dim_cap`, found among
/// quotients of sums of at most two indecomposable projectives by sparse
/// submodules.
pub fn enumerate_module_indecomposables(a: &Arc<Algebra>, dim_cap: usize, seed: u64) -> Result<Vec<Module>> {
    let projs = modrep::projectives(a);
    let mut col = Collector::new(seed);
    let n = projs.len();
    let mut combos: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    for i in 0..n {
        for j in i..n {
            combos.push(vec![i, j]);
        }
    }
    for c in combos {
        let parts: Vec<Module> = c.iter().map(|&i| projs[i].clone()).collect();
        let p = direct_sum(a, &parts)?.module;
        for (_, incl) in sparse_submodules(&p, 2) {
            let (q, _) = quotient(&p, &incl.matrix.columns());
            if !q.is_zero() && q.dim() <= dim_cap {
                col.add(&q)?;
            }
        }
    }
    let mut out: Vec<Module> = col.found.into_iter().filter(|m| m.dim() <= dim_cap).collect();
    out.sort_by_key(Module::dim);
    Ok(out)
}

/// Sums of the given indecomposables with total dimension `≤ cap`, grouped
/// by dimension.
fn module_sums(a: &Arc<Algebra>, indecs: &[Module], cap: usize) -> Result<Vec<Module>> {
    let w: Vec<usize> = indecs.iter().map(Module::dim).collect();
    multisets(&w, cap)
        .into_iter()
        .map(|ms| {
            let parts: Vec<Module> = ms.iter().map(|&i| indecs[i].clone()).collect();
            Ok(direct_sum(a, &parts)?.module)
        })
        .collect()
}

fn collect_chains(
    a: &Arc<Algebra>,
    prefix: &mut Vec<(Module, Matrix)>,
    n: usize,
    max_gens: usize,
    out: &mut dyn FnMut(MorObject) -> Result<()>,
) -> Result<()> {
    if prefix.len() == n {
        let branches: Vec<Module> = prefix.iter().map(|(m, _)| m.clone()).collect();
        let phi =
            (1..n).map(|k| ModuleMap::new_unchecked(&branches[k], &branches[k - 1], prefix[k].1.clone())).collect();
        return out(MorObject::new_unchecked(a, branches, phi));
    }
    let last = prefix.last().expect("chain has a top branch").0.clone();
    for (s, incl) in sparse_submodules(&last, max_gens) {
        prefix.push((s, incl.matrix));
        collect_chains(a, prefix, n, max_gens, out)?;
        prefix.pop();
    }
    Ok(())
}

/// Brute-force catalog of indecomposables of `S_n(A)` whose top branch has
/// dimension `≤ dim_cap`: chains of sparse submodules of sums of
/// indecomposable `A`-modules, decomposed and deduplicated. Records how many
/// classes appear at each top dimension.
pub fn enumerate_sn_indecomposables(a: &Arc<Algebra>, n: usize, dim_cap: usize, seed: u64) -> Result<Catalog> {
    let indecs = enumerate_module_indecomposables(a, dim_cap.max(1), seed)?;
    let mut col = Collector::new(seed);
    let mut layers = Vec::new();
    for d in 1..=dim_cap {
        for top in module_sums(a, &indecs, d)?.into_iter().filter(|m| m.dim() == d) {
            let id = Matrix::identity(top.dim());
            let mut prefix = vec![(top, id)];
            collect_chains(a, &mut prefix, n, 2, &mut |x| col.add(&x.flat()?))?;
        }
        layers.push((d, col.found.len()));
    }
    finish_catalog(a, n, col, layers, "oracle: monomorphism chains", true)
}

/// Brute-force catalog of indecomposables of `Mor_n(A)` whose branches have
/// dimension `≤ branch_cap`, from sums of indecomposables joined by sparse
/// combinations of hom-basis maps.
pub fn enumerate_mor_indecomposables(a: &Arc<Algebra>, n: usize, branch_cap: usize, seed: u64) -> Result<Catalog> {
    let indecs = enumerate_module_indecomposables(a, branch_cap.max(1), seed)?;
    let mut col = Collector::new(seed);
    let mut layers = Vec::new();
    for d in 0..=branch_cap {
        let mut pool = vec![Module::zero(a)];
        pool.extend(module_sums(a, &indecs, d)?);
        let mut choice = vec![0usize; n];
        loop {
            let branches: Vec<Module> = choice.iter().map(|&c| pool[c].clone()).collect();
            let max = branches.iter().map(Module::dim).max().unwrap_or(0);
            if max == d {
                let maps: Vec<Vec<Matrix>> =
                    (1..n).map(|k| sparse_maps(&branches[k], &branches[k - 1])).collect::<Result<_>>()?;
                let mut idx = vec![0usize; n - 1];
                loop {
                    let phi = (1..n)
                        .map(|k| {
                            ModuleMap::new_unchecked(&branches[k], &branches[k - 1], maps[k - 1][idx[k - 1]].clone())
                        })
                        .collect();
                    col.add(&MorObject::new_unchecked(a, branches.clone(), phi).flat()?)?;
                    if !odometer(&mut idx, &maps.iter().map(Vec::len).collect::<Vec<_>>()) {
                        break;
                    }
                }
            }
            if !odometer(&mut choice, &vec![pool.len(); n]) {
                break;
            }
        }
        layers.push((d, col.found.len()));
    }
    finish_catalog(a, n, col, layers, "oracle: morphism chains", false)
}

fn odometer(idx: &mut [usize], bounds: &[usize]) -> bool {
    for (i, b) in idx.iter_mut().zip(bounds) {
        *i += 1;
        if *i < *b {
            return true;
        }
        *i = 0;
    }
    false
}

/// `0`, each hom-basis map, and sums of pairs of them.
fn sparse_maps(x: &Module, y: &Module) -> Result<Vec<Matrix>> {
    let basis = hom_matrices(x, y)?;
    let mut out = vec![Matrix::zeros(y.dim(), x.dim())];
    for (i, h) in basis.iter().enumerate() {
        out.push(h.clone());
        for g in &basis[i + 1..] {
            out.push(h + g);
        }
    }
    let mut seen = HashSet::new();
    out.retain(|m| seen.insert(m.clone()));
    Ok(out)
}

fn finish_catalog(
    a: &Arc<Algebra>,
    n: usize,
    col: Collector,
    layers: Vec<(usize, usize)>,
    provenance: &str,
    monic_only: bool,
) -> Result<Catalog> {
    let mut objects = Vec::new();
    for m in col.found {
        let x = crate::morcat::from_flat(&m)?;
        if !monic_only || x.is_monic_chain() {
            objects.push(x);
        }
    }
    objects.sort_by_key(|x| (x.total_dim(), x.dims()));
    let stabilized = layers.len() >= 2 && layers[layers.len() - 1].1 == layers[layers.len() - 2].1;
    let names = objects.iter().enumerate().map(|(k, x)| format!("#{k} dims {:?}", x.dims())).collect();
    Ok(Catalog {
        algebra: a.clone(),
        n: Some(n),
        objects,
        names,
        claims_complete: stabilized,
        provenance: provenance.to_string(),
        evidence: Some(Stabilization { layers, stabilized }),
    })
}

/// The flat projective `T_n(A)`-modules as a single generator.
pub fn projective_generator(a: &Arc<Algebra>, n: usize) -> Result<MorObject> {
    let (p, _) = crate::morcat::classify_projinj(a, n)?;
    Ok(mor_direct_sum(a, &p)?.object)
}

/// Every indecomposable projective lies in `add(m)`.
pub fn is_generator(m: &Module, seed: u64) -> Result<bool> {
    let closure = AddClosure::new(std::slice::from_ref(m), seed)?;
    for p in modrep::projectives(m.algebra()) {
        if !closure.contains(&p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::{is_algebra_isomorphism, triangular_algebra};
    use crate::fixtures::{ka2, lambda};
    use crate::modrep::{projective, regular_module, simple};

    #[test]
    fn end_algebras() {
        let a = ka2();
        assert_eq!(end_algebra(&simple(&a, 0)).unwrap().algebra.dim(), 1);
        let e = end_algebra(&m_of(&injective_cogenerator(&a), 2).unwrap().flat().unwrap()).unwrap();
        assert_eq!(e.algebra.dim(), 9);
        let t = triangular_algebra(&a, 2).unwrap();
        // End(m(D(A))) and T_2(A)^op have the same dimension and number of simples
        assert_eq!(modrep::num_projectives(&e.algebra), modrep::num_projectives(&t));
    }

    #[test]
    fn global_dimensions() {
        assert_eq!(global_dimension(&ka2(), 8).unwrap(), DimBound::Finite(1));
        assert_eq!(global_dimension(&lambda(2), 8).unwrap(), DimBound::ExceedsCap);
        let t = triangular_algebra(&ka2(), 2).unwrap();
        assert_eq!(global_dimension(&t, 8).unwrap(), DimBound::Finite(2));
        let _ = is_algebra_isomorphism;
    }

    #[test]
    fn add_membership_examples() {
        let a = ka2();
        let p = direct_sum(&a, &[projective(&a, 0), projective(&a, 1)]).unwrap().module;
        let pp = direct_sum(&a, &[p.clone(), p.clone()]).unwrap().module;
        assert!(add_membership(&pp, &p, 0).unwrap().member);
        assert!(!add_membership(&simple(&a, 0), &p, 0).unwrap().member);
    }

    #[test]
    fn relative_dimension_and_hom_modules() {
        let a = ka2();
        let m = direct_sum(&a, &[projective(&a, 0), projective(&a, 1), simple(&a, 0)]).unwrap().module;
        let end = end_algebra(&m).unwrap();
        for x in [simple(&a, 0), simple(&a, 1), projective(&a, 0)] {
            let h = hom_module(&end, &x).unwrap();
            h.module.check().unwrap();
            let r = rel_dim(&x, &m, 4, 0).unwrap();
            assert_eq!(r.outcome, DimBound::Finite(0));
            assert_eq!(hom_proj_dim(&end, &x, 4).unwrap(), DimBound::Finite(0));
        }
        let gen = regular_module(&a);
        let r = rel_dim(&simple(&a, 0), &gen, 4, 0).unwrap();
        assert_eq!(r.outcome, DimBound::Finite(1));
        let end = end_algebra(&gen).unwrap();
        assert_eq!(hom_proj_dim(&end, &simple(&a, 0), 4).unwrap(), DimBound::Finite(1));
    }

    #[test]
    fn coker_v_on_auslander_algebra_of_lambda2() {
        let l = lambda(2);
        let m = direct_sum(&l, &[regular_module(&l), simple(&l, 0)]).unwrap().module;
        let r = coker_v_check(&m, &regular_module(&l), &simple(&l, 0), 6, 0).unwrap();
        assert_eq!((r.pd_hom, r.pd_y), (DimBound::Finite(0), DimBound::Finite(2)));
        assert!(r.holds);
    }

    #[test]
    fn module_enumeration() {
        assert_eq!(enumerate_module_indecomposables(&ka2(), 4, 0).unwrap().len(), 3);
        assert_eq!(enumerate_module_indecomposables(&lambda(2), 4, 0).unwrap().len(), 2);
        assert_eq!(enumerate_module_indecomposables(&lambda(3), 4, 0).unwrap().len(), 3);
    }

    #[test]
    fn sn_enumeration_for_ka2() {
        let c = enumerate_sn_indecomposables(&ka2(), 2, 3, 0).unwrap();
        assert_eq!(c.objects.len(), 7);
        assert!(c.evidence.as_ref().unwrap().stabilized);
        let c0 = enumerate_sn_indecomposables(&ka2(), 2, 0, 0).unwrap();
        assert!(c0.objects.is_empty());
    }

    #[test]
    fn bigenerators() {
        let a = ka2();
        let p = projective_generator(&a, 2).unwrap();
        let v = bigenerator_check(&p, 0).unwrap();
        assert!(!v.holds);
        let d = m_of(&injective_cogenerator(&a), 2).unwrap();
        let both = mor_direct_sum(&a, &[p, d]).unwrap().object;
        assert!(bigenerator_check(&both, 0).unwrap().holds);
    }
}
