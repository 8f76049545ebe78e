//! Finite-dimensional algebras over the rationals.
//!
//! An [`Algebra`] is stored by its left multiplication operators: column `j`
//! of `left(i)` holds the coordinates of `b_i · b_j`. Path algebras of bound
//! quivers, upper triangular matrix algebras `T_n(A)` and opposite algebras
//! are all built into this one representation and keep a note of where they
//! came from.
//!
//! Path convention: a path is a list of arrows in application order, and the
//! product `p · q` means "first `q`, then `p`". For the quiver `1 → 2` this
//! makes `P(1) = A e_1` two-dimensional with top `S(1)` and socle `S(2)`.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock, Weak};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{axpy, is_zero_vec, unit_vec, zero_vec, Matrix, Rational, RowReducer};

/// Default bound on path length when detecting finite-dimensionality.
pub const DEFAULT_PATH_CAP: usize = 64;

/// A bound quiver: vertices, arrows `(name, source, target)` and relations,
/// each a rational combination of paths written in application order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    pub relations: Vec<Vec<(Rational, Vec<String>)>>,
}

/// A path in a quiver; `arrows` are arrow indices in application order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Quiver data retained by a path algebra.
#[derive(Clone, Debug)]
pub struct QuiverInfo {
    pub presentation: QuiverPresentation,
    /// Arrows resolved to `(source index, target index)`.
    pub arrow_ends: Vec<(usize, usize)>,
    /// The path whose residue is each basis element.
    pub basis_paths: Vec<Path>,
}

impl QuiverInfo {
    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.presentation.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.presentation.arrows.iter().position(|a| a.0 == name)
    }

    /// Basis index of the trivial path at vertex `v`.
    pub fn vertex_basis(&self, v: usize) -> usize {
        self.basis_paths
            .iter()
            .position(|p| p.is_trivial() && p.source == v)
            .expect("trivial paths are always basis elements")
    }

    /// Basis index of arrow `a`.
    pub fn arrow_basis(&self, a: usize) -> usize {
        self.basis_paths
            .iter()
            .position(|p| p.arrows.len() == 1 && p.arrows[0] == a)
            .expect("arrows are always basis elements")
    }
}

/// Marks an algebra as `T_n(base)`.
#[derive(Clone, Debug)]
pub struct TriangularInfo {
    pub base: Arc<Algebra>,
    pub n: usize,
}

impl TriangularInfo {
    /// Basis index of `e_{ij} ⊗ b_k` (0-based, `i ≤ j`).
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        tri_index(self.n, self.base.dim(), i, j, k)
    }
}

fn tri_pair(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < n);
    // pairs (i', j') with i' < i come first: sum over i' < i of (n - i')
    i * n - i * i.saturating_sub(1) / 2 + (j - i)
}

fn tri_index(n: usize, d: usize, i: usize, j: usize, k: usize) -> usize {
    tri_pair(n, i, j) * d + k
}

#[derive(Default)]
struct Cache {
    radical: OnceLock<Vec<Vec<Rational>>>,
    generators: OnceLock<Vec<usize>>,
    idempotent_basis: OnceLock<Vec<usize>>,
    primitive: OnceLock<(Vec<Vec<Rational>>, bool)>,
    opposite: OnceLock<Arc<Algebra>>,
    opposite_of: OnceLock<Weak<Algebra>>,
    triangular: Mutex<HashMap<usize, Weak<Algebra>>>,
    projectives: OnceLock<Vec<crate::modrep::ProjectiveData>>,
}

/// A finite-dimensional unital associative algebra over the rationals.
pub struct Algebra {
    name: String,
    dim: usize,
    left: Vec<Matrix>,
    unit: Vec<Rational>,
    labels: Vec<String>,
    quiver: Option<QuiverInfo>,
    triangular: Option<TriangularInfo>,
    fingerprint: u64,
    cache: Cache,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra({}, dim {})", self.name, self.dim)
    }
}

fn fingerprint(dim: usize, left: &[Matrix], unit: &[Rational]) -> u64 {
    let mut h = DefaultHasher::new();
    dim.hash(&mut h);
    for m in left {
        m.hash(&mut h);
    }
    unit.hash(&mut h);
    h.finish()
}

impl Algebra {
    fn build(
        name: String,
        labels: Vec<String>,
        left: Vec<Matrix>,
        unit: Vec<Rational>,
        quiver: Option<QuiverInfo>,
        triangular: Option<TriangularInfo>,
    ) -> Algebra {
        let dim = left.len();
        let fp = fingerprint(dim, &left, &unit);
        Algebra { name, dim, left, unit, labels, quiver, triangular, fingerprint: fp, cache: Cache::default() }
    }

    /// Builds an algebra from structure constants, checking associativity and
    /// the unit. `mult[i][j]` is the coordinate vector of `b_i · b_j`.
    pub fn from_structure_constants(
        name: &str,
        labels: Option<Vec<String>>,
        mult: Vec<Vec<Vec<Rational>>>,
        unit: Vec<Rational>,
    ) -> Result<Arc<Algebra>> {
        let dim = mult.len();
        if unit.len() != dim {
            return Err(Error::input(format!("unit has length {}, algebra has dim {dim}", unit.len())));
        }
        let mut left = Vec::with_capacity(dim);
        for (i, row) in mult.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::input(format!("mult[{i}] has {} entries, expected {dim}", row.len())));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != dim {
                    return Err(Error::input(format!("mult[{i}][{j}] has length {}, expected {dim}", v.len())));
                }
            }
            left.push(Matrix::from_columns(dim, row));
        }
        let labels = match labels {
            Some(l) if l.len() == dim => l,
            Some(l) => return Err(Error::input(format!("{} labels for dim {dim}", l.len()))),
            None => (0..dim).map(|i| format!("b{i}")).collect(),
        };
        let a = Algebra::build(name.to_string(), labels, left, unit, None, None);
        a.check_axioms()?;
        Ok(Arc::new(a))
    }

    /// Builds without re-checking the axioms; for constructions where they
    /// hold by design.
    pub(crate) fn new_unchecked(
        name: String,
        labels: Vec<String>,
        left: Vec<Matrix>,
        unit: Vec<Rational>,
    ) -> Arc<Algebra> {
        Arc::new(Algebra::build(name, labels, left, unit, None, None))
    }

    /// Verifies associativity and the two-sided unit exactly.
    pub fn check_axioms(&self) -> Result<()> {
        let u = self.left_mult(&self.unit);
        if !u.is_identity() {
            return Err(Error::input(format!("{}: unit does not act as identity on the left", self.name)));
        }
        for j in 0..self.dim {
            let r = self.mul(&unit_vec(self.dim, j), &self.unit);
            if r != unit_vec(self.dim, j) {
                return Err(Error::input(format!(
                    "{}: unit is not a right identity for {}",
                    self.name, self.labels[j]
                )));
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lij = self.left_mult(&self.left[i].column(j));
                let prod = &self.left[i] * &self.left[j];
                if lij != prod {
                    return Err(Error::input(format!(
                        "{}: multiplication is not associative at ({}, {})",
                        self.name, self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    /// Left multiplication by basis element `i`.
    pub fn left(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    /// `mult[i][j]`: coordinates of `b_i · b_j`.
    pub fn structure_constant(&self, i: usize, j: usize) -> Vec<Rational> {
        self.left[i].column(j)
    }

    pub fn quiver(&self) -> Option<&QuiverInfo> {
        self.quiver.as_ref()
    }

    pub fn triangular_info(&self) -> Option<&TriangularInfo> {
        self.triangular.as_ref()
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub(crate) fn projective_cache(&self) -> &OnceLock<Vec<crate::modrep::ProjectiveData>> {
        &self.cache.projectives
    }

    /// Structural equality (up to hashing of the structure constants).
    pub fn same_as(self: &Arc<Self>, other: &Arc<Algebra>) -> bool {
        Arc::ptr_eq(self, other) || (self.dim == other.dim && self.fingerprint == other.fingerprint)
    }

    /// Left multiplication operator of an arbitrary element.
    pub fn left_mult(&self, x: &[Rational]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m.add_scaled(c, &self.left[i]);
            }
        }
        m
    }

    /// Right multiplication operator `v ↦ v · y`.
    pub fn right_mult(&self, y: &[Rational]) -> Matrix {
        let cols: Vec<Vec<Rational>> = (0..self.dim).map(|i| self.left[i].mul_vec(y)).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = zero_vec(self.dim);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                let col = self.left[i].mul_vec(y);
                axpy(&mut out, c, &col);
            }
        }
        out
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Rational> {
        unit_vec(self.dim, i)
    }

    /// Basis of the Jacobson radical: the kernel of the trace form
    /// `⟨x, y⟩ = tr(L_{xy})`.
    pub fn radical(&self) -> &[Vec<Rational>] {
        self.cache.radical.get_or_init(|| {
            let traces: Vec<Rational> = self.left.iter().map(Matrix::trace).collect();
            let mut gram = Matrix::zeros(self.dim, self.dim);
            for i in 0..self.dim {
                // row i of the Gram matrix is t^T L_i
                for j in 0..self.dim {
                    let mut s = Rational::zero();
                    for (k, t) in traces.iter().enumerate() {
                        let c = &self.left[i][(k, j)];
                        if !c.is_zero() && !t.is_zero() {
                            s += c * t;
                        }
                    }
                    gram[(i, j)] = s;
                }
            }
            gram.kernel_basis()
        })
    }

    /// Basis indices that generate the algebra (with the unit), chosen
    /// greedily in basis order.
    pub fn generators(&self) -> &[usize] {
        self.cache.generators.get_or_init(|| {
            let mut rr = RowReducer::new(self.dim);
            let mut span: Vec<Vec<Rational>> = Vec::new();
            let mut gens: Vec<usize> = Vec::new();
            if rr.insert(self.unit.clone()) {
                span.push(self.unit.clone());
            }
            for i in 0..self.dim {
                if rr.rank() == self.dim {
                    break;
                }
                let bi = self.basis_vec(i);
                if rr.contains(&bi) {
                    continue;
                }
                gens.push(i);
                // old span vectors only need the new generator; new vectors need all
                let mut queue: Vec<(Vec<Rational>, bool)> = span.iter().map(|v| (v.clone(), false)).collect();
                if rr.insert(bi.clone()) {
                    span.push(bi.clone());
                    queue.push((bi, true));
                }
                while let Some((v, fresh)) = queue.pop() {
                    let mults: Vec<usize> = if fresh { gens.clone() } else { vec![i] };
                    for g in mults {
                        let w = self.mul(&v, &self.basis_vec(g));
                        if rr.insert(w.clone()) {
                            span.push(w.clone());
                            queue.push((w, true));
                        }
                    }
                }
            }
            gens
        })
    }

    /// Basis elements `b` with `b² = b ≠ 0`.
    pub fn idempotent_basis(&self) -> &[usize] {
        self.cache.idempotent_basis.get_or_init(|| {
            (0..self.dim)
                .filter(|&i| {
                    let b = self.basis_vec(i);
                    self.mul(&b, &b) == b
                })
                .collect()
        })
    }

    /// A complete set of orthogonal primitive idempotents (summing to 1),
    /// and whether every one of them was certified local.
    pub fn primitive_idempotents(&self) -> (&[Vec<Rational>], bool) {
        let (v, ok) = self.cache.primitive.get_or_init(|| self.compute_primitive_idempotents());
        (v, *ok)
    }

    fn corner_basis(&self, e: &[Rational], f: &[Rational], src: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let mut rr = RowReducer::new(self.dim);
        for x in src {
            rr.insert(self.mul(&self.mul(e, x), f));
        }
        rr.basis()
    }

    /// `dim eAf − dim e·rad·f`.
    pub(crate) fn corner_top_dim(&self, e: &[Rational], f: &[Rational]) -> usize {
        let all: Vec<Vec<Rational>> = (0..self.dim).map(|i| self.basis_vec(i)).collect();
        let full = self.corner_basis(e, f, &all).len();
        let rad = self.corner_basis(e, f, self.radical()).len();
        full - rad
    }

    fn compute_primitive_idempotents(&self) -> (Vec<Vec<Rational>>, bool) {
        let mut stack = vec![self.unit.clone()];
        let mut out = Vec::new();
        let mut certified = true;
        let mut rng_state: u64 = 0x9e37_79b9_7f4a_7c15;
        while let Some(e) = stack.pop() {
            if is_zero_vec(&e) {
                continue;
            }
            if self.corner_top_dim(&e, &e) == 1 {
                out.push(e);
                continue;
            }
            // basis idempotents lying in eAe split off directly
            let mut split = None;
            for &k in self.idempotent_basis() {
                let b = self.basis_vec(k);
                if b != e && self.mul(&e, &b) == b && self.mul(&b, &e) == b {
                    let rest: Vec<Rational> = e.iter().zip(&b).map(|(x, y)| x - y).collect();
                    split = Some((b, rest));
                    break;
                }
            }
            if split.is_none() {
                split = self.fitting_split_idempotent(&e, &mut rng_state);
            }
            match split {
                Some((e1, e2)) => {
                    // push in reverse so the first piece is processed first
                    stack.push(e2);
                    stack.push(e1);
                }
                None => {
                    certified = false;
                    out.push(e);
                }
            }
        }
        (out, certified)
    }

    /// Splits `e` via a Fitting decomposition of `Ae` under right
    /// multiplication by an element of `eAe`.
    fn fitting_split_idempotent(&self, e: &[Rational], rng: &mut u64) -> Option<(Vec<Rational>, Vec<Rational>)> {
        let all: Vec<Vec<Rational>> = (0..self.dim).map(|i| self.basis_vec(i)).collect();
        let corner = self.corner_basis(e, e, &all);
        // Ae as columns of the right-multiplication operator by e
        let ae = self.right_mult(e).column_space();
        let left_inv = ae.left_inverse()?;
        let d = ae.cols();
        let mut candidates: Vec<Vec<Rational>> = corner.clone();
        for c in &corner {
            candidates.push(c.iter().zip(e).map(|(x, y)| x - y).collect());
        }
        for a in &corner {
            for b in &corner {
                candidates.push(self.mul(a, b));
            }
        }
        for _ in 0..16 {
            let mut v = zero_vec(self.dim);
            for c in &corner {
                *rng ^= *rng << 13;
                *rng ^= *rng >> 7;
                *rng ^= *rng << 17;
                let coeff = crate::exactla::int((*rng % 11) as i64 - 5);
                axpy(&mut v, &coeff, c);
            }
            candidates.push(v);
        }
        for c in candidates {
            let rc = &(&left_inv * &self.right_mult(&c)) * &ae;
            let psi = rc.pow(d as u32);
            let ker = psi.kernel_matrix();
            if ker.cols() == 0 || ker.cols() == d {
                continue;
            }
            let im = psi.column_space();
            let im_a = &ae * &im;
            let ker_a = &ae * &ker;
            let both = Matrix::hstack(self.dim, &[&im_a, &ker_a]);
            let coeffs = both.solve(e).ok()??;
            let (ci, ck) = coeffs.split_at(im_a.cols());
            let e1 = im_a.mul_vec(ci);
            let e2 = ker_a.mul_vec(ck);
            return Some((e1, e2));
        }
        None
    }

    /// The opposite algebra; `a.opposite().opposite()` is `a` itself.
    pub fn opposite(self: &Arc<Self>) -> Arc<Algebra> {
        if let Some(orig) = self.cache.opposite_of.get().and_then(Weak::upgrade) {
            return orig;
        }
        self.cache
            .opposite
            .get_or_init(|| {
                let left: Vec<Matrix> = (0..self.dim)
                    .map(|i| {
                        // L'_i e_j = b_j b_i = column i of L_j
                        let cols: Vec<Vec<Rational>> = (0..self.dim).map(|j| self.left[j].column(i)).collect();
                        Matrix::from_columns(self.dim, &cols)
                    })
                    .collect();
                let name = match self.name.strip_suffix("^op") {
                    Some(base) => base.to_string(),
                    None => format!("{}^op", self.name),
                };
                let op = Arc::new(Algebra::build(name, self.labels.clone(), left, self.unit.clone(), None, None));
                let _ = op.cache.opposite_of.set(Arc::downgrade(self));
                op
            })
            .clone()
    }
}

/// Verifies that `m` (columns = images of the basis of `a` in coordinates of
/// `b`) is an algebra isomorphism `a → b`.
pub fn is_algebra_isomorphism(a: &Algebra, b: &Algebra, m: &Matrix) -> bool {
    if a.dim() != b.dim() || m.rows() != b.dim() || m.cols() != a.dim() {
        return false;
    }
    if m.rank() != a.dim() {
        return false;
    }
    if m.mul_vec(a.unit()) != b.unit() {
        return false;
    }
    let images: Vec<Vec<Rational>> = (0..a.dim()).map(|i| m.column(i)).collect();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = m.mul_vec(&a.structure_constant(i, j));
            let rhs = b.mul(&images[i], &images[j]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// `T_n(a)`: upper triangular `n × n` matrices over `a`.
pub fn triangular_algebra(a: &Arc<Algebra>, n: usize) -> Result<Arc<Algebra>> {
    if n == 0 {
        return Err(Error::input("triangular_algebra needs n ≥ 1"));
    }
    let mut memo = a.cache.triangular.lock().expect("triangular memo poisoned");
    if let Some(t) = memo.get(&n).and_then(Weak::upgrade) {
        return Ok(t);
    }
    let d = a.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let dim = pairs.len() * d;
    let mut labels = Vec::with_capacity(dim);
    for &(i, j) in &pairs {
        for l in a.labels() {
            if n < 10 {
                labels.push(format!("e{}{}.{}", i + 1, j + 1, l));
            } else {
                labels.push(format!("e{},{}.{}", i + 1, j + 1, l));
            }
        }
    }
    let mut left = Vec::with_capacity(dim);
    for &(i, j) in &pairs {
        for k in 0..d {
            let mut m = Matrix::zeros(dim, dim);
            for l in j..n {
                // (e_ij ⊗ b_k)(e_jl ⊗ b_m) = e_il ⊗ b_k b_m
                let src = tri_index(n, d, j, l, 0);
                let dst = tri_index(n, d, i, l, 0);
                let lk = a.left(k);
                for mm in 0..d {
                    for r in 0..d {
                        let c = &lk[(r, mm)];
                        if !c.is_zero() {
                            m[(dst + r, src + mm)] = c.clone();
                        }
                    }
                }
            }
            left.push(m);
        }
    }
    let mut unit = zero_vec(dim);
    for i in 0..n {
        let base = tri_index(n, d, i, i, 0);
        for (k, u) in a.unit().iter().enumerate() {
            unit[base + k] = u.clone();
        }
    }
    let name = format!("T{}({})", n, a.name());
    let t = Arc::new(Algebra::build(name, labels, left, unit, None, Some(TriangularInfo { base: a.clone(), n })));
    memo.insert(n, Arc::downgrade(&t));
    Ok(t)
}

pub fn opposite(a: &Arc<Algebra>) -> Arc<Algebra> {
    a.opposite()
}

pub fn radical(a: &Algebra) -> Vec<Vec<Rational>> {
    a.radical().to_vec()
}

pub fn path_algebra(q: &QuiverPresentation) -> Result<Arc<Algebra>> {
    path_algebra_with_cap("A", q, DEFAULT_PATH_CAP)
}

struct ResolvedQuiver {
    ends: Vec<(usize, usize)>,
    /// uniform relation components: (source, target, terms)
    relations: Vec<(usize, usize, Vec<(Rational, Vec<usize>)>)>,
}

fn resolve_quiver(q: &QuiverPresentation) -> Result<ResolvedQuiver> {
    let mut vidx = BTreeMap::new();
    for (i, v) in q.vertices.iter().enumerate() {
        if vidx.insert(v.clone(), i).is_some() {
            return Err(Error::input(format!("duplicate vertex {v:?}")));
        }
    }
    let mut aidx = BTreeMap::new();
    let mut ends = Vec::new();
    for (i, (name, s, t)) in q.arrows.iter().enumerate() {
        if aidx.insert(name.clone(), i).is_some() {
            return Err(Error::input(format!("duplicate arrow {name:?}")));
        }
        let s = *vidx.get(s).ok_or_else(|| Error::input(format!("arrow {name}: unknown source {s:?}")))?;
        let t = *vidx.get(t).ok_or_else(|| Error::input(format!("arrow {name}: unknown target {t:?}")))?;
        ends.push((s, t));
    }
    let mut comps: BTreeMap<(usize, usize, usize), Vec<(Rational, Vec<usize>)>> = BTreeMap::new();
    for (ri, rel) in q.relations.iter().enumerate() {
        for (coeff, path) in rel {
            if path.len() < 2 {
                return Err(Error::input(format!("relation {ri}: path {path:?} has length < 2")));
            }
            let mut arrows = Vec::new();
            for a in path {
                arrows.push(*aidx.get(a).ok_or_else(|| Error::input(format!("relation {ri}: unknown arrow {a:?}")))?);
            }
            for w in arrows.windows(2) {
                if ends[w[0]].1 != ends[w[1]].0 {
                    return Err(Error::input(format!("relation {ri}: path {path:?} is not composable")));
                }
            }
            let s = ends[arrows[0]].0;
            let t = ends[*arrows.last().unwrap()].1;
            if !coeff.is_zero() {
                comps.entry((ri, s, t)).or_default().push((coeff.clone(), arrows));
            }
        }
    }
    let relations = comps.into_iter().map(|((_, s, t), terms)| (s, t, terms)).collect();
    Ok(ResolvedQuiver { ends, relations })
}

/// All paths of length `< max_len`, ordered by length, then by extension order.
fn enumerate_paths(nv: usize, ends: &[(usize, usize)], max_len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = (0..nv).map(|v| Path { source: v, target: v, arrows: vec![] }).collect();
    if max_len <= 1 {
        return out;
    }
    let mut frontier: Vec<Path> = Vec::new();
    for (a, &(s, t)) in ends.iter().enumerate() {
        frontier.push(Path { source: s, target: t, arrows: vec![a] });
    }
    let mut len = 1;
    while len < max_len && !frontier.is_empty() {
        out.extend(frontier.iter().cloned());
        let mut next = Vec::new();
        if len + 1 < max_len {
            for p in &frontier {
                for (a, &(s, t)) in ends.iter().enumerate() {
                    if s == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(a);
                        next.push(Path { source: p.source, target: t, arrows });
                    }
                }
            }
        }
        frontier = next;
        len += 1;
    }
    out
}

fn path_label(q: &QuiverPresentation, p: &Path) -> String {
    if p.is_trivial() {
        format!("e{}", q.vertices[p.source])
    } else {
        let names: Vec<&str> = p.arrows.iter().rev().map(|&a| q.arrows[a].0.as_str()).collect();
        names.join("*")
    }
}

/// Path algebra of a bound quiver, with an explicit cap on path length.
///
/// The relations are read in the arrow-ideal-adic sense: the ideal is
/// saturated inside `kQ / R^L` and the cap `L` is raised until every path of
/// length `L - 1` lies in it. For admissible ideals (in particular any
/// homogeneous one) this is exactly `kQ / I`.
pub fn path_algebra_with_cap(name: &str, q: &QuiverPresentation, cap: usize) -> Result<Arc<Algebra>> {
    let rq = resolve_quiver(q)?;
    let nv = q.vertices.len();
    for big_l in 2..=cap.max(2) + 1 {
        let paths = enumerate_paths(nv, &rq.ends, big_l);
        let index: HashMap<(usize, Vec<usize>), usize> =
            paths.iter().enumerate().map(|(i, p)| ((p.source, p.arrows.clone()), i)).collect();
        // columns ordered longest-first so that pivots land on long paths
        let mut order: Vec<usize> = (0..paths.len()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(paths[i].len()), i));
        let mut col_of = vec![0; paths.len()];
        for (c, &i) in order.iter().enumerate() {
            col_of[i] = c;
        }
        let ncols = paths.len();
        let mut rr = RowReducer::new(ncols);
        for (s, t, terms) in &rq.relations {
            let min_len = terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0);
            for v in paths.iter().filter(|p| p.target == *s) {
                for u in paths.iter().filter(|p| p.source == *t) {
                    if v.len() + u.len() + min_len >= big_l {
                        continue;
                    }
                    let mut row = zero_vec(ncols);
                    for (c, p) in terms {
                        if v.len() + p.len() + u.len() >= big_l {
                            continue;
                        }
                        let mut arrows = v.arrows.clone();
                        arrows.extend_from_slice(p);
                        arrows.extend_from_slice(&u.arrows);
                        let key = (v.source, arrows);
                        let i = index[&key];
                        row[col_of[i]] += c;
                    }
                    rr.insert(row);
                }
            }
        }
        let top: Vec<usize> = (0..paths.len()).filter(|&i| paths[i].len() == big_l - 1).collect();
        let mut stuck = None;
        for &i in &top {
            let mut v = zero_vec(ncols);
            v[col_of[i]] = Rational::one();
            rr.reduce(&mut v);
            if !is_zero_vec(&v) {
                stuck = Some(i);
                break;
            }
        }
        if let Some(i) = stuck {
            if big_l > cap {
                let p = &paths[i];
                let verts: Vec<&str> = std::iter::once(p.source)
                    .chain(p.arrows.iter().map(|&a| rq.ends[a].1))
                    .map(|v| q.vertices[v].as_str())
                    .collect();
                return Err(Error::input(format!(
                    "quotient is not finite-dimensional within path length cap {cap}: \
                     path through vertices {} keeps growing",
                    verts.join(" -> ")
                )));
            }
            continue;
        }
        // quotient basis: non-pivot paths, in enumeration order
        let pivots: std::collections::BTreeSet<usize> = rr.pivots().into_iter().collect();
        let basis: Vec<usize> =
            (0..paths.len()).filter(|&i| paths[i].len() < big_l - 1 && !pivots.contains(&col_of[i])).collect();
        let dim = basis.len();
        let coord_of_col: HashMap<usize, usize> = basis.iter().enumerate().map(|(k, &i)| (col_of[i], k)).collect();
        let reduce_path = |src: usize, arrows: &[usize]| -> Vec<Rational> {
            let mut out = zero_vec(dim);
            if arrows.len() >= big_l - 1 {
                return out;
            }
            let i = index[&(src, arrows.to_vec())];
            let mut v = zero_vec(ncols);
            v[col_of[i]] = Rational::one();
            rr.reduce(&mut v);
            for (c, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    out[coord_of_col[&c]] = x.clone();
                }
            }
            out
        };
        let basis_paths: Vec<Path> = basis.iter().map(|&i| paths[i].clone()).collect();
        let mut left = Vec::with_capacity(dim);
        for pi in &basis_paths {
            let cols: Vec<Vec<Rational>> = basis_paths
                .iter()
                .map(|pj| {
                    // b_i · b_j: first pj, then pi
                    if pj.target != pi.source {
                        return zero_vec(dim);
                    }
                    let mut arrows = pj.arrows.clone();
                    arrows.extend_from_slice(&pi.arrows);
                    reduce_path(pj.source, &arrows)
                })
                .collect();
            left.push(Matrix::from_columns(dim, &cols));
        }
        let mut unit = zero_vec(dim);
        for (k, p) in basis_paths.iter().enumerate() {
            if p.is_trivial() {
                unit[k] = Rational::one();
            }
        }
        let labels = basis_paths.iter().map(|p| path_label(q, p)).collect();
        let info = QuiverInfo { presentation: q.clone(), arrow_ends: rq.ends.clone(), basis_paths };
        return Ok(Arc::new(Algebra::build(name.to_string(), labels, left, unit, Some(info), None)));
    }
    unreachable!("loop returns or errors")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;

    fn quiver(vs: &[&str], arrows: &[(&str, &str, &str)], rels: Vec<Vec<(i64, Vec<&str>)>>) -> QuiverPresentation {
        QuiverPresentation {
            vertices: vs.iter().map(|s| s.to_string()).collect(),
            arrows: arrows.iter().map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string())).collect(),
            relations: rels
                .into_iter()
                .map(|r| r.into_iter().map(|(c, p)| (int(c), p.into_iter().map(String::from).collect())).collect())
                .collect(),
        }
    }

    fn ka2() -> Arc<Algebra> {
        path_algebra(&quiver(&["1", "2"], &[("a", "1", "2")], vec![])).unwrap()
    }

    fn lambda2() -> Arc<Algebra> {
        path_algebra(&quiver(&["1"], &[("x", "1", "1")], vec![vec![(1, vec!["x", "x"])]])).unwrap()
    }

    #[test]
    fn tri_index_is_a_bijection() {
        for n in 1..5 {
            let mut seen = std::collections::BTreeSet::new();
            for i in 0..n {
                for j in i..n {
                    assert!(seen.insert(tri_pair(n, i, j)));
                }
            }
            assert_eq!(seen.into_iter().collect::<Vec<_>>(), (0..n * (n + 1) / 2).collect::<Vec<_>>());
        }
    }

    #[test]
    fn path_algebra_dimensions() {
        let a = ka2();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.labels(), &["e1", "e2", "a"]);
        assert_eq!(lambda2().dim(), 2);
        let sq = quiver(
            &["1", "2", "3", "4"],
            &[("alpha", "1", "2"), ("beta", "2", "4"), ("gamma", "1", "3"), ("delta", "3", "4")],
            vec![vec![(1, vec!["alpha", "beta"]), (-1, vec!["gamma", "delta"])]],
        );
        assert_eq!(path_algebra(&sq).unwrap().dim(), 9);
    }

    #[test]
    fn composition_convention() {
        // a · e1 = a and e1 · a = 0: e1 is where a starts
        let a = ka2();
        let e1 = a.basis_vec(0);
        let arr = a.basis_vec(2);
        assert_eq!(a.mul(&arr, &e1), arr);
        assert!(is_zero_vec(&a.mul(&e1, &arr)));
        let op = a.opposite();
        assert_eq!(op.mul(&e1, &arr), arr);
    }

    #[test]
    fn infinite_quotient_is_rejected() {
        let q = quiver(&["1"], &[("x", "1", "1")], vec![]);
        let err = path_algebra_with_cap("loop", &q, 6).unwrap_err();
        assert!(err.to_string().contains("1 -> 1"));
    }

    #[test]
    fn radical_examples() {
        assert!(radical(
            &Algebra::from_structure_constants(
                "QxQ",
                None,
                vec![
                    vec![vec![int(1), int(0)], vec![int(0), int(0)]],
                    vec![vec![int(0), int(0)], vec![int(0), int(1)]]
                ],
                vec![int(1), int(1)],
            )
            .unwrap()
        )
        .is_empty());
        assert_eq!(radical(&lambda2()), vec![vec![int(0), int(1)]]);
        assert_eq!(radical(&ka2()), vec![vec![int(0), int(0), int(1)]]);
    }

    #[test]
    fn triangular_dimensions_and_axioms() {
        for a in [ka2(), lambda2()] {
            for n in 1..=3 {
                let t = triangular_algebra(&a, n).unwrap();
                assert_eq!(t.dim(), n * (n + 1) / 2 * a.dim());
                t.check_axioms().unwrap();
            }
        }
    }

    #[test]
    fn t1_is_the_base_algebra() {
        let a = ka2();
        let t = triangular_algebra(&a, 1).unwrap();
        assert!(is_algebra_isomorphism(&a, &t, &Matrix::identity(3)));
    }

    #[test]
    fn t3_of_rationals_is_the_a3_path_algebra() {
        let q = Algebra::from_structure_constants("Q", Some(vec!["1".into()]), vec![vec![vec![int(1)]]], vec![int(1)])
            .unwrap();
        let t = triangular_algebra(&q, 3).unwrap();
        let p = path_algebra(&quiver(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], vec![])).unwrap();
        // vertex 1 ↦ e33, 2 ↦ e22, 3 ↦ e11, a ↦ e23, b ↦ e12, b*a ↦ e13
        let info = t.triangular_info().unwrap();
        let target = |i: usize, j: usize| info.index(i, j, 0);
        let images = [target(2, 2), target(1, 1), target(0, 0), target(1, 2), target(0, 1), target(0, 2)];
        assert_eq!(p.labels(), &["e1", "e2", "e3", "a", "b", "b*a"]);
        let cols: Vec<Vec<Rational>> = images.iter().map(|&k| unit_vec(6, k)).collect();
        assert!(is_algebra_isomorphism(&p, &t, &Matrix::from_columns(6, &cols)));
    }

    #[test]
    fn opposite_is_involutive() {
        let a = ka2();
        let op = a.opposite();
        assert!(Arc::ptr_eq(&op.opposite(), &a));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(op.structure_constant(i, j), a.structure_constant(j, i));
            }
        }
        let l = lambda2();
        let lop = l.opposite();
        for i in 0..2 {
            assert_eq!(lop.left(i), l.left(i));
        }
    }

    #[test]
    fn primitive_idempotents_of_path_algebras() {
        let a = ka2();
        let (ids, ok) = a.primitive_idempotents();
        assert!(ok);
        assert_eq!(ids.len(), 2);
        let t = triangular_algebra(&a, 2).unwrap();
        let (ids, ok) = t.primitive_idempotents();
        assert!(ok);
        assert_eq!(ids.len(), 4);
        let mut sum = zero_vec(t.dim());
        for e in ids {
            assert_eq!(&t.mul(e, e), e);
            axpy(&mut sum, &int(1), e);
        }
        assert_eq!(sum, t.unit());
    }

    #[test]
    fn primitive_idempotents_without_basis_idempotents() {
        // Q×Q written in the basis {1, e}: no basis element except 1 is idempotent... e is.
        // Use the basis {1, 2e - 1} where neither non-unit element is idempotent.
        // (2e-1)^2 = 1
        let a = Algebra::from_structure_constants(
            "QxQ'",
            None,
            vec![vec![vec![int(1), int(0)], vec![int(0), int(1)]], vec![vec![int(0), int(1)], vec![int(1), int(0)]]],
            vec![int(1), int(0)],
        )
        .unwrap();
        let (ids, ok) = a.primitive_idempotents();
        assert!(ok);
        assert_eq!(ids.len(), 2);
    }

    #[test]
    fn remark_quiver_is_t2_ka2() {
        let sq = quiver(
            &["1", "2", "3", "4"],
            &[("alpha", "1", "2"), ("beta", "2", "4"), ("gamma", "1", "3"), ("delta", "3", "4")],
            vec![vec![(1, vec!["alpha", "beta"]), (-1, vec!["gamma", "delta"])]],
        );
        let p = path_algebra(&sq).unwrap();
        let t = triangular_algebra(&ka2(), 2).unwrap();
        let info = t.triangular_info().unwrap();
        // vertices: 1 ↦ e22⊗e1, 2 ↦ e22⊗e2, 3 ↦ e11⊗e1, 4 ↦ e11⊗e2
        // arrows: alpha ↦ e22⊗a, beta ↦ e12⊗e2, gamma ↦ e12⊗e1, delta ↦ e11⊗a
        let mut gens: BTreeMap<String, Vec<Rational>> = BTreeMap::new();
        let ix = |i, j, k| unit_vec(9, info.index(i, j, k));
        gens.insert("e1".into(), ix(1, 1, 0));
        gens.insert("e2".into(), ix(1, 1, 1));
        gens.insert("e3".into(), ix(0, 0, 0));
        gens.insert("e4".into(), ix(0, 0, 1));
        gens.insert("alpha".into(), ix(1, 1, 2));
        gens.insert("beta".into(), ix(0, 1, 1));
        gens.insert("gamma".into(), ix(0, 1, 0));
        gens.insert("delta".into(), ix(0, 0, 2));
        let qi = p.quiver().unwrap();
        let cols: Vec<Vec<Rational>> = qi
            .basis_paths
            .iter()
            .map(|path| {
                if path.is_trivial() {
                    gens[&format!("e{}", qi.presentation.vertices[path.source])].clone()
                } else {
                    let mut acc = gens[&qi.presentation.arrows[path.arrows[0]].0].clone();
                    for &a in &path.arrows[1..] {
                        acc = t.mul(&gens[&qi.presentation.arrows[a].0], &acc);
                    }
                    acc
                }
            })
            .collect();
        assert!(is_algebra_isomorphism(&p, &t, &Matrix::from_columns(9, &cols)));
    }

    #[test]
    fn radical_is_a_nilpotent_ideal() {
        for a in [ka2(), lambda2(), triangular_algebra(&ka2(), 2).unwrap(), triangular_algebra(&lambda2(), 3).unwrap()]
        {
            let rad = radical(&a);
            let mut rr = RowReducer::new(a.dim());
            for r in &rad {
                rr.insert(r.clone());
            }
            for r in &rad {
                for i in 0..a.dim() {
                    let b = a.basis_vec(i);
                    assert!(rr.contains(&a.mul(&b, r)));
                    assert!(rr.contains(&a.mul(r, &b)));
                }
            }
            // products of dim(a) radical elements vanish
            let mut power: Vec<Vec<Rational>> = rad.clone();
            for _ in 0..a.dim() {
                let mut next = RowReducer::new(a.dim());
                for x in &power {
                    for r in &rad {
                        next.insert(a.mul(x, r));
                    }
                }
                power = next.basis();
            }
            assert!(power.is_empty());
        }
    }
}
