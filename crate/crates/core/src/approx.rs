//! Right minimal `S_n`-approximations via `rMon`, and checks for the
//! approximation and minimality properties.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{span_rank, Matrix, Rational, RowReducer};
use crate::fintype::end_algebra;
use crate::modrep::{direct_sum, hom_dim, hom_matrices, injective_envelope, kernel, Module, ModuleMap};
use crate::morcat::{mor_dual, mor_dual_map, mor_kernel, MorMap, MorObject};

/// Envelope data for one connecting map.
#[derive(Clone, Debug)]
pub struct IKer {
    /// `Ker φ_i ↪ X_{i+1}`
    pub kernel_incl: ModuleMap,
    /// `e'_i: Ker φ_i → IKer φ_i`
    pub envelope: ModuleMap,
    /// `e_i: X_{i+1} → IKer φ_i`, restricting to `e'_i`.
    pub extension: ModuleMap,
}

#[derive(Clone, Debug)]
pub struct RMonResult {
    pub input: MorObject,
    pub ikers: Vec<IKer>,
    pub output: MorObject,
    /// The projection `rMon(X) → X`.
    pub counit: MorMap,
    pub kernel: MorObject,
    pub kernel_incl: MorMap,
}

/// `rMon(x)` with the deterministic choice of extensions.
pub fn rmon(x: &MorObject) -> Result<RMonResult> {
    rmon_with_choice(x, None)
}

/// `rMon(x)`; with `Some(seed)` each extension `e_i` is perturbed by a seeded
/// element of `Hom(X_{i+1}, IKer φ_i)` vanishing on `Ker φ_i`.
pub fn rmon_with_choice(x: &MorObject, perturb: Option<u64>) -> Result<RMonResult> {
    let a = x.algebra();
    let n = x.n();
    let mut rng = ChaCha8Rng::seed_from_u64(perturb.unwrap_or(0));
    let mut ikers = Vec::with_capacity(n - 1);
    for i in 1..n {
        let (k, incl) = kernel(x.phi(i));
        let env = injective_envelope(&k)?.map;
        let extension = extend(&incl, &env, perturb.map(|_| &mut rng))?;
        ikers.push(IKer { kernel_incl: incl, envelope: env, extension });
    }
    let ik: Vec<Module> = ikers.iter().map(|d| d.envelope.target.clone()).collect();
    // Y_i = X_i ⊕ IKer_i ⊕ … ⊕ IKer_{n-1}
    let mut branches = Vec::with_capacity(n);
    for i in 1..=n {
        let mut parts = vec![x.branch(i).clone()];
        parts.extend(ik[i - 1..].iter().cloned());
        branches.push(direct_sum(a, &parts)?.module);
    }
    let mut phi = Vec::with_capacity(n - 1);
    for i in 1..n {
        let (src, tgt) = (&branches[i], &branches[i - 1]);
        let mut m = Matrix::zeros(tgt.dim(), src.dim());
        let xi = x.branch(i).dim();
        let xi1 = x.branch(i + 1).dim();
        m.set_block(0, 0, &x.phi(i).matrix);
        m.set_block(xi, 0, &ikers[i - 1].extension.matrix);
        let tail = src.dim() - xi1;
        m.set_block(xi + ik[i - 1].dim(), xi1, &Matrix::identity(tail));
        phi.push(ModuleMap::new_unchecked(src, tgt, m));
    }
    let output = MorObject::new_unchecked(a, branches, phi);
    let mats = (1..=n)
        .map(|i| {
            let d = x.branch(i).dim();
            let mut p = Matrix::zeros(d, output.branch(i).dim());
            p.set_block(0, 0, &Matrix::identity(d));
            p
        })
        .collect();
    let counit = MorMap::new_unchecked(&output, x, mats);
    if counit.failing_square().is_some() || !output.is_monic_chain() {
        return Err(Error::internal("rMon construction produced an invalid chain"));
    }
    let (kernel, kernel_incl) = mor_kernel(&counit);
    Ok(RMonResult { input: x.clone(), ikers, output, counit, kernel, kernel_incl })
}

/// Solves `e ∘ incl = env` for an intertwiner `e`, optionally adding a
/// random map that vanishes on the image of `incl`.
fn extend(incl: &ModuleMap, env: &ModuleMap, rng: Option<&mut ChaCha8Rng>) -> Result<ModuleMap> {
    let (src, tgt) = (&incl.target, &env.target);
    if tgt.is_zero() {
        return Ok(ModuleMap::zero(src, tgt));
    }
    let basis = hom_matrices(src, tgt)?;
    let restricted: Vec<Vec<Rational>> = basis.iter().map(|h| (h * &incl.matrix).flatten()).collect();
    let sys = Matrix::from_columns(tgt.dim() * incl.source.dim(), &restricted);
    let c = sys
        .solve(&env.matrix.flatten())?
        .ok_or_else(|| Error::internal("envelope does not extend; target is not injective"))?;
    let mut m = Matrix::zeros(tgt.dim(), src.dim());
    for (h, ci) in basis.iter().zip(&c) {
        m.add_scaled(ci, h);
    }
    if let Some(rng) = rng {
        for v in sys.kernel_basis() {
            let s = Rational::from_integer(rng.gen_range(1..=3i64).into());
            for (h, ci) in basis.iter().zip(&v) {
                m.add_scaled(&(ci * &s), h);
            }
        }
    }
    Ok(ModuleMap::new_unchecked(src, tgt, m))
}

/// Verdict of an approximation check relative to a tester family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApproxVerdict {
    pub holds: bool,
    /// Index of the first tester through which some map does not factor.
    pub witness: Option<usize>,
}

/// Whether every map from each tester into `f.target` factors through `f`.
pub fn is_right_approximation_modules(f: &ModuleMap, testers: &[Module]) -> Result<ApproxVerdict> {
    for (t, y) in testers.iter().enumerate() {
        let want = hom_dim(y, &f.target)?;
        if want == 0 {
            continue;
        }
        let images: Vec<Vec<Rational>> =
            hom_matrices(y, &f.source)?.iter().map(|h| (&f.matrix * h).flatten()).collect();
        if span_rank(&images, f.target.dim() * y.dim()) != want {
            return Ok(ApproxVerdict { holds: false, witness: Some(t) });
        }
    }
    Ok(ApproxVerdict { holds: true, witness: None })
}

/// Chain version; testers are compared on the flat side.
pub fn is_right_approximation(f: &MorMap, testers: &[MorObject]) -> Result<ApproxVerdict> {
    let flats = testers.iter().map(MorObject::flat).collect::<Result<Vec<_>>>()?;
    is_right_approximation_modules(&f.flat()?, &flats)
}

/// `f` is right minimal iff `{k ∈ End(source) : f k = 0} ⊆ rad End(source)`.
pub fn is_right_minimal_module(f: &ModuleMap) -> Result<bool> {
    if f.source.is_zero() {
        return Ok(true);
    }
    let end = end_algebra(&f.source)?;
    let cols: Vec<Vec<Rational>> = end.maps.iter().map(|h| (&f.matrix * &h.matrix).flatten()).collect();
    let sys = Matrix::from_columns(f.target.dim() * f.source.dim(), &cols);
    let killed = sys.kernel_basis();
    if killed.is_empty() {
        return Ok(true);
    }
    let mut rad = RowReducer::new(end.maps.len());
    for v in end.algebra.radical() {
        rad.insert(v.clone());
    }
    Ok(killed.iter().all(|k| rad.contains(k)))
}

pub fn is_right_minimal(f: &MorMap) -> Result<bool> {
    is_right_minimal_module(&f.flat()?)
}

/// Minimal left `F_n`-approximation `x → lEpi(x)`, the dual of `rMon`.
#[derive(Clone, Debug)]
pub struct LEpiResult {
    pub output: MorObject,
    pub unit: MorMap,
}

pub fn lepi(x: &MorObject) -> Result<LEpiResult> {
    let d = mor_dual(x);
    let r = rmon(&d)?;
    let output = mor_dual(&r.output);
    let dx = mor_dual(&d);
    let unit = mor_dual_map(&r.counit, &output, &dx);
    // `dx` has the same bases as `x`, so the matrices transfer verbatim.
    let mats = unit.components.into_iter().map(|c| c.matrix).collect();
    Ok(LEpiResult { output: output.clone(), unit: MorMap::new_unchecked(x, &output, mats) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ka2, lambda};
    use crate::modrep::{hom_basis, projective, simple};
    use crate::morcat::{m_i, mor_is_isomorphic, sn_membership, SubcatSpec};
    use crate::Caps;

    fn obj(a: &std::sync::Arc<crate::algcore::Algebra>, b: Vec<Module>, phi: Vec<Matrix>) -> MorObject {
        MorObject::from_matrices(a, b, phi).unwrap()
    }

    #[test]
    fn rmon_fixes_monic_chains() {
        let a = ka2();
        let x = m_i(&projective(&a, 0), 1, 2).unwrap();
        let r = rmon(&x).unwrap();
        assert_eq!(r.output.dims(), x.dims());
        assert!(crate::morcat::is_identity_map(&r.counit));
        assert!(r.kernel.is_zero());
    }

    #[test]
    fn rmon_of_zero_map_into_simple() {
        let a = ka2();
        let x = obj(&a, vec![Module::zero(&a), simple(&a, 1)], vec![Matrix::zeros(0, 1)]);
        let r = rmon(&x).unwrap();
        let (p1, s2) = (projective(&a, 0), simple(&a, 1));
        let inc = hom_basis(&s2, &p1).unwrap().remove(0);
        let sigma = MorObject::new(&a, vec![p1, s2], vec![inc]).unwrap();
        assert!(mor_is_isomorphic(&r.output, &sigma, 0).unwrap().is_some());
        assert!(r.counit.is_surjective());
        assert!(is_right_minimal(&r.counit).unwrap());
        let all = SubcatSpec::All.compile(Caps::default(), 0).unwrap();
        assert!(sn_membership(&r.output, &all).unwrap().member);
        assert!(sn_membership(&r.kernel, &all).unwrap().member);
    }

    #[test]
    fn rmon_over_lambda2() {
        let l = lambda(2);
        let s = simple(&l, 0);
        let x = obj(&l, vec![Module::zero(&l), s.clone()], vec![Matrix::zeros(0, 1)]);
        let r = rmon(&x).unwrap();
        assert_eq!(r.output.dims(), vec![2, 1]);
        assert!(r.output.phi(1).is_injective());
        let alt = rmon_with_choice(&x, Some(7)).unwrap();
        assert!(mor_is_isomorphic(&r.output, &alt.output, 0).unwrap().is_some());
    }

    #[test]
    fn approximation_checks() {
        let a = ka2();
        let x = m_i(&simple(&a, 0), 2, 2).unwrap();
        let id = MorMap::identity(&x);
        assert!(is_right_approximation(&id, std::slice::from_ref(&x)).unwrap().holds);
        assert!(is_right_minimal(&id).unwrap());
        let z = MorMap::zero(&x, &x);
        assert!(!is_right_approximation(&z, std::slice::from_ref(&x)).unwrap().holds);
        // f ⊕ (Z → 0) is not right minimal
        let s = crate::morcat::mor_direct_sum(&a, &[x.clone(), x.clone()]).unwrap();
        let f = s.projections[0].clone();
        assert!(is_right_approximation(&f, std::slice::from_ref(&x)).unwrap().holds);
        assert!(!is_right_minimal(&f).unwrap());
    }

    #[test]
    fn lepi_of_simple_top() {
        let a = ka2();
        let x = m_i(&simple(&a, 0), 1, 2).unwrap();
        let l = lepi(&x).unwrap();
        assert!(l.output.is_epic_chain());
        assert!(l.unit.failing_square().is_none());
        let y = m_i(&simple(&a, 0), 2, 2).unwrap();
        let ly = lepi(&y).unwrap();
        assert!(crate::morcat::is_identity_map(&ly.unit));
    }
}
