//! Cohen-Macaulay and Gorenstein-projective modules over `T_n(A)`, and the
//! self-injectivity test through monomorphism categories.
//!
//! Gorenstein-projective membership is decided only over Gorenstein
//! algebras, where it coincides with `^⊥A`. Other algebras are refused as
//! inconclusive.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algcore::{triangular_algebra, Algebra};
use crate::cotilt::{Catalog, ComparisonReport, TableRow};
use crate::error::{Error, Result};
use crate::modrep::{inj_dim, injective_cogenerator, regular_module, DimBound, Module};
use crate::morcat::{fn_membership, in_perp_left, in_perp_right, m_i, mor_dual, sn_membership, MorObject, SubcatSpec};
use crate::Caps;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GorensteinProfile {
    pub algebra: String,
    /// `inj.dim _AA`.
    pub left_selfinj_dim: DimBound,
    /// `inj.dim A_A`.
    pub right_selfinj_dim: DimBound,
    pub is_gorenstein: bool,
    pub is_selfinjective: bool,
}

pub fn profile(a: &Arc<Algebra>, cap: usize) -> Result<GorensteinProfile> {
    let left = inj_dim(&regular_module(a), cap)?;
    let right = inj_dim(&regular_module(&a.opposite()), cap)?;
    Ok(GorensteinProfile {
        algebra: a.name().to_string(),
        left_selfinj_dim: left,
        right_selfinj_dim: right,
        is_gorenstein: left.is_finite() && right.is_finite(),
        is_selfinjective: left == DimBound::Finite(0) && right == DimBound::Finite(0),
    })
}

/// `x ∈ CM(A) = ^⊥A`.
pub fn cm_membership(x: &Module, cap: usize) -> Result<bool> {
    let a = regular_module(x.algebra());
    in_perp_left(x, &a, inj_dim(&a, cap)?, cap)
}

/// `x ∈ CoCM(A) = D(A_A)^⊥`.
pub fn cocm_membership(x: &Module, cap: usize) -> Result<bool> {
    let d = injective_cogenerator(x.algebra());
    in_perp_right(x, &d, crate::modrep::proj_dim(&d, cap)?, cap)
}

fn require_gorenstein(a: &Arc<Algebra>, cap: usize) -> Result<()> {
    if profile(a, cap)?.is_gorenstein {
        Ok(())
    } else {
        Err(Error::inconclusive(format!(
            "{} is not Gorenstein within the cap; Gorenstein-projectivity is only decided through CM",
            a.name()
        )))
    }
}

/// Gorenstein-projective membership over a Gorenstein algebra.
pub fn gproj_membership(x: &Module, cap: usize) -> Result<bool> {
    require_gorenstein(x.algebra(), cap)?;
    cm_membership(x, cap)
}

/// Gorenstein-injective membership over a Gorenstein algebra.
pub fn ginj_membership(x: &Module, cap: usize) -> Result<bool> {
    require_gorenstein(x.algebra(), cap)?;
    cocm_membership(x, cap)
}

fn table<F, G>(catalog: &Catalog, lhs: F, rhs: G) -> Result<ComparisonReport>
where
    F: Fn(&MorObject) -> Result<bool> + Sync,
    G: Fn(&MorObject) -> Result<bool> + Sync,
{
    let rows = catalog
        .objects
        .par_iter()
        .enumerate()
        .map(|(k, x)| Ok(TableRow { index: k, name: catalog.names[k].clone(), lhs: lhs(x)?, rhs: rhs(x)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonReport::from_rows(rows))
}

fn chains(catalog: &Catalog, n: usize) -> Result<()> {
    match catalog.n {
        Some(m) if m == n => Ok(()),
        _ => Err(Error::input(format!("expected a catalog of chains of length {n}"))),
    }
}

/// `CM(T_n(A))` against `S_n(CM(A))`.
pub fn cm_reciprocity(
    a: &Arc<Algebra>,
    n: usize,
    catalog: &Catalog,
    caps: Caps,
    seed: u64,
) -> Result<ComparisonReport> {
    chains(catalog, n)?;
    if !inj_dim(&regular_module(&a.opposite()), caps.res)?.is_finite() {
        return Err(Error::input("missing hypothesis: inj.dim A_A is not finite within the cap"));
    }
    let spec = SubcatSpec::PerpLeft(regular_module(a)).compile(caps, seed)?;
    table(catalog, |x| cm_membership(&x.flat()?, caps.res), |x| Ok(sn_membership(x, &spec)?.member))
}

#[derive(Clone, Debug, Serialize)]
pub struct GprojSnReport {
    pub profile: GorensteinProfile,
    /// `lhs`: Gorenstein-projective; `rhs`: in `S_n(A)`.
    pub comparison: ComparisonReport,
    /// Whether `(D(A_A), 0, …, 0)` is Gorenstein-projective.
    pub dual_top_gproj: bool,
    /// Whether the two sides agree exactly when `A` is self-injective.
    pub holds: bool,
}

/// `A` is self-injective iff `T_n(A)-Gproj = S_n(A)`, compared over a
/// catalog of `Mor_n(A)`.
pub fn gproj_sn_check(a: &Arc<Algebra>, n: usize, catalog: &Catalog, caps: Caps, seed: u64) -> Result<GprojSnReport> {
    chains(catalog, n)?;
    let profile = profile(a, caps.res)?;
    // Gproj = CM once T_n(A) is known to be Gorenstein
    let tn = triangular_algebra(a, n)?;
    require_gorenstein(&tn, caps.res)?;
    let all = SubcatSpec::All.compile(caps, seed)?;
    let comparison = table(catalog, |x| cm_membership(&x.flat()?, caps.res), |x| Ok(sn_membership(x, &all)?.member))?;
    let dual_top = m_i(&injective_cogenerator(a), 1, n)?;
    let dual_top_gproj = cm_membership(&dual_top.flat()?, caps.res)?;
    let holds = profile.is_selfinjective == comparison.equal && dual_top_gproj == profile.is_selfinjective;
    Ok(GprojSnReport { profile, comparison, dual_top_gproj, holds })
}

#[derive(Clone, Debug, Serialize)]
pub struct GinjReport {
    /// `lhs`: `x ∈ CoCM(T_n(A))`, evaluated as `D(x) ∈ CM`; `rhs`: `x ∈ F_n(CoCM(A))`.
    pub cocm: ComparisonReport,
    /// Catalog indices that are both Gorenstein-projective and -injective.
    pub both: Vec<usize>,
    /// Failure of the shape test `x ≅ m_n(M)` with `M` both, if any.
    pub shape_failure: Option<String>,
    pub holds: bool,
}

/// The Gorenstein-injective side, run through the duality with `A^op`.
pub fn ginj_suite(a: &Arc<Algebra>, n: usize, catalog: &Catalog, caps: Caps, seed: u64) -> Result<GinjReport> {
    chains(catalog, n)?;
    if !inj_dim(&regular_module(a), caps.res)?.is_finite() {
        return Err(Error::input("missing hypothesis: inj.dim _AA is not finite within the cap"));
    }
    let op = a.opposite();
    let cm_op = SubcatSpec::PerpLeft(regular_module(&op)).compile(caps, seed)?;
    let cocm_a = SubcatSpec::PerpRight(injective_cogenerator(a)).compile(caps, seed)?;
    let cocm = table(
        catalog,
        |x| cm_membership(&mor_dual(x).flat()?, caps.res),
        |x| {
            let via_dual = sn_membership(&mor_dual(x), &cm_op)?.member;
            if via_dual != fn_membership(x, &cocm_a)?.member {
                return Err(Error::internal("F_n membership disagrees with its dual"));
            }
            Ok(via_dual)
        },
    )?;
    let tn = triangular_algebra(a, n)?;
    require_gorenstein(&tn, caps.res)?;
    let flags = catalog
        .objects
        .par_iter()
        .map(|x| {
            let f = x.flat()?;
            Ok(cm_membership(&f, caps.res)? && cocm_membership(&f, caps.res)?)
        })
        .collect::<Result<Vec<bool>>>()?;
    let both: Vec<usize> = (0..catalog.len()).filter(|&k| flags[k]).collect();
    require_gorenstein(a, caps.res)?;
    let mut shape_failure = None;
    for (k, x) in catalog.objects.iter().enumerate() {
        let top = x.branch(1);
        let shaped = (1..n).all(|i| x.phi(i).is_isomorphism())
            && cm_membership(top, caps.res)?
            && cocm_membership(top, caps.res)?;
        if shaped != flags[k] {
            shape_failure = Some(format!("object {} ({})", k, catalog.names[k]));
            break;
        }
    }
    let holds = cocm.equal && shape_failure.is_none();
    Ok(GinjReport { cocm, both, shape_failure, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ka2, ka2_mor2_catalog, ka3, lambda, square, two_loops, KA2_MOR2_PROJECTIVES};
    use crate::modrep::{projective, simple};

    #[test]
    fn profiles() {
        let p = profile(&lambda(2), 8).unwrap();
        assert_eq!((p.left_selfinj_dim, p.right_selfinj_dim), (DimBound::Finite(0), DimBound::Finite(0)));
        assert!(p.is_selfinjective);
        let p = profile(&ka2(), 8).unwrap();
        assert_eq!((p.left_selfinj_dim, p.right_selfinj_dim), (DimBound::Finite(1), DimBound::Finite(1)));
        assert!(p.is_gorenstein && !p.is_selfinjective);
        for a in [ka2(), lambda(2), ka3(), square()] {
            let g = profile(&a, 8).unwrap().is_gorenstein;
            for n in [2, 3] {
                let t = triangular_algebra(&a, n).unwrap();
                if g {
                    assert!(profile(&t, 8).unwrap().is_gorenstein, "{} n={n}", a.name());
                }
            }
        }
    }

    #[test]
    fn cm_examples() {
        let a = ka2();
        assert!(cm_membership(&projective(&a, 0), 8).unwrap());
        assert!(!cm_membership(&simple(&a, 0), 8).unwrap());
        let l = lambda(2);
        assert!(cm_membership(&simple(&l, 0), 8).unwrap());
    }

    #[test]
    fn cm_reciprocity_on_ka2() {
        let c = ka2_mor2_catalog();
        let r = cm_reciprocity(&ka2(), 2, &c, Caps::default(), 3).unwrap();
        assert!(r.equal);
        let names: Vec<&str> = r.lhs_members().iter().map(|&k| c.names[k].as_str()).collect();
        assert_eq!(names, KA2_MOR2_PROJECTIVES.to_vec());
    }

    #[test]
    fn gproj_sn_on_ka2() {
        let c = ka2_mor2_catalog();
        let r = gproj_sn_check(&ka2(), 2, &c, Caps::default(), 3).unwrap();
        assert!(r.holds);
        assert!(!r.comparison.equal);
        assert!(!r.dual_top_gproj);
        // (D(A), 0) = (S1, 0) ⊕ (P1, 0): the first is the witness
        assert!(r.comparison.disagreements.contains(&c.index_of("(S1,0)").unwrap()));
    }

    #[test]
    fn ginj_on_ka2() {
        let c = ka2_mor2_catalog();
        let r = ginj_suite(&ka2(), 2, &c, Caps::default(), 3).unwrap();
        assert!(r.holds, "{:?}", r);
        let names: Vec<&str> = r.both.iter().map(|&k| c.names[k].as_str()).collect();
        assert_eq!(names, vec!["(P1,P1)"]);
    }

    #[test]
    fn gproj_refuses_non_gorenstein() {
        let a = two_loops();
        assert!(!profile(&a, 6).unwrap().is_gorenstein);
        let e = gproj_membership(&simple(&a, 0), 6).unwrap_err();
        assert!(e.is_inconclusive());
    }
}
