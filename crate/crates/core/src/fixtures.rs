//! Bundled algebras and the catalog of indecomposable `T_2(kA_2)`-modules.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algcore::{path_algebra_with_cap, triangular_algebra, Algebra, QuiverPresentation, DEFAULT_PATH_CAP};
use crate::cotilt::Catalog;
use crate::error::{Error, Result};
use crate::exactla::{int, Matrix};
use crate::fintype::{enumerate_mor_indecomposables, enumerate_sn_indecomposables};
use crate::modrep::{hom_matrices, named_module, Module};
use crate::morcat::MorObject;

fn build(
    name: &str,
    vertices: &[&str],
    arrows: &[(&str, &str, &str)],
    relations: Vec<Vec<(i64, Vec<&str>)>>,
) -> Arc<Algebra> {
    let q = QuiverPresentation {
        vertices: vertices.iter().map(|s| s.to_string()).collect(),
        arrows: arrows.iter().map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())).collect(),
        relations: relations
            .into_iter()
            .map(|r| r.into_iter().map(|(c, p)| (int(c), p.into_iter().map(String::from).collect())).collect())
            .collect(),
    };
    path_algebra_with_cap(name, &q, DEFAULT_PATH_CAP).expect("bundled quiver is finite-dimensional")
}

/// The path algebra of `1 → 2`.
pub fn ka2() -> Arc<Algebra> {
    static A: OnceLock<Arc<Algebra>> = OnceLock::new();
    A.get_or_init(|| build("kA2", &["1", "2"], &[("a", "1", "2")], vec![])).clone()
}

/// `Q[x]/(x^t)` as a loop quiver with one relation.
pub fn lambda(t: usize) -> Arc<Algebra> {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<Algebra>>>> = OnceLock::new();
    let mut m = CACHE.get_or_init(Default::default).lock().expect("fixture cache poisoned");
    m.entry(t)
        .or_insert_with(|| build(&format!("lambda{t}"), &["1"], &[("x", "1", "1")], vec![vec![(1, vec!["x"; t])]]))
        .clone()
}

/// The path algebra of `1 → 2 → 3`.
pub fn ka3() -> Arc<Algebra> {
    static A: OnceLock<Arc<Algebra>> = OnceLock::new();
    A.get_or_init(|| build("kA3", &["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], vec![])).clone()
}

/// A commutative square: four vertices, one commutativity relation.
pub fn square() -> Arc<Algebra> {
    static A: OnceLock<Arc<Algebra>> = OnceLock::new();
    A.get_or_init(|| {
        build(
            "square",
            &["1", "2", "3", "4"],
            &[("alpha", "1", "2"), ("beta", "2", "4"), ("gamma", "1", "3"), ("delta", "3", "4")],
            vec![vec![(1, vec!["alpha", "beta"]), (-1, vec!["gamma", "delta"])]],
        )
    })
    .clone()
}

/// `Q[x, y]/(x, y)^2` as two loops with all quadratic paths zero; not
/// Gorenstein.
pub fn two_loops() -> Arc<Algebra> {
    static A: OnceLock<Arc<Algebra>> = OnceLock::new();
    A.get_or_init(|| {
        build(
            "two_loops",
            &["1"],
            &[("x", "1", "1"), ("y", "1", "1")],
            vec![
                vec![(1, vec!["x", "x"])],
                vec![(1, vec!["x", "y"])],
                vec![(1, vec!["y", "x"])],
                vec![(1, vec!["y", "y"])],
            ],
        )
    })
    .clone()
}

/// Looks up a bundled algebra: `kA2`, `kA3`, `square`, `two_loops`,
/// `lambda<t>`, or `T<n>(<name>)` for a triangular matrix algebra.
pub fn algebra_by_name(name: &str) -> Option<Arc<Algebra>> {
    match name {
        "kA2" => return Some(ka2()),
        "kA3" => return Some(ka3()),
        "square" => return Some(square()),
        "two_loops" => return Some(two_loops()),
        _ => {}
    }
    if let Some(t) = name.strip_prefix("lambda").and_then(|t| t.parse::<usize>().ok()) {
        return (t >= 1).then(|| lambda(t));
    }
    let (n, inner) = name.strip_prefix('T')?.strip_suffix(')')?.split_once('(')?;
    let n: usize = n.parse().ok()?;
    if n == 0 {
        return None;
    }
    triangular_algebra(&algebra_by_name(inner)?, n).ok()
}

/// Names of the eleven indecomposable objects of `Mor_2(kA_2)`, written
/// `(X_1, X_2)` for `φ: X_2 → X_1`, in catalog order.
pub const KA2_MOR2_NAMES: [&str; 11] =
    ["(S2,0)", "(P1,0)", "(S2,S2)", "(P1,S2)", "(0,S2)", "(P1,P1)", "(S1,0)", "(S1,P1)", "(0,P1)", "(S1,S1)", "(0,S1)"];

/// The four projective objects of `Mor_2(kA_2)`.
pub const KA2_MOR2_PROJECTIVES: [&str; 4] = ["(S2,0)", "(P1,0)", "(S2,S2)", "(P1,P1)"];

fn pair(a: &Arc<Algebra>, name: &str) -> MorObject {
    let inner = &name[1..name.len() - 1];
    let (l, r) = inner.split_once(',').expect("pair name");
    let m = |s: &str| -> Module {
        if s == "0" {
            Module::zero(a)
        } else {
            named_module(a, &format!("{}({})", &s[..1], &s[1..])).expect("named module")
        }
    };
    let (x1, x2) = (m(l), m(r));
    let phi = if x1.is_zero() || x2.is_zero() {
        Matrix::zeros(x1.dim(), x2.dim())
    } else {
        let h = hom_matrices(&x2, &x1).expect("hom space");
        assert_eq!(h.len(), 1, "bundled pairs have one-dimensional hom spaces");
        h[0].clone()
    };
    MorObject::from_matrices(a, vec![x1, x2], vec![phi]).expect("bundled pair is a chain")
}

/// All indecomposable `T_2(kA_2)`-modules as chains `X_2 → X_1`.
pub fn ka2_mor2_catalog() -> Catalog {
    let a = ka2();
    let objects = KA2_MOR2_NAMES.iter().map(|n| pair(&a, n)).collect();
    let names = KA2_MOR2_NAMES.iter().map(|s| s.to_string()).collect();
    Catalog::of_chains(&a, Some(2), objects, names, "Auslander-Reiten quiver of T_2(kA_2)").expect("bundled catalog")
}

/// The three indecomposable `kA_2`-modules.
pub fn ka2_module_catalog() -> Catalog {
    let a = ka2();
    let names = ["S(2)", "P(1)", "S(1)"];
    let mods = names.iter().map(|n| named_module(&a, n).expect("named module")).collect();
    Catalog::of_modules(&a, mods, names.iter().map(|s| s.to_string()).collect(), "indecomposable kA_2-modules")
        .expect("bundled catalog")
}

/// Top-branch dimension cap for the bundled `S_n(Λ_2)` oracle catalogs.
pub fn lambda2_sn_cap(n: usize) -> Option<usize> {
    match n {
        2 => Some(6),
        3 => Some(3),
        _ => None,
    }
}

/// Branch dimension cap for the bundled `Mor_n(Λ_2)` oracle catalogs.
pub fn lambda2_mor_cap(n: usize) -> Option<usize> {
    match n {
        2 => Some(3),
        3 => Some(2),
        _ => None,
    }
}

/// Oracle catalog of `S_n(Λ_2)` (`n` is 2 or 3), computed once per process.
pub fn lambda2_sn_catalog(n: usize) -> Result<Catalog> {
    let cap = lambda2_sn_cap(n).ok_or_else(|| Error::input("bundled S_n(Λ_2) catalogs exist for n = 2, 3"))?;
    cached((true, n), || enumerate_sn_indecomposables(&lambda(2), n, cap, 1))
}

/// Oracle catalog of `Mor_n(Λ_2)` (`n` is 2 or 3). The `n = 3` catalog has
/// not stabilized at its cap.
pub fn lambda2_mor_catalog(n: usize) -> Result<Catalog> {
    let cap = lambda2_mor_cap(n).ok_or_else(|| Error::input("bundled Mor_n(Λ_2) catalogs exist for n = 2, 3"))?;
    cached((false, n), || enumerate_mor_indecomposables(&lambda(2), n, cap, 1))
}

fn cached(key: (bool, usize), build: impl FnOnce() -> Result<Catalog>) -> Result<Catalog> {
    type Cache = Mutex<BTreeMap<(bool, usize), Catalog>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().expect("catalog cache").get(&key) {
        return Ok(c.clone());
    }
    // built outside the lock; a racing duplicate is harmless
    let c = build()?;
    cache.lock().expect("catalog cache").insert(key, c.clone());
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_valid() {
        let c = ka2_mor2_catalog();
        c.validate(7).unwrap();
        assert_eq!(c.len(), 11);
        let dims: usize = c.objects.iter().map(MorObject::total_dim).sum();
        assert_eq!(dims, 1 + 2 + 2 + 3 + 1 + 4 + 1 + 3 + 2 + 2 + 1);
        ka2_module_catalog().validate(7).unwrap();
    }

    #[test]
    fn names_resolve() {
        assert_eq!(algebra_by_name("kA2").unwrap().dim(), 3);
        assert_eq!(algebra_by_name("lambda3").unwrap().dim(), 3);
        assert_eq!(algebra_by_name("T2(kA2)").unwrap().dim(), 9);
        assert_eq!(algebra_by_name("T2(T2(kA2))").unwrap().dim(), 27);
        for bad in ["", "lambda0", "lambda", "T0(kA2)", "T2(nope)", "T2kA2", "kA4"] {
            assert!(algebra_by_name(bad).is_none(), "{bad}");
        }
    }
}
