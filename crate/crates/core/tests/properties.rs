use std::sync::Arc;

use monocat::approx::{lepi, rmon};
use monocat::exactla::{format_rational, frac, parse_rational, Matrix};
use monocat::fintype::enumerate_module_indecomposables;
use monocat::fixtures::{ka2, lambda};
use monocat::io::{mor_from_json, mor_to_json};
use monocat::modrep::{dual, is_isomorphic, Module};
use monocat::morcat::{adjunction_dims, random_mor_object, MorObject};
use proptest::prelude::*;

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |d| Matrix::from_i64(rows, cols, &d))
}

fn setting(which: u8) -> (Arc<monocat::algcore::Algebra>, Vec<Module>) {
    let a = if which.is_multiple_of(2) { ka2() } else { lambda(2) };
    let pool = enumerate_module_indecomposables(&a, 3, 0).unwrap();
    (a, pool)
}

fn chain(which: u8, n: usize, seed: u64) -> MorObject {
    let (a, pool) = setting(which);
    random_mor_object(&a, n, &pool, 2, seed).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_text_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let r = frac(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn rank_nullity(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| small_matrix(r, c))) {
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!((&m * &m.kernel_matrix()).is_zero());
    }

    #[test]
    fn transpose_of_product(a in small_matrix(3, 4), b in small_matrix(4, 2)) {
        prop_assert_eq!((&a * &b).transpose(), &b.transpose() * &a.transpose());
    }

    #[test]
    fn inverse_when_full_rank(m in small_matrix(3, 3)) {
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(m.rank(), 3);
                prop_assert!((&m * &inv).is_identity());
            }
            None => prop_assert!(m.rank() < 3),
        }
    }

    #[test]
    fn solve_finds_preimages(m in small_matrix(3, 4), x in prop::collection::vec(-3i64..=3, 4)) {
        let x: Vec<_> = x.into_iter().map(|v| frac(v, 1)).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).unwrap().expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&y), b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chain_json_round_trip(which in 0u8..2, n in 2usize..4, seed in 0u64..1000) {
        let x = chain(which, n, seed);
        let y = mor_from_json(x.algebra(), &mor_to_json(&x)).unwrap();
        prop_assert_eq!(x.dims(), y.dims());
        for i in 1..n {
            prop_assert_eq!(&x.phi(i).matrix, &y.phi(i).matrix);
        }
        for i in 1..=n {
            prop_assert!(is_isomorphic(x.branch(i), y.branch(i), 0).unwrap().isomorphic);
        }
    }

    #[test]
    fn rmon_is_a_monic_cover(which in 0u8..2, n in 2usize..4, seed in 0u64..1000) {
        let x = chain(which, n, seed);
        let r = rmon(&x).unwrap();
        prop_assert!(r.output.is_monic_chain());
        prop_assert!(r.counit.is_surjective());
        prop_assert_eq!(r.counit.is_isomorphism(), x.is_monic_chain());
        prop_assert!(r.counit.compose(&r.kernel_incl).is_zero());
        prop_assert!(r.kernel_incl.is_injective());
        let total: usize = r.output.total_dim();
        prop_assert_eq!(total, x.total_dim() + r.kernel.total_dim());
    }

    #[test]
    fn lepi_is_an_epic_hull(which in 0u8..2, n in 2usize..4, seed in 0u64..1000) {
        let x = chain(which, n, seed);
        let l = lepi(&x).unwrap();
        prop_assert!(l.output.is_epic_chain());
        prop_assert!(l.unit.is_injective());
        prop_assert_eq!(l.unit.is_isomorphism(), x.is_epic_chain());
    }

    #[test]
    fn adjunctions_hold(which in 0u8..2, n in 2usize..4, seed in 0u64..1000, k in 0usize..8) {
        let x = chain(which, n, seed);
        let (_, pool) = setting(which);
        let m = &pool[k % pool.len()];
        for row in adjunction_dims(&x, m).unwrap() {
            prop_assert!(row.holds(), "{} i={}: {} vs {}", row.identity, row.i, row.lhs, row.rhs);
        }
    }

    #[test]
    fn duality_is_involutive(which in 0u8..2, k in 0usize..8) {
        let (_, pool) = setting(which);
        let m = &pool[k % pool.len()];
        prop_assert!(is_isomorphic(&dual(&dual(m)), m, 0).unwrap().isomorphic);
    }
}
