mod common;

use dowker_rips::complexes::{dowker_filtration, dowker_rips_filtration, kflag_filtration};
use dowker_rips::oracles::{brute_dowker, brute_flagify};
use proptest::prelude::*;

use common::{probe_thresholds, small_matrix};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn dowker_sublevels_match_brute_force(r in small_matrix(7), max_dim in 0usize..=4) {
        let f = dowker_filtration(&r, max_dim, f64::INFINITY).unwrap();
        for eps in probe_thresholds(&r) {
            let oracle = brute_dowker(&r, eps, max_dim).unwrap();
            prop_assert_eq!(f.sublevel(eps), oracle.0, "eps {}", eps);
        }
    }

    #[test]
    fn dowker_rips_sublevels_match_clique_complex(r in small_matrix(7), max_dim in 1usize..=4) {
        let f = dowker_rips_filtration(&r, max_dim, f64::INFINITY).unwrap();
        for eps in probe_thresholds(&r) {
            let d = brute_dowker(&r, eps, max_dim).unwrap();
            let oracle = brute_flagify(&d, 2, max_dim).unwrap();
            prop_assert_eq!(f.sublevel(eps), oracle.0, "eps {}", eps);
        }
    }

    #[test]
    fn kflag_sublevels_match_flagification(r in small_matrix(7), k in 2usize..=4, max_dim in 1usize..=4) {
        let f = kflag_filtration(&r, k, max_dim, f64::INFINITY).unwrap();
        for eps in probe_thresholds(&r) {
            let d = brute_dowker(&r, eps, max_dim).unwrap();
            let oracle = brute_flagify(&d, k, max_dim).unwrap();
            prop_assert_eq!(f.sublevel(eps), oracle.0, "eps {}", eps);
        }
    }

    #[test]
    fn finite_threshold_is_a_truncation(r in small_matrix(6), max_dim in 1usize..=3, q in 0.0..1.0f64) {
        let eps = r.quantile(q);
        let full = dowker_filtration(&r, max_dim, f64::INFINITY).unwrap();
        let cut = dowker_filtration(&r, max_dim, eps).unwrap();
        prop_assert_eq!(cut.sublevel(f64::INFINITY), full.sublevel(eps));
        let full = dowker_rips_filtration(&r, max_dim, f64::INFINITY).unwrap();
        let cut = dowker_rips_filtration(&r, max_dim, eps).unwrap();
        prop_assert_eq!(cut.sublevel(f64::INFINITY), full.sublevel(eps));
        let full = kflag_filtration(&r, 3, max_dim, f64::INFINITY).unwrap();
        let cut = kflag_filtration(&r, 3, max_dim, eps).unwrap();
        prop_assert_eq!(cut.sublevel(f64::INFINITY), full.sublevel(eps));
    }

    #[test]
    fn oracle_complexes_are_closed(r in small_matrix(6), eps in 0.0..10.0f64) {
        let d = brute_dowker(&r, eps, 3).unwrap();
        prop_assert!(d.is_closed());
        prop_assert!(brute_flagify(&d, 2, 3).unwrap().is_closed());
        prop_assert!(brute_flagify(&d, 3, 3).unwrap().is_closed());
    }
}

#[test]
fn flagification_is_monotone_in_k() {
    let r = dowker_rips::fixtures::tetrahedron_matrix().transpose();
    let d = brute_dowker(&r, 0.5, 3).unwrap();
    let f2 = brute_flagify(&d, 2, 3).unwrap();
    let f3 = brute_flagify(&d, 3, 3).unwrap();
    let f4 = brute_flagify(&d, 4, 3).unwrap();
    assert!(d.0.is_subset(&f4.0));
    assert!(f4.0.is_subset(&f3.0));
    assert!(f3.0.is_subset(&f2.0));
    assert_eq!(d, f4);
    assert_eq!(f2.count_dim(2), 8);
    assert_eq!(f3.count_dim(2), 4);
    assert_eq!(f2.count_dim(3), 0);
}
