mod common;

use dowker_rips::complexes::{dowker_filtration, dowker_rips_filtration, dowker_skeleton, kflag_filtration};
use dowker_rips::oracles::minimal_interleaving_constant;
use dowker_rips::{CrossDistanceMatrix, Filtration};
use proptest::prelude::*;

use common::{metric_matrix, small_matrix};

/// Dowker value computed straight from the definition.
fn dowker_value(r: &CrossDistanceMatrix, sigma: &[usize]) -> f64 {
    (0..r.n_cols())
        .map(|j| sigma.iter().map(|&i| r.get(i, j)).fold(f64::NEG_INFINITY, f64::max))
        .fold(f64::INFINITY, f64::min)
}

fn values(f: &Filtration) -> std::collections::BTreeMap<Vec<usize>, f64> {
    f.iter().map(|s| (s.vertices.clone(), s.value)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn dowker_values_follow_the_definition(r in small_matrix(7), max_dim in 0usize..=3) {
        let f = dowker_filtration(&r, max_dim, f64::INFINITY).unwrap();
        for s in f.iter() {
            prop_assert_eq!(s.value, dowker_value(&r, &s.vertices));
        }
        let n = r.n_rows() as u64;
        let expected: u64 = (1..=(max_dim as u64 + 1).min(n)).map(|k| binomial(n, k)).sum();
        prop_assert_eq!(f.len() as u64, expected);
    }

    #[test]
    fn filtrations_are_monotone(r in small_matrix(7), max_dim in 1usize..=4, k in 2usize..=4) {
        for f in [
            dowker_filtration(&r, max_dim, f64::INFINITY).unwrap(),
            dowker_rips_filtration(&r, max_dim, f64::INFINITY).unwrap(),
            kflag_filtration(&r, k, max_dim, f64::INFINITY).unwrap(),
        ] {
            prop_assert!(f.validate().is_ok());
            let v = values(&f);
            for s in f.iter() {
                for facet in s.facets() {
                    prop_assert!(v[&facet] <= s.value);
                }
            }
        }
    }

    #[test]
    fn skeletons_agree(r in small_matrix(7)) {
        let d = values(&dowker_filtration(&r, 1, f64::INFINITY).unwrap());
        let dr = values(&dowker_rips_filtration(&r, 1, f64::INFINITY).unwrap());
        let kf = values(&kflag_filtration(&r, 3, 1, f64::INFINITY).unwrap());
        prop_assert_eq!(&d, &dr);
        prop_assert_eq!(&d, &kf);
        let g = dowker_skeleton(&r);
        for (sigma, value) in &d {
            match sigma.as_slice() {
                [i] => prop_assert_eq!(g.vertex_values()[*i], *value),
                [i, k] => prop_assert_eq!(g.edge_value(*i, *k), Some(*value)),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn values_are_nested_across_k(r in small_matrix(6), max_dim in 2usize..=4) {
        let d = values(&dowker_filtration(&r, max_dim, f64::INFINITY).unwrap());
        let mut previous = values(&dowker_rips_filtration(&r, max_dim, f64::INFINITY).unwrap());
        prop_assert_eq!(previous.len(), d.len());
        for k in 3..=max_dim + 2 {
            let current = values(&kflag_filtration(&r, k, max_dim, f64::INFINITY).unwrap());
            prop_assert_eq!(current.len(), d.len());
            for (sigma, v) in &current {
                prop_assert!(previous[sigma] <= *v);
                prop_assert!(*v <= d[sigma]);
            }
            previous = current;
        }
        prop_assert_eq!(previous, d);
    }

    #[test]
    fn metric_relations_are_three_interleaved(r in metric_matrix(7), max_dim in 1usize..=4) {
        let d = dowker_filtration(&r, max_dim, f64::INFINITY).unwrap();
        let dr = dowker_rips_filtration(&r, max_dim, f64::INFINITY).unwrap();
        let dv = values(&d);
        for s in dr.iter() {
            let vd = dv[&s.vertices];
            prop_assert!(s.value <= vd);
            prop_assert!(vd <= 3.0 * s.value + 1e-12);
        }
        prop_assert!(minimal_interleaving_constant(&d, &dr) <= 3.0 + 1e-12);
    }

    #[test]
    fn transpose_is_an_involution(r in small_matrix(8)) {
        let t = r.transpose();
        prop_assert_eq!((t.n_rows(), t.n_cols()), (r.n_cols(), r.n_rows()));
        for i in 0..r.n_rows() {
            for j in 0..r.n_cols() {
                prop_assert_eq!(t.get(j, i), r.get(i, j));
            }
        }
        prop_assert_eq!(t.transpose(), r);
    }

    #[test]
    fn construction_is_deterministic(r in small_matrix(7)) {
        let a = dowker_rips_filtration(&r, 3, f64::INFINITY).unwrap();
        let b = dowker_rips_filtration(&r, 3, f64::INFINITY).unwrap();
        prop_assert_eq!(a.to_debug_lines(), b.to_debug_lines());
        let a = kflag_filtration(&r, 3, 3, f64::INFINITY).unwrap();
        let b = kflag_filtration(&r, 3, 3, f64::INFINITY).unwrap();
        prop_assert_eq!(a.to_debug_lines(), b.to_debug_lines());
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn c6_triangle_values() {
    let r = dowker_rips::fixtures::c6_matrix();
    let d = values(&dowker_filtration(&r, 2, f64::INFINITY).unwrap());
    let dr = values(&dowker_rips_filtration(&r, 2, f64::INFINITY).unwrap());
    assert_eq!(d[&vec![0, 1, 2]], 3.0);
    assert_eq!(dr[&vec![0, 1, 2]], 1.0);
}

#[test]
fn resource_guard_trips_before_enumeration() {
    let r = CrossDistanceMatrix::from_row_major(80, 1, vec![1.0; 80]).unwrap();
    let err = dowker_filtration(&r, 8, f64::INFINITY).unwrap_err();
    assert_eq!(err.exit_code(), 3);
}
