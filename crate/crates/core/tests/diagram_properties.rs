mod common;

use dowker_rips::complexes::{dowker_filtration, dowker_rips_filtration};
use dowker_rips::diagrams::{
    bottleneck, bottleneck_pairs, diagrams_equal, log_rescale, persistence_image, EssentialPolicy,
    PersistenceImageParams, Weight,
};
use dowker_rips::persistence::compute_persistence;
use dowker_rips::{CrossDistanceMatrix, PersistenceDiagram, PersistencePair};
use proptest::prelude::*;

use common::{brute_bottleneck, small_matrix};

fn pair() -> impl Strategy<Value = PersistencePair> {
    (0u32..8, 0u32..6, prop::bool::weighted(0.15), any::<bool>()).prop_map(|(b, len, essential, grid)| {
        let jitter = if grid { 0.0 } else { 0.37 };
        let birth = f64::from(b) * 0.5 + jitter;
        let death = if essential { f64::INFINITY } else { birth + f64::from(len) * 0.25 + jitter * 0.1 };
        PersistencePair::new(birth, death)
    })
}

fn pairs(max: usize) -> impl Strategy<Value = Vec<PersistencePair>> {
    prop::collection::vec(pair(), 0..=max)
}

fn single(points: Vec<PersistencePair>) -> PersistenceDiagram {
    PersistenceDiagram::from_dims(vec![points])
}

fn perturb(r: &CrossDistanceMatrix, noise: &[f64]) -> CrossDistanceMatrix {
    let entries = r.entries().iter().zip(noise.iter().cycle()).map(|(v, e)| (v + e).max(0.0)).collect();
    CrossDistanceMatrix::from_row_major(r.n_rows(), r.n_cols(), entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn bottleneck_matches_brute_force(a in pairs(5), b in pairs(5)) {
        let fast = bottleneck_pairs(&a, &b);
        let slow = brute_bottleneck(&a, &b);
        if slow.is_infinite() {
            prop_assert!(fast.is_infinite());
        } else {
            prop_assert!((fast - slow).abs() <= 1e-12, "{} vs {}", fast, slow);
        }
    }

    #[test]
    fn bottleneck_is_a_pseudometric(a in pairs(4), b in pairs(4), c in pairs(4)) {
        let (da, db) = (single(a.clone()), single(b.clone()));
        prop_assert_eq!(bottleneck(&da, &da, 0), 0.0);
        prop_assert_eq!(bottleneck_pairs(&a, &b), bottleneck_pairs(&b, &a));
        let ab = bottleneck_pairs(&a, &b);
        let bc = bottleneck_pairs(&b, &c);
        let ac = bottleneck_pairs(&a, &c);
        prop_assert!(ac <= ab + bc + 1e-12);
        if diagrams_equal(&da, &db, 0.0).equal {
            prop_assert_eq!(ab, 0.0);
        }
    }

    #[test]
    fn equality_agrees_with_zero_distance(a in pairs(5)) {
        let mut shuffled = a.clone();
        shuffled.reverse();
        let (da, db) = (single(a), single(shuffled));
        prop_assert!(diagrams_equal(&da, &db, 0.0).equal);
        prop_assert_eq!(bottleneck(&da, &db, 0), 0.0);
    }

    #[test]
    fn dowker_diagrams_are_stable(r in small_matrix(6), noise in prop::collection::vec(-0.3..0.3f64, 36)) {
        let s = perturb(&r, &noise);
        let sup = r.entries().iter().zip(s.entries()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        let dgm = |m: &CrossDistanceMatrix| compute_persistence(&dowker_filtration(m, 2, f64::INFINITY).unwrap(), 1).unwrap();
        let (a, b) = (dgm(&r), dgm(&s));
        for d in 0..=1 {
            prop_assert!(bottleneck(&a, &b, d) <= sup + 1e-12);
        }
        let dgm = |m: &CrossDistanceMatrix| compute_persistence(&dowker_rips_filtration(m, 2, f64::INFINITY).unwrap(), 1).unwrap();
        let (a, b) = (dgm(&r), dgm(&s));
        for d in 0..=1 {
            prop_assert!(bottleneck(&a, &b, d) <= sup + 1e-12);
        }
    }

    #[test]
    fn scaling_shifts_log_diagrams(r in small_matrix(5), c in 0.25..4.0f64) {
        let base = CrossDistanceMatrix::from_row_major(r.n_rows(), r.n_cols(), r.entries().iter().map(|v| v + 1.0).collect()).unwrap();
        let scaled = CrossDistanceMatrix::from_row_major(r.n_rows(), r.n_cols(), base.entries().iter().map(|v| v * c).collect()).unwrap();
        let dgm = |m: &CrossDistanceMatrix| compute_persistence(&dowker_rips_filtration(m, 2, f64::INFINITY).unwrap(), 1).unwrap();
        let la = log_rescale(&dgm(&base), 1e-12).unwrap();
        let lb = log_rescale(&dgm(&scaled), 1e-12).unwrap();
        let shift = c.ln().abs();
        prop_assert!((bottleneck(&la, &lb, 0) - shift).abs() <= 1e-9);
        prop_assert!(bottleneck(&la, &lb, 1) <= shift + 1e-9);
    }

    #[test]
    fn image_mass_matches_fine_grid(points in prop::collection::vec((0.3..0.7f64, 0.3..0.7f64), 1..6)) {
        let dgm = single(points.iter().map(|&(b, p)| PersistencePair::new(b, b + p)).collect());
        let params = PersistenceImageParams {
            resolution: (20, 20),
            bandwidth: 0.05,
            birth_range: (0.0, 1.0),
            pers_range: (0.0, 1.0),
            weight: Weight::LinearInPersistence,
            essential: EssentialPolicy::Drop,
        };
        let image = persistence_image(&dgm, 0, &params).unwrap();
        let fine = fine_grid_mass(&dgm, &params, 100);
        prop_assert!((image.sum() - fine).abs() <= 1e-3, "{} vs {}", image.sum(), fine);
        prop_assert!(image.values.iter().all(|v| *v >= 0.0));
    }

    #[test]
    fn image_is_lipschitz_in_the_diagram(b in 0.2..0.8f64, p in 0.2..0.8f64, h in 1e-6..1e-3f64) {
        let params = PersistenceImageParams {
            resolution: (10, 10),
            bandwidth: 0.1,
            birth_range: (0.0, 1.0),
            pers_range: (0.0, 1.0),
            weight: Weight::LinearInPersistence,
            essential: EssentialPolicy::Drop,
        };
        let at = |birth: f64, pers: f64| persistence_image(&single(vec![PersistencePair::new(birth, birth + pers)]), 0, &params).unwrap();
        let base = at(b, p);
        // a cell of area A holds at most A / (2 pi sigma^2) of a unit Gaussian; its
        // derivative along one axis is bounded by that times (1/pers_hi + 1/(sigma sqrt e))
        let cell = 0.01;
        let bound = cell / (2.0 * std::f64::consts::PI * 0.01) * (1.0 + 1.0 / (0.1 * 1f64.exp().sqrt()));
        for (db, dp) in [(h, 0.0), (0.0, h)] {
            let moved = at(b + db, p + dp);
            let change = base.values.iter().zip(&moved.values).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            prop_assert!(change <= bound * h * (1.0 + 1e-6), "{} > {}", change / h, bound);
        }
    }
}

/// Midpoint sums on a grid `refine` times finer in each direction.
fn fine_grid_mass(dgm: &PersistenceDiagram, params: &PersistenceImageParams, refine: usize) -> f64 {
    let (rows, cols) = (params.resolution.0 * refine, params.resolution.1 * refine);
    let (b_lo, b_hi) = params.birth_range;
    let (p_lo, p_hi) = params.pers_range;
    let (db, dp) = ((b_hi - b_lo) / cols as f64, (p_hi - p_lo) / rows as f64);
    let s2 = params.bandwidth * params.bandwidth;
    let mut total = 0.0;
    for pt in dgm.pairs(0) {
        let pers = pt.death - pt.birth;
        let w = (pers / p_hi).clamp(0.0, 1.0);
        let gx: f64 = (0..cols)
            .map(|c| {
                let x = b_lo + (c as f64 + 0.5) * db - pt.birth;
                (-x * x / (2.0 * s2)).exp()
            })
            .sum();
        let gy: f64 = (0..rows)
            .map(|r| {
                let y = p_lo + (r as f64 + 0.5) * dp - pers;
                (-y * y / (2.0 * s2)).exp()
            })
            .sum();
        total += w * gx * gy * db * dp / (2.0 * std::f64::consts::PI * s2);
    }
    total
}

#[test]
fn isolated_point_has_unit_mass() {
    let dgm = single(vec![PersistencePair::new(0.5, 1.0)]);
    let params = PersistenceImageParams {
        resolution: (40, 40),
        bandwidth: 0.05,
        birth_range: (0.0, 1.0),
        pers_range: (0.0, 1.0),
        weight: Weight::Constant,
        essential: EssentialPolicy::Drop,
    };
    let image = persistence_image(&dgm, 0, &params).unwrap();
    assert!((image.sum() - 1.0).abs() < 1e-6);
    let peak = image.values.iter().cloned().fold(0.0, f64::max);
    let row = (0..40).find(|&r| (0..40).any(|c| image.get(r, c) == peak)).unwrap();
    let col = (0..40).find(|&c| image.get(row, c) == peak).unwrap();
    assert_eq!((row, col), (19, 19));
}

#[test]
fn essential_policies() {
    let dgm = single(vec![PersistencePair::new(0.5, f64::INFINITY)]);
    let mut params = PersistenceImageParams::fit(&dgm, 0);
    assert_eq!(persistence_image(&dgm, 0, &params).unwrap().sum(), 0.0);
    params.essential = EssentialPolicy::Clamp;
    assert!(persistence_image(&dgm, 0, &params).unwrap().sum() > 0.0);
}

#[test]
fn log_rescale_rejects_values_near_floor() {
    let dgm = single(vec![PersistencePair::new(5e-12, 1.0)]);
    assert!(log_rescale(&dgm, 1e-12).is_err());
    let dgm = single(vec![PersistencePair::new(0.0, 1.0)]);
    let rescaled = log_rescale(&dgm, 1e-12).unwrap();
    assert_eq!(rescaled.pairs(0)[0].birth, 1e-12f64.ln());
    assert_eq!(rescaled.pairs(0)[0].death, 0.0);
}
