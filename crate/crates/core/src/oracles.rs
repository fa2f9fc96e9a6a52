//! Definition-level reference implementations and the theorem checker.
//!
//! The brute-force constructions enumerate vertex subsets literally and are
//! capped at [`BRUTE_FORCE_LIMIT`] vertices. [`verify_theorems`] packages the
//! duality and interleaving statements about Dowker and Dowker-Rips
//! filtrations as pass/fail checks on a concrete relation.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complexes::{dowker_filtration, dowker_rips_filtration, kflag_filtration, Filtration};
use crate::diagrams::{bottleneck, dimension_equal, log_rescale, DEFAULT_LOG_FLOOR};
use crate::error::{Error, Result};
use crate::persistence::{compute_persistence, PersistenceDiagram};
use crate::relations::{cross_distances, CrossDistanceMatrix, Metric};

pub const BRUTE_FORCE_LIMIT: usize = 12;

/// A plain simplicial complex: vertex sets closed under nonempty subsets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimplexSet(pub BTreeSet<Vec<usize>>);

impl SimplexSet {
    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.0.contains(simplex)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count_dim(&self, dim: usize) -> usize {
        self.0.iter().filter(|s| s.len() == dim + 1).count()
    }

    pub fn is_closed(&self) -> bool {
        self.0.iter().all(|s| {
            subsets_of(s)
                .into_iter()
                .filter(|t| !t.is_empty())
                .all(|t| self.0.contains(&t))
        })
    }
}

impl From<BTreeSet<Vec<usize>>> for SimplexSet {
    fn from(set: BTreeSet<Vec<usize>>) -> Self {
        Self(set)
    }
}

fn subsets_of(s: &[usize]) -> Vec<Vec<usize>> {
    (0u32..1 << s.len())
        .map(|mask| {
            s.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

/// All nonempty subsets of `0..n` with at most `max_size` elements, as sorted lists.
fn all_subsets(n: usize, max_size: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..1 << n)
        .filter(move |mask| mask.count_ones() as usize <= max_size)
        .map(move |mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
}

fn check_size(n: usize) -> Result<()> {
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::InstanceTooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    Ok(())
}

/// The Dowker complex at scale `eps`: a vertex set is a simplex iff one
/// column is within `eps` of every one of its rows.
pub fn brute_dowker(r: &CrossDistanceMatrix, eps: f64, max_dim: usize) -> Result<SimplexSet> {
    let n = r.n_rows();
    check_size(n)?;
    let set = all_subsets(n, max_dim + 1)
        .filter(|sigma| (0..r.n_cols()).any(|j| sigma.iter().all(|&i| r.get(i, j) <= eps)))
        .collect();
    Ok(SimplexSet(set))
}

/// k-flagification: add every vertex set of dimension `>= k` whose
/// `(k-1)`-faces are all present, repeating until nothing changes.
pub fn brute_flagify(s: &SimplexSet, k: usize, max_dim: usize) -> Result<SimplexSet> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k-flagification needs k >= 2, got {k}")));
    }
    let vertices: Vec<usize> = s.0.iter().filter(|t| t.len() == 1).map(|t| t[0]).collect();
    check_size(vertices.len())?;
    let mut out = s.0.clone();
    loop {
        let mut added = false;
        for local in all_subsets(vertices.len(), max_dim + 1) {
            if local.len() < k + 1 {
                continue;
            }
            let sigma: Vec<usize> = local.iter().map(|&i| vertices[i]).collect();
            if out.contains(&sigma) {
                continue;
            }
            let faces_present = subsets_of(&sigma)
                .into_iter()
                .filter(|t| t.len() == k)
                .all(|t| out.contains(&t));
            if faces_present {
                out.insert(sigma);
                added = true;
            }
        }
        if !added {
            return Ok(SimplexSet(out));
        }
    }
}

/// One pass/fail entry of a [`TheoremReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub instance: String,
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
}

impl TheoremReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    /// Top simplex dimension; diagrams are compared in dims `0..max_dim`.
    pub max_dim: usize,
    /// Scales at which the inclusions are checked; empty means every critical value.
    pub thresholds: Vec<f64>,
    pub interleaving_constant: f64,
    pub k: usize,
    pub tol: f64,
    pub log_floor: f64,
    pub instance: String,
    pub seed: Option<u64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_dim: 3,
            thresholds: Vec::new(),
            interleaving_constant: 3.0,
            k: 3,
            tol: 1e-9,
            log_floor: DEFAULT_LOG_FLOOR,
            instance: "matrix".into(),
            seed: None,
        }
    }
}

/// Constants below 3 probed when annotating how sharp the inclusion bound is.
pub const SHARPNESS_PROBES: [f64; 4] = [2.0, 2.5, 2.9, 2.99];

pub fn verify_theorems(r: &CrossDistanceMatrix, max_dim: usize, thresholds: &[f64]) -> Result<TheoremReport> {
    verify_theorems_with(
        r,
        &VerifyConfig {
            max_dim,
            thresholds: thresholds.to_vec(),
            ..VerifyConfig::default()
        },
    )
}

pub fn verify_theorems_with(r: &CrossDistanceMatrix, config: &VerifyConfig) -> Result<TheoremReport> {
    let max_dim = config.max_dim.max(1);
    let tol = config.tol;
    let rt = r.transpose();
    let inf = f64::INFINITY;
    let mut checks = Vec::new();

    let d_xy = dowker_filtration(r, max_dim, inf)?;
    let dr_xy = dowker_rips_filtration(r, max_dim, inf)?;

    // (a) D_eps <= DR_eps <= D_{c eps}
    let thresholds = if config.thresholds.is_empty() {
        let mut all: Vec<f64> = d_xy.critical_values();
        all.extend(dr_xy.critical_values());
        all.sort_by(f64::total_cmp);
        all.dedup();
        all
    } else {
        config.thresholds.clone()
    };
    checks.push(inclusion_check(&d_xy, &dr_xy, &thresholds, config.interleaving_constant, tol));
    checks.push(per_simplex_check(&d_xy, &dr_xy, config.interleaving_constant, tol));
    checks.push(sharpness_check(&d_xy, &dr_xy, config.interleaving_constant, tol));

    // (b) Dowker-Rips duality in dims 0 and 1
    let dr_dim = max_dim.max(2);
    let dr_xy_full = if dr_dim == max_dim { dr_xy.clone() } else { dowker_rips_filtration(r, dr_dim, inf)? };
    let dr_yx_full = dowker_rips_filtration(&rt, dr_dim, inf)?;
    let dgm_dr_xy = compute_persistence(&dr_xy_full, dr_dim - 1)?;
    let dgm_dr_yx = compute_persistence(&dr_yx_full, dr_dim - 1)?;
    checks.push(equality_check("dowker_rips_duality_dims_0_1", &dgm_dr_xy, &dgm_dr_yx, 0..=1, tol));
    if dr_dim >= 3 {
        checks.push(divergence_note(&dgm_dr_xy, &dgm_dr_yx, 2..=dr_dim - 1, tol));
    }

    // (c) Dowker duality in every computed dimension
    let d_yx = dowker_filtration(&rt, max_dim, inf)?;
    let dgm_d_xy = compute_persistence(&d_xy, max_dim - 1)?;
    let dgm_d_yx = compute_persistence(&d_yx, max_dim - 1)?;
    checks.push(equality_check("dowker_duality", &dgm_d_xy, &dgm_d_yx, 0..=max_dim - 1, tol));

    // (d) k-flag duality in dims 0..k-1
    let k = config.k.max(2);
    let k_dim = max_dim.max(k);
    let kf_xy = kflag_filtration(r, k, k_dim, inf)?;
    let kf_yx = kflag_filtration(&rt, k, k_dim, inf)?;
    let dgm_kf_xy = compute_persistence(&kf_xy, k - 1)?;
    let dgm_kf_yx = compute_persistence(&kf_yx, k - 1)?;
    checks.push(equality_check(&format!("kflag{k}_duality"), &dgm_kf_xy, &dgm_kf_yx, 0..=k - 1, tol));

    // (e) log-scale bottleneck bounds from the multiplicative interleavings
    let bound = config.interleaving_constant.ln() + tol;
    let dgm_dr_xy_top = compute_persistence(&dr_xy, max_dim - 1)?;
    let dgm_dr_yx_top = compute_persistence(&dowker_rips_filtration(&rt, max_dim, inf)?, max_dim - 1)?;
    checks.push(log_bottleneck_check(
        "log_bottleneck_dr_xy_vs_dr_yx",
        &dgm_dr_xy_top,
        &dgm_dr_yx_top,
        max_dim - 1,
        bound,
        config.log_floor,
    ));
    checks.push(log_bottleneck_check(
        "log_bottleneck_dowker_vs_dowker_rips",
        &dgm_d_xy,
        &dgm_dr_xy_top,
        max_dim - 1,
        bound,
        config.log_floor,
    ));

    Ok(TheoremReport {
        instance: config.instance.clone(),
        seed: config.seed,
        checks,
    })
}

fn fmt_constant(c: f64) -> String {
    format!("{c}")
}

fn inclusion_check(d: &Filtration, dr: &Filtration, thresholds: &[f64], c: f64, tol: f64) -> Check {
    let mut failures = Vec::new();
    for &eps in thresholds {
        let d_eps = d.sublevel(eps);
        let dr_eps = dr.sublevel(eps);
        let d_scaled = d.sublevel(c * eps + tol);
        if let Some(s) = d_eps.iter().find(|s| !dr_eps.contains(*s)) {
            failures.push(format!("D_{eps} has {s:?} missing from DR_{eps}"));
        }
        if let Some(s) = dr_eps.iter().find(|s| !d_scaled.contains(*s)) {
            failures.push(format!("DR_{eps} has {s:?} missing from D_{}", c * eps));
        }
    }
    Check {
        name: "inclusions".into(),
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!(
                "D_eps <= DR_eps <= D_{{{}eps}} at {} thresholds",
                fmt_constant(c),
                thresholds.len()
            )
        } else {
            failures.truncate(3);
            failures.join("; ")
        },
    }
}

fn per_simplex_check(d: &Filtration, dr: &Filtration, c: f64, tol: f64) -> Check {
    let d_values = d.value_map();
    let mut worst: Option<String> = None;
    let mut compared = 0usize;
    for s in dr.iter() {
        let Some(&vd) = d_values.get(s.vertices.as_slice()) else { continue };
        compared += 1;
        if !(s.value <= vd + tol && vd <= c * s.value + tol) {
            worst.get_or_insert_with(|| format!("{:?}: DR {} vs D {}", s.vertices, s.value, vd));
        }
    }
    Check {
        name: "per_simplex_interleaving".into(),
        pass: worst.is_none(),
        detail: worst.unwrap_or_else(|| format!("value_DR <= value_D <= {}*value_DR on {compared} simplices", fmt_constant(c))),
    }
}

/// Smallest constant `c` with `value_D <= c * value_DR` on every simplex.
pub fn minimal_interleaving_constant(d: &Filtration, dr: &Filtration) -> f64 {
    let d_values = d.value_map();
    dr.iter()
        .filter_map(|s| {
            let vd = *d_values.get(s.vertices.as_slice())?;
            match (s.value > 0.0, vd > 0.0) {
                (true, _) => Some(vd / s.value),
                (false, true) => Some(f64::INFINITY),
                (false, false) => None,
            }
        })
        .fold(1.0, f64::max)
}

fn sharpness_check(d: &Filtration, dr: &Filtration, c: f64, tol: f64) -> Check {
    let needed = minimal_interleaving_constant(d, dr);
    let failing: Vec<String> = SHARPNESS_PROBES
        .iter()
        .filter(|&&probe| probe < c && needed > probe + tol)
        .map(|p| fmt_constant(*p))
        .collect();
    let detail = if failing.is_empty() {
        format!("minimal constant {needed:.6}")
    } else {
        format!(
            "minimal constant {needed:.6}; inclusion fails for c in [{}]",
            failing.join(", ")
        )
    };
    Check {
        name: "interleaving_sharpness".into(),
        pass: needed <= c + tol,
        detail,
    }
}

fn equality_check(
    name: &str,
    a: &PersistenceDiagram,
    b: &PersistenceDiagram,
    dims: std::ops::RangeInclusive<usize>,
    tol: f64,
) -> Check {
    let (lo, hi) = (*dims.start(), *dims.end());
    for dim in dims {
        let verdict = dimension_equal(a, b, dim, tol);
        if let Some(w) = verdict.witness {
            return Check {
                name: name.into(),
                pass: false,
                detail: format!(
                    "dim {dim}: unmatched ({}, {}) on the {:?} side",
                    w.point.birth, w.point.death, w.side
                ),
            };
        }
    }
    Check {
        name: name.into(),
        pass: true,
        detail: format!("diagrams equal in dims {lo}..={hi} (tol {tol:e})"),
    }
}

/// Informational: Dowker-Rips duality is not expected above dimension 1.
fn divergence_note(
    a: &PersistenceDiagram,
    b: &PersistenceDiagram,
    dims: std::ops::RangeInclusive<usize>,
    tol: f64,
) -> Check {
    let differing: Vec<String> = dims
        .clone()
        .filter(|&d| !dimension_equal(a, b, d, tol).equal)
        .map(|d| d.to_string())
        .collect();
    Check {
        name: "dowker_rips_higher_dims".into(),
        pass: true,
        detail: if differing.is_empty() {
            format!("diagrams agree in dims {}..={}", dims.start(), dims.end())
        } else {
            format!("expected divergence in dims [{}]", differing.join(", "))
        },
    }
}

fn log_bottleneck_check(
    name: &str,
    a: &PersistenceDiagram,
    b: &PersistenceDiagram,
    top_dim: usize,
    bound: f64,
    floor: f64,
) -> Check {
    let (la, lb) = match (log_rescale(a, floor), log_rescale(b, floor)) {
        (Ok(la), Ok(lb)) => (la, lb),
        (Err(e), _) | (_, Err(e)) => {
            return Check {
                name: name.into(),
                pass: false,
                detail: e.to_string(),
            }
        }
    };
    let distances: Vec<f64> = (0..=top_dim).map(|d| bottleneck(&la, &lb, d)).collect();
    let worst = distances.iter().copied().fold(0.0, f64::max);
    Check {
        name: name.into(),
        pass: worst <= bound,
        detail: format!(
            "log bottleneck per dim {:?}, bound {bound:.12}",
            distances.iter().map(|d| (d * 1e9).round() / 1e9).collect::<Vec<_>>()
        ),
    }
}

/// A random metric instance: uniform points in the unit square or cube.
#[derive(Debug, Clone)]
pub struct RandomInstance {
    pub seed: u64,
    pub ambient_dim: usize,
    pub xs: Vec<Vec<f64>>,
    pub ys: Vec<Vec<f64>>,
}

impl RandomInstance {
    /// Sizes drawn from `sizes`; ambient dimension 2 for even seeds, 3 for odd.
    pub fn generate(seed: u64, sizes: std::ops::RangeInclusive<usize>) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ambient_dim = if seed.is_multiple_of(2) { 2 } else { 3 };
        let n = rng.gen_range(sizes.clone());
        let m = rng.gen_range(sizes);
        let mut cloud = |count: usize| -> Vec<Vec<f64>> {
            (0..count)
                .map(|_| (0..ambient_dim).map(|_| rng.gen::<f64>()).collect())
                .collect()
        };
        let xs = cloud(n);
        let ys = cloud(m);
        Self {
            seed,
            ambient_dim,
            xs,
            ys,
        }
    }

    pub fn matrix(&self) -> CrossDistanceMatrix {
        cross_distances(&self.xs, &self.ys, Metric::Euclidean).expect("nonempty, equal dimensions")
    }

    pub fn label(&self) -> String {
        format!("random {}x{} in R^{}", self.xs.len(), self.ys.len(), self.ambient_dim)
    }
}

/// Seeded uniform points in the unit square with `n` and `m` fixed.
pub fn random_planar_matrix(seed: u64, n: usize, m: usize) -> CrossDistanceMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cloud = |count: usize| -> Vec<Vec<f64>> {
        (0..count).map(|_| vec![rng.gen::<f64>(), rng.gen::<f64>()]).collect()
    };
    let xs = cloud(n);
    let ys = cloud(m);
    cross_distances(&xs, &ys, Metric::Euclidean).expect("nonempty")
}
