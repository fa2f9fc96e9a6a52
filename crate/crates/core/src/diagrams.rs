//! Comparing and vectorizing persistence diagrams.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::persistence::{PersistenceDiagram, PersistencePair};

/// Default clamp for [`log_rescale`].
pub const DEFAULT_LOG_FLOOR: f64 = 1e-12;

/// Which diagram an unmatched point came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub dim: usize,
    pub side: Side,
    pub point: PersistencePair,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Equality {
    pub equal: bool,
    pub witness: Option<Witness>,
}

/// Multiset equality up to `tol` per coordinate, dimension by dimension.
///
/// Infinite deaths only pair with infinite deaths. When the diagrams differ
/// the witness is a point left unmatched by a maximum matching, preferring
/// one from `a`.
pub fn diagrams_equal(a: &PersistenceDiagram, b: &PersistenceDiagram, tol: f64) -> Equality {
    let dims = a.num_dims().max(b.num_dims());
    for dim in 0..dims {
        if let Some(witness) = dimension_witness(a.pairs(dim), b.pairs(dim), tol, dim) {
            return Equality {
                equal: false,
                witness: Some(witness),
            };
        }
    }
    Equality {
        equal: true,
        witness: None,
    }
}

/// [`diagrams_equal`] restricted to one dimension.
pub fn dimension_equal(a: &PersistenceDiagram, b: &PersistenceDiagram, dim: usize, tol: f64) -> Equality {
    let witness = dimension_witness(a.pairs(dim), b.pairs(dim), tol, dim);
    Equality {
        equal: witness.is_none(),
        witness,
    }
}

fn dimension_witness(a: &[PersistencePair], b: &[PersistencePair], tol: f64, dim: usize) -> Option<Witness> {
    let close = |p: &PersistencePair, q: &PersistencePair| {
        let deaths = if p.is_essential() || q.is_essential() {
            p.death == q.death
        } else {
            (p.death - q.death).abs() <= tol
        };
        deaths && (p.birth - q.birth).abs() <= tol
    };
    let adjacency: Vec<Vec<usize>> = a
        .iter()
        .map(|p| (0..b.len()).filter(|&j| close(p, &b[j])).collect())
        .collect();
    let matching = BipartiteMatching::maximum(&adjacency, b.len());
    if let Some(i) = matching.left.iter().position(Option::is_none) {
        return Some(Witness {
            dim,
            side: Side::Left,
            point: a[i],
        });
    }
    matching.right.iter().position(Option::is_none).map(|j| Witness {
        dim,
        side: Side::Right,
        point: b[j],
    })
}

/// Maximum bipartite matching by augmenting paths.
struct BipartiteMatching {
    left: Vec<Option<usize>>,
    right: Vec<Option<usize>>,
}

impl BipartiteMatching {
    fn maximum(adjacency: &[Vec<usize>], n_right: usize) -> Self {
        let mut m = Self {
            left: vec![None; adjacency.len()],
            right: vec![None; n_right],
        };
        let mut visited = vec![false; n_right];
        for u in 0..adjacency.len() {
            visited.iter_mut().for_each(|v| *v = false);
            m.augment(u, adjacency, &mut visited);
        }
        m
    }

    fn augment(&mut self, u: usize, adjacency: &[Vec<usize>], visited: &mut [bool]) -> bool {
        for &v in &adjacency[u] {
            if visited[v] {
                continue;
            }
            visited[v] = true;
            let free = match self.right[v] {
                None => true,
                Some(w) => self.augment(w, adjacency, visited),
            };
            if free {
                self.left[u] = Some(v);
                self.right[v] = Some(u);
                return true;
            }
        }
        false
    }

    fn size(&self) -> usize {
        self.left.iter().flatten().count()
    }
}

fn linf(p: &PersistencePair, q: &PersistencePair) -> f64 {
    (p.birth - q.birth).abs().max((p.death - q.death).abs())
}

fn to_diagonal(p: &PersistencePair) -> f64 {
    (p.death - p.birth) / 2.0
}

/// Exact bottleneck distance in dimension `dim` under the L-infinity ground
/// metric, with the diagonal available to both sides.
///
/// Essential classes are matched among themselves by birth; differing
/// essential counts give `f64::INFINITY`.
pub fn bottleneck(a: &PersistenceDiagram, b: &PersistenceDiagram, dim: usize) -> f64 {
    bottleneck_pairs(a.pairs(dim), b.pairs(dim))
}

/// Bottleneck distance over every dimension present in either diagram.
pub fn bottleneck_all(a: &PersistenceDiagram, b: &PersistenceDiagram) -> f64 {
    (0..a.num_dims().max(b.num_dims()))
        .map(|d| bottleneck(a, b, d))
        .fold(0.0, f64::max)
}

pub fn bottleneck_pairs(a: &[PersistencePair], b: &[PersistencePair]) -> f64 {
    let (a_inf, a_fin): (Vec<_>, Vec<_>) = a.iter().copied().partition(PersistencePair::is_essential);
    let (b_inf, b_fin): (Vec<_>, Vec<_>) = b.iter().copied().partition(PersistencePair::is_essential);
    if a_inf.len() != b_inf.len() {
        return f64::INFINITY;
    }
    let essential = essential_distance(&a_inf, &b_inf);
    essential.max(finite_bottleneck(&a_fin, &b_fin))
}

/// Sorted matching of births is optimal for the 1-D L-infinity bottleneck.
fn essential_distance(a: &[PersistencePair], b: &[PersistencePair]) -> f64 {
    let mut births_a: Vec<f64> = a.iter().map(|p| p.birth).collect();
    let mut births_b: Vec<f64> = b.iter().map(|p| p.birth).collect();
    births_a.sort_by(f64::total_cmp);
    births_b.sort_by(f64::total_cmp);
    births_a
        .iter()
        .zip(&births_b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn finite_bottleneck(a: &[PersistencePair], b: &[PersistencePair]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let mut candidates: Vec<f64> = a
        .iter()
        .flat_map(|p| b.iter().map(move |q| linf(p, q)))
        .chain(a.iter().chain(b).map(to_diagonal))
        .collect();
    candidates.push(0.0);
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    // the largest candidate always admits the all-diagonal matching
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect_within(a, b, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

/// Whether `a + diag(b)` and `b + diag(a)` admit a perfect matching with every
/// edge of cost at most `delta`.
fn perfect_within(a: &[PersistencePair], b: &[PersistencePair], delta: f64) -> bool {
    let (p, q) = (a.len(), b.len());
    // left: a_0..a_p, then the diagonal copies of b; right: b_0..b_q, then the diagonal copies of a
    let mut adjacency: Vec<Vec<usize>> = Vec::with_capacity(p + q);
    for (i, x) in a.iter().enumerate() {
        let mut row: Vec<usize> = (0..q).filter(|&j| linf(x, &b[j]) <= delta).collect();
        if to_diagonal(x) <= delta {
            row.push(q + i);
        }
        adjacency.push(row);
    }
    for (j, y) in b.iter().enumerate() {
        let mut row = Vec::with_capacity(p + 1);
        if to_diagonal(y) <= delta {
            row.push(j);
        }
        row.extend(q..q + p);
        adjacency.push(row);
    }
    BipartiteMatching::maximum(&adjacency, q + p).size() == p + q
}

/// Coordinate-wise `v -> ln(max(v, floor))`; infinite deaths stay infinite.
///
/// A multiplicative `c`-interleaving becomes an additive `ln c`-interleaving
/// on the rescaled diagrams. Positive values below `10 * floor` are rejected
/// since clamping them would distort the comparison.
pub fn log_rescale(dgm: &PersistenceDiagram, floor: f64) -> Result<PersistenceDiagram> {
    if !(floor > 0.0 && floor.is_finite()) {
        return Err(Error::InvalidParameter(format!("log floor must be positive, got {floor}")));
    }
    for d in 0..dgm.num_dims() {
        for p in dgm.pairs(d) {
            for v in [p.birth, p.death] {
                if v > 0.0 && v < 10.0 * floor {
                    return Err(Error::InvalidParameter(format!(
                        "value {v} in dimension {d} is within 10x of the log floor {floor}"
                    )));
                }
            }
        }
    }
    Ok(dgm.map_values(|v| v.max(floor).ln()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Weight {
    /// Persistence divided by the top of the persistence range, capped at 1.
    #[default]
    LinearInPersistence,
    Constant,
}

/// What to do with bars that never die.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum EssentialPolicy {
    #[default]
    Drop,
    /// Treat the bar as having the largest persistence in range.
    Clamp,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PersistenceImageParams {
    /// `(rows, cols)`: rows run over persistence, columns over birth.
    pub resolution: (usize, usize),
    pub bandwidth: f64,
    pub birth_range: (f64, f64),
    pub pers_range: (f64, f64),
    pub weight: Weight,
    pub essential: EssentialPolicy,
}

impl PersistenceImageParams {
    pub fn validate(&self) -> Result<()> {
        let (rows, cols) = self.resolution;
        let ok_range = |(lo, hi): (f64, f64)| lo.is_finite() && hi.is_finite() && lo < hi;
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParameter("image resolution must be at least 1x1".into()));
        }
        if !(self.bandwidth > 0.0 && self.bandwidth.is_finite()) {
            return Err(Error::InvalidParameter(format!("bandwidth {}", self.bandwidth)));
        }
        if !ok_range(self.birth_range) || !ok_range(self.pers_range) {
            return Err(Error::InvalidParameter("image ranges must be finite and non-degenerate".into()));
        }
        Ok(())
    }

    /// 20x20 grid covering the finite bars of `dim`, bandwidth 5% of the
    /// persistence range, linear weight.
    pub fn fit(dgm: &PersistenceDiagram, dim: usize) -> Self {
        let finite: Vec<&PersistencePair> = dgm.pairs(dim).iter().filter(|p| !p.is_essential()).collect();
        let (mut b_lo, mut b_hi) = finite
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.birth), hi.max(p.birth)));
        let mut p_hi = finite.iter().map(|p| p.persistence()).fold(0.0, f64::max);
        if !(b_lo.is_finite() && b_hi > b_lo) {
            let center = if b_lo.is_finite() { b_lo } else { 0.0 };
            b_lo = center - 0.5;
            b_hi = center + 0.5;
        }
        if p_hi <= 0.0 {
            p_hi = 1.0;
        }
        Self {
            resolution: (20, 20),
            bandwidth: 0.05 * p_hi,
            birth_range: (b_lo, b_hi),
            pers_range: (0.0, p_hi),
            weight: Weight::LinearInPersistence,
            essential: EssentialPolicy::Drop,
        }
    }

    fn weight_of(&self, persistence: f64) -> f64 {
        match self.weight {
            Weight::Constant => 1.0,
            Weight::LinearInPersistence => (persistence / self.pers_range.1).clamp(0.0, 1.0),
        }
    }
}

/// Row-major `rows x cols` grid of cell masses.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceImage {
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<f64>,
}

impl PersistenceImage {
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols + col]
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// One grid row per line, comma separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.values.chunks(self.cols) {
            let line: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// Persistence image of dimension `dim`.
///
/// Each bar maps to `(birth, persistence)` and contributes an isotropic
/// Gaussian of standard deviation `bandwidth`, scaled by its weight; each cell
/// holds the midpoint-rule integral of the sum over that cell.
pub fn persistence_image(dgm: &PersistenceDiagram, dim: usize, params: &PersistenceImageParams) -> Result<PersistenceImage> {
    params.validate()?;
    let (rows, cols) = params.resolution;
    let (b_lo, b_hi) = params.birth_range;
    let (p_lo, p_hi) = params.pers_range;
    let db = (b_hi - b_lo) / cols as f64;
    let dp = (p_hi - p_lo) / rows as f64;
    let sigma2 = params.bandwidth * params.bandwidth;
    let norm = db * dp / (2.0 * std::f64::consts::PI * sigma2);

    let mut values = vec![0.0; rows * cols];
    for p in dgm.pairs(dim) {
        let persistence = if p.is_essential() {
            match params.essential {
                EssentialPolicy::Drop => continue,
                EssentialPolicy::Clamp => p_hi,
            }
        } else {
            p.persistence()
        };
        let w = params.weight_of(persistence);
        if w == 0.0 {
            continue;
        }
        for r in 0..rows {
            let y = p_lo + (r as f64 + 0.5) * dp - persistence;
            let gy = (-y * y / (2.0 * sigma2)).exp();
            for c in 0..cols {
                let x = b_lo + (c as f64 + 0.5) * db - p.birth;
                values[r * cols + c] += w * norm * gy * (-x * x / (2.0 * sigma2)).exp();
            }
        }
    }
    Ok(PersistenceImage { rows, cols, values })
}
