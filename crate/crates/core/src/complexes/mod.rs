//! Filtered Dowker, Dowker-Rips and k-flagified Dowker complexes.
//!
//! Filtrations are stored as lists of simplices tagged with the smallest
//! threshold at which they appear, so a single [`Filtration`] stands for the
//! entire sublevel family `{K_eps}`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod dowker;
mod flag;
mod kflag;

pub use dowker::{dowker_filtration, dowker_filtration_capped, dowker_skeleton};
pub use flag::{dowker_rips_filtration, dowker_rips_filtration_capped, flag_expansion, flag_expansion_capped, WeightedGraph};
pub use kflag::{kflag_filtration, kflag_filtration_capped};

/// Default cap on the number of simplices a construction may produce.
pub const DEFAULT_SIMPLEX_CAP: usize = 40_000_000;

/// A simplex on the vertex set `X` together with its appearance value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilteredSimplex {
    pub vertices: Vec<usize>,
    pub value: f64,
}

impl FilteredSimplex {
    pub fn new(vertices: Vec<usize>, value: f64) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self { vertices, value }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Codimension-one faces, each with one vertex removed (vertex order kept).
    pub fn facets(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let len = self.vertices.len();
        (0..if len > 1 { len } else { 0 }).map(move |skip| {
            self.vertices
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect()
        })
    }

    /// The reduction order: value, then dimension, then lexicographic vertices.
    pub fn filtration_cmp(&self, other: &Self) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then(self.vertices.len().cmp(&other.vertices.len()))
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "k", rename_all = "snake_case")]
pub enum FiltrationKind {
    Dowker,
    DowkerRips,
    KFlag(usize),
}

impl fmt::Display for FiltrationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationKind::Dowker => f.write_str("dowker"),
            FiltrationKind::DowkerRips => f.write_str("dowker-rips"),
            FiltrationKind::KFlag(k) => write!(f, "kflag({k})"),
        }
    }
}

/// A face-closed, monotone, totally ordered list of filtered simplices.
#[derive(Debug, Clone, PartialEq)]
pub struct Filtration {
    simplices: Vec<FilteredSimplex>,
    max_dim: usize,
    kind: FiltrationKind,
}

impl Filtration {
    /// Sorts `simplices` into reduction order. Does not check closure; see [`Filtration::validate`].
    pub fn new(mut simplices: Vec<FilteredSimplex>, max_dim: usize, kind: FiltrationKind) -> Self {
        simplices.sort_unstable_by(FilteredSimplex::filtration_cmp);
        Self {
            simplices,
            max_dim,
            kind,
        }
    }

    pub fn simplices(&self) -> &[FilteredSimplex] {
        &self.simplices
    }

    pub fn into_simplices(self) -> Vec<FilteredSimplex> {
        self.simplices
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FilteredSimplex> {
        self.simplices.iter()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn kind(&self) -> FiltrationKind {
        self.kind
    }

    /// Number of simplices in each dimension `0..=max_dim`.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_dim + 1];
        for s in &self.simplices {
            counts[s.dim()] += 1;
        }
        counts
    }

    /// Vertex list to value lookup.
    pub fn value_map(&self) -> HashMap<&[usize], f64> {
        self.simplices
            .iter()
            .map(|s| (s.vertices.as_slice(), s.value))
            .collect()
    }

    /// The complex `K_eps`: every simplex with value at most `eps`.
    pub fn sublevel(&self, eps: f64) -> BTreeSet<Vec<usize>> {
        self.simplices
            .iter()
            .take_while(|s| s.value <= eps)
            .map(|s| s.vertices.clone())
            .collect()
    }

    /// Sorted distinct simplex values.
    pub fn critical_values(&self) -> Vec<f64> {
        let mut values: Vec<f64> = self.simplices.iter().map(|s| s.value).collect();
        values.dedup();
        values
    }

    /// Checks face closure, monotonicity and the total order.
    pub fn validate(&self) -> Result<()> {
        validate_order(&self.simplices)?;
        for s in &self.simplices {
            if s.dim() > self.max_dim {
                return Err(Error::InvalidFiltration(format!(
                    "simplex {:?} exceeds max_dim {}",
                    s.vertices, self.max_dim
                )));
            }
        }
        Ok(())
    }

    /// One line per simplex: `value dim v0 v1 ... vk`.
    pub fn to_debug_lines(&self) -> String {
        let mut out = String::new();
        for s in &self.simplices {
            out.push_str(&format!("{} {}", s.value, s.dim()));
            for v in &s.vertices {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Verifies that `simplices`, in the given order, is a valid reduction order:
/// vertices strictly increasing, values finite and nonnegative, every facet
/// present earlier with a value not exceeding its coface.
pub fn validate_order(simplices: &[FilteredSimplex]) -> Result<()> {
    indexed_boundaries(simplices, 0).map(|_| ())
}

/// Validates like [`validate_order`] and returns, for every simplex of
/// dimension `1..=boundary_dim`, the sorted positions of its facets.
/// Other entries are left empty.
pub(crate) fn indexed_boundaries(simplices: &[FilteredSimplex], boundary_dim: usize) -> Result<Vec<Vec<usize>>> {
    let mut index = SimplexIndex::with_capacity(simplices.len());
    let mut boundaries = vec![Vec::new(); simplices.len()];
    let mut facet = Vec::new();
    for (pos, s) in simplices.iter().enumerate() {
        if s.vertices.is_empty() || s.vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidFiltration(format!(
                "vertices {:?} are not strictly increasing",
                s.vertices
            )));
        }
        if !(s.value.is_finite() && s.value >= 0.0) {
            return Err(Error::InvalidFiltration(format!(
                "simplex {:?} has value {}",
                s.vertices, s.value
            )));
        }
        let len = s.vertices.len();
        if len > 1 {
            let keep = s.dim() <= boundary_dim;
            for skip in 0..len {
                facet.clear();
                facet.extend(s.vertices.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                let Some(at) = index.get(&facet) else {
                    return Err(Error::InvalidFiltration(format!(
                        "facet {facet:?} of {:?} is missing or comes later",
                        s.vertices
                    )));
                };
                let v = simplices[at].value;
                if v > s.value {
                    return Err(Error::InvalidFiltration(format!(
                        "facet {facet:?} has value {v} above its coface {:?} at {}",
                        s.vertices, s.value
                    )));
                }
                if keep {
                    boundaries[pos].push(at);
                }
            }
            boundaries[pos].sort_unstable();
        }
        if index.insert(&s.vertices, pos).is_some() {
            return Err(Error::InvalidFiltration(format!("duplicate simplex {:?}", s.vertices)));
        }
    }
    Ok(boundaries)
}

/// Vertex list to position map. Lists of at most 8 vertices below 65535 are
/// packed into a single `u128` key.
struct SimplexIndex {
    packed: FxHashMap<u128, usize>,
    general: FxHashMap<Vec<usize>, usize>,
}

impl SimplexIndex {
    fn with_capacity(capacity: usize) -> Self {
        Self {
            packed: FxHashMap::with_capacity_and_hasher(capacity, Default::default()),
            general: FxHashMap::default(),
        }
    }

    fn pack(vertices: &[usize]) -> Option<u128> {
        if vertices.len() > 8 {
            return None;
        }
        vertices.iter().try_fold(0u128, |key, &v| {
            (v < 0xffff).then(|| (key << 16) | (v as u128 + 1))
        })
    }

    fn get(&self, vertices: &[usize]) -> Option<usize> {
        match Self::pack(vertices) {
            Some(key) => self.packed.get(&key).copied(),
            None => self.general.get(vertices).copied(),
        }
    }

    fn insert(&mut self, vertices: &[usize], pos: usize) -> Option<usize> {
        match Self::pack(vertices) {
            Some(key) => self.packed.insert(key, pos),
            None => self.general.insert(vertices.to_vec(), pos),
        }
    }
}

/// `sum_{s=1}^{size} C(n, s)`, saturating.
pub(crate) fn subset_count(n: usize, size: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for s in 1..=size.min(n) {
        binom = binom.saturating_mul((n - s + 1) as u128) / s as u128;
        total = total.saturating_add(binom);
    }
    total
}
