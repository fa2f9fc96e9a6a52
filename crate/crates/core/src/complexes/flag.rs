use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::relations::CrossDistanceMatrix;

use super::dowker::{check_threshold, dowker_skeleton};
use super::{FilteredSimplex, Filtration, FiltrationKind, DEFAULT_SIMPLEX_CAP};

/// Vertex- and edge-weighted graph, the input to flag expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    vertex_values: Vec<f64>,
    edge_values: BTreeMap<(usize, usize), f64>,
}

impl WeightedGraph {
    /// Builds a graph, normalizing edge keys to `(lo, hi)`.
    ///
    /// Every edge value must be at least the values of both endpoints.
    pub fn new(
        vertex_values: Vec<f64>,
        edges: impl IntoIterator<Item = ((usize, usize), f64)>,
    ) -> Result<Self> {
        let n = vertex_values.len();
        if let Some(v) = vertex_values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::InvalidParameter(format!("vertex value {v}")));
        }
        let mut edge_values = BTreeMap::new();
        for ((a, b), w) in edges {
            let (i, k) = (a.min(b), a.max(b));
            if i == k || k >= n {
                return Err(Error::InvalidParameter(format!("bad edge ({a}, {b}) on {n} vertices")));
            }
            if !w.is_finite() || w < vertex_values[i].max(vertex_values[k]) {
                return Err(Error::InvalidParameter(format!(
                    "edge ({i}, {k}) value {w} is below an endpoint value"
                )));
            }
            edge_values.insert((i, k), w);
        }
        Ok(Self {
            vertex_values,
            edge_values,
        })
    }

    pub(super) fn from_parts_unchecked(vertex_values: Vec<f64>, edge_values: BTreeMap<(usize, usize), f64>) -> Self {
        Self {
            vertex_values,
            edge_values,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_values.len()
    }

    pub fn vertex_values(&self) -> &[f64] {
        &self.vertex_values
    }

    pub fn edge_value(&self, i: usize, k: usize) -> Option<f64> {
        self.edge_values.get(&(i.min(k), i.max(k))).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.edge_values.iter().map(|(&e, &w)| (e, w))
    }

    /// For each vertex, the higher-indexed neighbors reachable within `threshold`, sorted.
    fn upper_neighbors(&self, threshold: f64) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.n_vertices()];
        // BTreeMap iteration is ordered by (i, k), so each list comes out sorted
        for (&(i, k), &w) in &self.edge_values {
            if w <= threshold {
                adj[i].push((k, w));
            }
        }
        adj
    }
}

/// Flag (clique) expansion of `graph` up to dimension `max_dim`.
///
/// A vertex set is a simplex iff all its edges are present; its value is the
/// largest of its edge values (the vertex value for 0-simplices).
pub fn flag_expansion(graph: &WeightedGraph, max_dim: usize) -> Result<Filtration> {
    flag_expansion_capped(graph, max_dim, f64::INFINITY, DEFAULT_SIMPLEX_CAP)
}

/// [`flag_expansion`] restricted to values at most `threshold`, with a simplex cap.
pub fn flag_expansion_capped(
    graph: &WeightedGraph,
    max_dim: usize,
    threshold: f64,
    cap: usize,
) -> Result<Filtration> {
    check_threshold(threshold)?;
    let adjacency = graph.upper_neighbors(threshold);
    let mut expander = Expander {
        adjacency: &adjacency,
        max_size: max_dim + 1,
        cap,
        out: Vec::new(),
    };
    let mut simplex = Vec::with_capacity(max_dim + 1);
    for (v, &value) in graph.vertex_values.iter().enumerate() {
        if value > threshold {
            continue;
        }
        simplex.push(v);
        expander.emit(&simplex, value)?;
        if max_dim >= 1 {
            let candidates: Vec<(usize, f64)> = adjacency[v]
                .iter()
                .map(|&(u, w)| (u, w.max(value)))
                .collect();
            expander.expand(&mut simplex, value, &candidates)?;
        }
        simplex.pop();
    }
    Ok(Filtration::new(expander.out, max_dim, FiltrationKind::DowkerRips))
}

struct Expander<'a> {
    adjacency: &'a [Vec<(usize, f64)>],
    max_size: usize,
    cap: usize,
    out: Vec<FilteredSimplex>,
}

impl Expander<'_> {
    fn emit(&mut self, simplex: &[usize], value: f64) -> Result<()> {
        if self.out.len() >= self.cap {
            return Err(Error::ResourceLimit {
                what: "flag simplices",
                count: self.out.len() as u128 + 1,
                cap: self.cap as u128,
            });
        }
        self.out.push(FilteredSimplex::new(simplex.to_vec(), value));
        Ok(())
    }

    /// `candidates` are the common upper neighbors of every vertex in
    /// `simplex`, each paired with its largest edge value into the simplex.
    fn expand(&mut self, simplex: &mut Vec<usize>, value: f64, candidates: &[(usize, f64)]) -> Result<()> {
        for (idx, &(u, reach)) in candidates.iter().enumerate() {
            let grown = value.max(reach);
            simplex.push(u);
            self.emit(simplex, grown)?;
            if simplex.len() < self.max_size {
                let next = intersect(&candidates[idx + 1..], &self.adjacency[u]);
                if !next.is_empty() {
                    self.expand(simplex, grown, &next)?;
                }
            }
            simplex.pop();
        }
        Ok(())
    }
}

/// Merge-intersects two index-sorted lists, keeping the larger value.
fn intersect(candidates: &[(usize, f64)], neighbors: &[(usize, f64)]) -> Vec<(usize, f64)> {
    let mut out = Vec::new();
    let (mut a, mut b) = (0, 0);
    while a < candidates.len() && b < neighbors.len() {
        let (ca, wa) = candidates[a];
        let (nb, wb) = neighbors[b];
        match ca.cmp(&nb) {
            std::cmp::Ordering::Less => a += 1,
            std::cmp::Ordering::Greater => b += 1,
            std::cmp::Ordering::Equal => {
                out.push((ca, wa.max(wb)));
                a += 1;
                b += 1;
            }
        }
    }
    out
}

/// Filtered Dowker-Rips complex: flag expansion of the Dowker 1-skeleton of `r`.
pub fn dowker_rips_filtration(r: &CrossDistanceMatrix, max_dim: usize, threshold: f64) -> Result<Filtration> {
    dowker_rips_filtration_capped(r, max_dim, threshold, DEFAULT_SIMPLEX_CAP)
}

pub fn dowker_rips_filtration_capped(
    r: &CrossDistanceMatrix,
    max_dim: usize,
    threshold: f64,
    cap: usize,
) -> Result<Filtration> {
    flag_expansion_capped(&dowker_skeleton(r), max_dim, threshold, cap)
}
