use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::relations::CrossDistanceMatrix;

use super::{subset_count, FilteredSimplex, Filtration, FiltrationKind, WeightedGraph, DEFAULT_SIMPLEX_CAP};

/// Filtered Dowker complex on the rows of `r`.
///
/// A vertex set `s` appears at `min_j max_{i in s} r[i][j]`, the first scale at
/// which one column witnesses all of its rows. Only simplices of dimension at
/// most `max_dim` with value at most `threshold` are produced; pass
/// `f64::INFINITY` for no truncation.
pub fn dowker_filtration(r: &CrossDistanceMatrix, max_dim: usize, threshold: f64) -> Result<Filtration> {
    dowker_filtration_capped(r, max_dim, threshold, DEFAULT_SIMPLEX_CAP)
}

pub fn dowker_filtration_capped(
    r: &CrossDistanceMatrix,
    max_dim: usize,
    threshold: f64,
    cap: usize,
) -> Result<Filtration> {
    let simplices = dowker_simplices(r, max_dim + 1, threshold, cap)?;
    Ok(Filtration::new(simplices, max_dim, FiltrationKind::Dowker))
}

/// Depth-first enumeration of vertex subsets of size at most `max_size`,
/// carrying the column-wise running maximum. Supersets of a pruned subset are
/// never visited because the value is monotone under adding vertices.
pub(super) fn dowker_simplices(
    r: &CrossDistanceMatrix,
    max_size: usize,
    threshold: f64,
    cap: usize,
) -> Result<Vec<FilteredSimplex>> {
    check_threshold(threshold)?;
    let n = r.n_rows();
    let m = r.n_cols();
    if threshold == f64::INFINITY {
        let candidates = subset_count(n, max_size);
        if candidates > cap as u128 {
            return Err(Error::ResourceLimit {
                what: "Dowker candidate subsets",
                count: candidates,
                cap: cap as u128,
            });
        }
    }

    let mut out = Vec::new();
    // column maxima for each depth of the current path
    let mut stack: Vec<Vec<f64>> = vec![vec![0.0; m]; max_size + 1];
    let mut path: Vec<usize> = Vec::with_capacity(max_size);
    let mut walker = Walker {
        r,
        max_size,
        threshold,
        cap,
        out: &mut out,
    };
    walker.descend(0, &mut path, &mut stack)?;
    Ok(out)
}

struct Walker<'a> {
    r: &'a CrossDistanceMatrix,
    max_size: usize,
    threshold: f64,
    cap: usize,
    out: &'a mut Vec<FilteredSimplex>,
}

impl Walker<'_> {
    fn descend(&mut self, start: usize, path: &mut Vec<usize>, stack: &mut [Vec<f64>]) -> Result<()> {
        let depth = path.len();
        for v in start..self.r.n_rows() {
            let row = self.r.row(v);
            let (lower, upper) = stack.split_at_mut(depth + 1);
            let next = &mut upper[0];
            let mut value = f64::INFINITY;
            if depth == 0 {
                next.copy_from_slice(row);
                value = self.r.row_min(v);
            } else {
                for ((dst, &prev), &x) in next.iter_mut().zip(&lower[depth]).zip(row) {
                    let w = prev.max(x);
                    *dst = w;
                    value = value.min(w);
                }
            }
            if value > self.threshold {
                continue;
            }
            path.push(v);
            if self.out.len() >= self.cap {
                return Err(Error::ResourceLimit {
                    what: "Dowker simplices",
                    count: self.out.len() as u128 + 1,
                    cap: self.cap as u128,
                });
            }
            self.out.push(FilteredSimplex::new(path.clone(), value));
            if path.len() < self.max_size {
                self.descend(v + 1, path, stack)?;
            }
            path.pop();
        }
        Ok(())
    }
}

pub(super) fn check_threshold(threshold: f64) -> Result<()> {
    if threshold.is_nan() || threshold < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "threshold must be nonnegative or infinite, got {threshold}"
        )));
    }
    Ok(())
}

/// Dowker 1-skeleton with vertex and edge appearance values.
///
/// This graph is all the Dowker-Rips filtration depends on.
pub fn dowker_skeleton(r: &CrossDistanceMatrix) -> WeightedGraph {
    let n = r.n_rows();
    let vertex_values: Vec<f64> = (0..n).map(|i| r.row_min(i)).collect();
    let mut edges = BTreeMap::new();
    for i in 0..n {
        let ri = r.row(i);
        for k in i + 1..n {
            let value = ri
                .iter()
                .zip(r.row(k))
                .map(|(a, b)| a.max(*b))
                .fold(f64::INFINITY, f64::min);
            edges.insert((i, k), value);
        }
    }
    WeightedGraph::from_parts_unchecked(vertex_values, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn value_of(f: &Filtration, vertices: &[usize]) -> Option<f64> {
        f.iter().find(|s| s.vertices == vertices).map(|s| s.value)
    }

    #[test]
    fn c6_values() {
        let r = fixtures::c6_matrix();
        let f = dowker_filtration(&r, 2, f64::INFINITY).unwrap();
        f.validate().unwrap();
        assert_eq!(value_of(&f, &[0, 1]), Some(1.0));
        assert_eq!(value_of(&f, &[0, 2]), Some(1.0));
        assert_eq!(value_of(&f, &[0, 1, 2]), Some(3.0));
        for v in 0..3 {
            assert_eq!(value_of(&f, &[v]), Some(1.0));
        }
        assert_eq!(f.len(), 7);
    }

    #[test]
    fn threshold_prunes_supersets() {
        let r = fixtures::c6_matrix();
        let f = dowker_filtration(&r, 2, 2.0).unwrap();
        assert_eq!(f.counts_by_dim(), vec![3, 3, 0]);
        let f = dowker_filtration(&r, 2, 0.5).unwrap();
        assert!(f.is_empty());
    }

    #[test]
    fn max_dim_zero_is_vertices_only() {
        let r = fixtures::tetrahedron_matrix();
        let f = dowker_filtration(&r, 0, f64::INFINITY).unwrap();
        assert_eq!(f.counts_by_dim(), vec![4]);
        assert!(f.iter().all(|s| s.value == 0.5));
    }

    #[test]
    fn resource_guard_trips_on_unbounded_enumeration() {
        let r = CrossDistanceMatrix::from_row_major(30, 1, vec![1.0; 30]).unwrap();
        let err = dowker_filtration_capped(&r, 5, f64::INFINITY, 1000).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        // a finite threshold still hits the running cap
        let err = dowker_filtration_capped(&r, 5, 2.0, 1000).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }

    #[test]
    fn rejects_negative_threshold() {
        let r = fixtures::c6_matrix();
        assert!(dowker_filtration(&r, 2, -1.0).is_err());
        assert!(dowker_filtration(&r, 2, f64::NAN).is_err());
    }

    #[test]
    fn skeleton_values() {
        let g = dowker_skeleton(&fixtures::c6_matrix());
        assert_eq!(g.vertex_values(), &[1.0, 1.0, 1.0]);
        assert_eq!(g.edges().count(), 3);
        assert!(g.edges().all(|(_, w)| w == 1.0));

        let g = dowker_skeleton(&fixtures::tetrahedron_matrix());
        assert_eq!(g.edges().count(), 6);
        assert!(g.edges().all(|(_, w)| w == 0.5));

        let single = CrossDistanceMatrix::from_rows(vec![vec![2.5]]).unwrap();
        let g = dowker_skeleton(&single);
        assert_eq!(g.vertex_values(), &[2.5]);
        assert_eq!(g.edges().count(), 0);
    }

    #[test]
    fn duplicate_rows_are_kept() {
        let r = CrossDistanceMatrix::from_rows(vec![vec![0.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let f = dowker_filtration(&r, 1, f64::INFINITY).unwrap();
        assert_eq!(value_of(&f, &[0, 1]), Some(0.0));
    }
}
