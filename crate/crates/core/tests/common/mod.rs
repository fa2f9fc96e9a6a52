//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use dowker_rips::{CrossDistanceMatrix, PersistencePair};
use proptest::prelude::*;

/// Small matrices, half of them on an integer grid so ties are common.
pub fn small_matrix(max_side: usize) -> impl Strategy<Value = CrossDistanceMatrix> {
    (1..=max_side, 1..=max_side, any::<bool>())
        .prop_flat_map(|(n, m, grid)| {
            let entry = if grid {
                (0u32..5).prop_map(f64::from).boxed()
            } else {
                (0.0..10.0f64).boxed()
            };
            (Just(n), Just(m), prop::collection::vec(entry, n * m))
        })
        .prop_map(|(n, m, v)| CrossDistanceMatrix::from_row_major(n, m, v).unwrap())
}

/// Cross distances between two random planar clouds.
pub fn metric_matrix(max_side: usize) -> impl Strategy<Value = CrossDistanceMatrix> {
    let cloud = |k| prop::collection::vec(prop::collection::vec(0.0..1.0f64, 2), k);
    (1..=max_side, 1..=max_side)
        .prop_flat_map(move |(n, m)| (cloud(n), cloud(m)))
        .prop_map(|(xs, ys)| {
            dowker_rips::relations::cross_distances(&xs, &ys, dowker_rips::Metric::Euclidean).unwrap()
        })
}

/// Minimax assignment on the diagonal-augmented bipartite graph by a DP
/// over subsets of the right side.
pub fn brute_bottleneck(a: &[PersistencePair], b: &[PersistencePair]) -> f64 {
    let (p, q) = (a.len(), b.len());
    let size = p + q;
    let half = |x: &PersistencePair| (x.death - x.birth) / 2.0;
    let cost = |i: usize, j: usize| -> f64 {
        match (i < p, j < q) {
            (true, true) => {
                let (x, y) = (&a[i], &b[j]);
                let db = (x.birth - y.birth).abs();
                let dd = match (x.death.is_infinite(), y.death.is_infinite()) {
                    (true, true) => 0.0,
                    (false, false) => (x.death - y.death).abs(),
                    _ => f64::INFINITY,
                };
                db.max(dd)
            }
            (true, false) => {
                if j - q == i {
                    half(&a[i])
                } else {
                    f64::INFINITY
                }
            }
            (false, true) => {
                if i - p == j {
                    half(&b[j])
                } else {
                    f64::INFINITY
                }
            }
            (false, false) => 0.0,
        }
    };
    let mut best = vec![f64::INFINITY; 1 << size];
    best[0] = 0.0;
    for mask in 0usize..(1 << size) {
        let i = mask.count_ones() as usize;
        if i >= size || best[mask].is_infinite() && mask != 0 {
            continue;
        }
        for j in 0..size {
            if mask & (1 << j) == 0 {
                let next = mask | (1 << j);
                let v = best[mask].max(cost(i, j));
                if v < best[next] {
                    best[next] = v;
                }
            }
        }
    }
    best[(1 << size) - 1]
}

/// Betti numbers of a simplicial complex from GF(2) ranks of its boundary maps.
pub fn betti_by_rank(complex: &BTreeSet<Vec<usize>>, top: usize) -> Vec<usize> {
    let mut by_dim: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); top + 2];
    for s in complex {
        if s.len() - 1 <= top + 1 {
            by_dim[s.len() - 1].push(s);
        }
    }
    let index: Vec<HashMap<&Vec<usize>, usize>> = by_dim
        .iter()
        .map(|ss| ss.iter().enumerate().map(|(i, s)| (*s, i)).collect())
        .collect();
    let rank = |d: usize| -> usize {
        if d == 0 || d > top + 1 {
            return 0;
        }
        let words = by_dim[d - 1].len().div_ceil(64).max(1);
        let rows: Vec<Vec<u64>> = by_dim[d]
            .iter()
            .map(|s| {
                let mut row = vec![0u64; words];
                for skip in 0..s.len() {
                    let facet: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    let k = index[d - 1][&facet];
                    row[k / 64] ^= 1 << (k % 64);
                }
                row
            })
            .collect();
        gf2_rank(rows)
    };
    (0..=top)
        .map(|d| by_dim[d].len() - rank(d) - rank(d + 1))
        .collect()
}

pub fn gf2_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let bits = rows.first().map_or(0, |r| r.len() * 64);
    for bit in 0..bits {
        let (w, b) = (bit / 64, 1u64 << (bit % 64));
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else { continue };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Every distinct entry of `r`, plus midpoints between consecutive ones.
pub fn probe_thresholds(r: &CrossDistanceMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = r.entries().to_vec();
    v.sort_by(f64::total_cmp);
    v.dedup();
    let mids: Vec<f64> = v.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect();
    v.extend(mids);
    v.push(v[0] - 1.0);
    v.sort_by(f64::total_cmp);
    v
}
