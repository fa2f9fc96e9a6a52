use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::relations::CrossDistanceMatrix;

use super::dowker::dowker_simplices;
use super::{FilteredSimplex, Filtration, FiltrationKind, DEFAULT_SIMPLEX_CAP};

/// Filtered k-flagification of the Dowker complex.
///
/// Simplices of dimension below `k` keep their Dowker value. A simplex of
/// dimension `k` or more appears as soon as all of its `(k-1)`-faces have
/// appeared. `k = 2` gives the Dowker-Rips filtration and `k > max_dim`
/// gives the Dowker filtration itself.
pub fn kflag_filtration(r: &CrossDistanceMatrix, k: usize, max_dim: usize, threshold: f64) -> Result<Filtration> {
    kflag_filtration_capped(r, k, max_dim, threshold, DEFAULT_SIMPLEX_CAP)
}

pub fn kflag_filtration_capped(
    r: &CrossDistanceMatrix,
    k: usize,
    max_dim: usize,
    threshold: f64,
    cap: usize,
) -> Result<Filtration> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k-flagification needs k >= 2, got {k}")));
    }
    let kind = FiltrationKind::KFlag(k);
    // dims 0..k-1 straight from the Dowker definition
    let mut simplices = dowker_simplices(r, k.min(max_dim + 1), threshold, cap)?;
    if k > max_dim {
        return Ok(Filtration::new(simplices, max_dim, kind));
    }

    let n = r.n_rows();
    let mut level: Vec<FilteredSimplex> = simplices.iter().filter(|s| s.dim() == k - 1).cloned().collect();
    for _dim in k..=max_dim {
        if level.is_empty() {
            break;
        }
        let index: HashMap<&[usize], f64> = level.iter().map(|s| (s.vertices.as_slice(), s.value)).collect();
        let mut next = Vec::new();
        let mut facet = Vec::with_capacity(level[0].vertices.len());
        for s in &level {
            let last = *s.vertices.last().expect("nonempty simplex");
            'extend: for v in last + 1..n {
                // facet obtained by dropping v is `s` itself
                let mut value = s.value;
                for skip in 0..s.vertices.len() {
                    facet.clear();
                    facet.extend(s.vertices.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &u)| u));
                    facet.push(v);
                    match index.get(facet.as_slice()) {
                        Some(&w) => value = value.max(w),
                        None => continue 'extend,
                    }
                }
                if simplices.len() + next.len() >= cap {
                    return Err(Error::ResourceLimit {
                        what: "k-flag simplices",
                        count: (simplices.len() + next.len() + 1) as u128,
                        cap: cap as u128,
                    });
                }
                let mut vertices = s.vertices.clone();
                vertices.push(v);
                next.push(FilteredSimplex::new(vertices, value));
            }
        }
        simplices.extend(next.iter().cloned());
        level = next;
    }
    Ok(Filtration::new(simplices, max_dim, kind))
}
