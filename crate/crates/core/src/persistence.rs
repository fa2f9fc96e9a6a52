//! Persistence diagrams over GF(2) by column reduction.
//!
//! By default the coboundary matrix is reduced one dimension at a time from
//! the bottom up, which keeps the columns short on flag-like complexes. The
//! boundary matrix can be reduced instead ([`Algorithm::Homology`]), top
//! dimension first. Both use clearing: a simplex already paired as a death
//! needs no reduction of its own column.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complexes::{indexed_boundaries, FilteredSimplex, Filtration};
use crate::error::{Error, Result};

/// One bar; `death` is `f64::INFINITY` for essential classes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PersistencePair {
    pub birth: f64,
    #[serde(with = "infinite_as_null")]
    pub death: f64,
}

impl PersistencePair {
    pub fn new(birth: f64, death: f64) -> Self {
        Self { birth, death }
    }

    pub fn is_essential(&self) -> bool {
        self.death == f64::INFINITY
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }

    fn cmp_key(&self, other: &Self) -> std::cmp::Ordering {
        self.birth
            .total_cmp(&other.birth)
            .then(self.death.total_cmp(&other.death))
    }
}

mod infinite_as_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_infinite() {
            s.serialize_none()
        } else {
            s.serialize_f64(*v)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

/// Per-dimension multisets of bars.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PersistenceDiagram {
    dims: Vec<Vec<PersistencePair>>,
    /// Dimensions with no cofaces in the filtration, so deaths may be missing.
    #[serde(default)]
    truncated_dims: Vec<usize>,
}

impl PersistenceDiagram {
    /// Builds a diagram from per-dimension bars, sorting each dimension.
    pub fn from_dims(dims: Vec<Vec<PersistencePair>>) -> Self {
        let mut dgm = Self {
            dims,
            truncated_dims: Vec::new(),
        };
        dgm.normalize();
        dgm
    }

    pub fn empty() -> Self {
        Self::default()
    }

    fn normalize(&mut self) {
        for bars in &mut self.dims {
            bars.sort_by(PersistencePair::cmp_key);
        }
        while self.dims.last().is_some_and(Vec::is_empty) {
            self.dims.pop();
        }
    }

    /// Bars in dimension `dim` (empty if none were computed).
    pub fn pairs(&self, dim: usize) -> &[PersistencePair] {
        self.dims.get(dim).map_or(&[], Vec::as_slice)
    }

    /// One past the highest dimension holding a bar.
    pub fn num_dims(&self) -> usize {
        self.dims.len()
    }

    pub fn truncated_dims(&self) -> &[usize] {
        &self.truncated_dims
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(Vec::is_empty)
    }

    pub fn total_pairs(&self) -> usize {
        self.dims.iter().map(Vec::len).sum()
    }

    /// Keeps only dimensions `dims`.
    pub fn restrict(&self, dims: std::ops::RangeInclusive<usize>) -> Self {
        let kept = (0..self.dims.len())
            .map(|d| if dims.contains(&d) { self.dims[d].clone() } else { Vec::new() })
            .collect();
        let mut out = Self::from_dims(kept);
        out.truncated_dims = self.truncated_dims.iter().copied().filter(|d| dims.contains(d)).collect();
        out
    }

    /// Maps every finite coordinate through `f`; infinite deaths stay infinite.
    pub fn map_values(&self, mut f: impl FnMut(f64) -> f64) -> Self {
        let dims = self
            .dims
            .iter()
            .map(|bars| {
                bars.iter()
                    .map(|p| {
                        let death = if p.is_essential() { p.death } else { f(p.death) };
                        PersistencePair::new(f(p.birth), death)
                    })
                    .collect()
            })
            .collect();
        let mut out = Self::from_dims(dims);
        out.truncated_dims = self.truncated_dims.clone();
        out
    }

    /// Betti numbers at scale `eps`: bars with `birth <= eps < death`, one entry per dimension.
    pub fn betti_at(&self, eps: f64) -> Vec<usize> {
        self.dims
            .iter()
            .map(|bars| bars.iter().filter(|p| p.birth <= eps && eps < p.death).count())
            .collect()
    }

    /// Like [`betti_at`](Self::betti_at), padded with zeros to `len` dimensions.
    pub fn betti_vector(&self, eps: f64, len: usize) -> Vec<usize> {
        let mut b = self.betti_at(eps);
        b.resize(len.max(b.len()), 0);
        b
    }

    /// Diagram CSV: header `dim,birth,death`, `inf` for essential classes,
    /// rows sorted by `(dim, birth, death)`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("dim,birth,death\n");
        for (dim, bars) in self.dims.iter().enumerate() {
            for p in bars {
                let death = if p.is_essential() { "inf".to_string() } else { format!("{}", p.death) };
                let _ = writeln!(out, "{dim},{},{death}", p.birth);
            }
        }
        out
    }

    pub fn from_csv_str(text: &str, origin: &Path) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let parse_err = |line: u64, message: String| Error::Parse {
            path: origin.into(),
            line,
            message,
        };
        let header = reader.headers().map_err(|e| parse_err(1, e.to_string()))?;
        if header.iter().collect::<Vec<_>>() != ["dim", "birth", "death"] {
            return Err(parse_err(1, "expected header `dim,birth,death`".into()));
        }
        let mut dims: Vec<Vec<PersistencePair>> = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| parse_err(0, e.to_string()))?;
            let line = record.position().map_or(0, |p| p.line());
            if record.len() != 3 {
                return Err(parse_err(line, format!("expected 3 fields, found {}", record.len())));
            }
            let dim: usize = record[0]
                .parse()
                .map_err(|_| parse_err(line, format!("bad dimension `{}`", &record[0])))?;
            let birth: f64 = record[1]
                .parse()
                .ok()
                .filter(|b: &f64| b.is_finite())
                .ok_or_else(|| parse_err(line, format!("bad birth `{}`", &record[1])))?;
            let death: f64 = match &record[2] {
                "inf" => f64::INFINITY,
                s => s
                    .parse()
                    .ok()
                    .filter(|d: &f64| d.is_finite())
                    .ok_or_else(|| parse_err(line, format!("bad death `{s}`")))?,
            };
            if death < birth {
                return Err(parse_err(line, format!("death {death} precedes birth {birth}")));
            }
            if dims.len() <= dim {
                dims.resize(dim + 1, Vec::new());
            }
            dims[dim].push(PersistencePair::new(birth, death));
        }
        Ok(Self::from_dims(dims))
    }

    pub fn load_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv_str(&text, path)
    }
}

/// Which matrix is reduced; both give the same pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Boundary matrix, highest dimension first.
    Homology,
    /// Coboundary matrix, lowest dimension first.
    #[default]
    Cohomology,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionOptions {
    pub algorithm: Algorithm,
    pub clearing: bool,
    /// Keep pairs with `birth == death` (audit mode).
    pub keep_zero_persistence: bool,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        Self {
            algorithm: Algorithm::default(),
            clearing: true,
            keep_zero_persistence: false,
        }
    }
}

/// Persistence diagram of `filtration` in dimensions `0..=max_hom_dim`.
///
/// Deaths are only reliable for dimensions below `filtration.max_dim()`;
/// higher dimensions are listed in [`PersistenceDiagram::truncated_dims`].
pub fn compute_persistence(filtration: &Filtration, max_hom_dim: usize) -> Result<PersistenceDiagram> {
    compute_persistence_with(filtration, max_hom_dim, ReductionOptions::default())
}

pub fn compute_persistence_with(
    filtration: &Filtration,
    max_hom_dim: usize,
    options: ReductionOptions,
) -> Result<PersistenceDiagram> {
    let mut dgm = reduce_ordered(filtration.simplices(), max_hom_dim, options)?;
    dgm.truncated_dims = (filtration.max_dim()..=max_hom_dim).collect();
    Ok(dgm)
}

/// Reduces simplices in the given order, which must list every face before
/// its cofaces with a value no larger.
pub fn reduce_ordered(
    simplices: &[FilteredSimplex],
    max_hom_dim: usize,
    options: ReductionOptions,
) -> Result<PersistenceDiagram> {
    let top = simplices.iter().map(FilteredSimplex::dim).max().unwrap_or(0).min(max_hom_dim + 1);
    let boundaries = indexed_boundaries(simplices, top)?;
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    for (i, s) in simplices.iter().enumerate() {
        if s.dim() <= top {
            by_dim[s.dim()].push(i);
        }
    }
    let reduction = match options.algorithm {
        Algorithm::Homology => reduce_boundaries(boundaries, &by_dim, options.clearing),
        Algorithm::Cohomology => reduce_coboundaries(&boundaries, &by_dim, max_hom_dim.min(top), options.clearing),
    };

    let mut dims: Vec<Vec<PersistencePair>> = vec![Vec::new(); max_hom_dim + 1];
    for (birth_idx, death_idx) in reduction.pairs {
        let birth = simplices[birth_idx].value;
        let death = simplices[death_idx].value;
        let dim = simplices[birth_idx].dim();
        if dim <= max_hom_dim && (birth < death || options.keep_zero_persistence) {
            dims[dim].push(PersistencePair::new(birth, death));
        }
    }
    for i in reduction.essential {
        let s = &simplices[i];
        if s.dim() <= max_hom_dim {
            dims[s.dim()].push(PersistencePair::new(s.value, f64::INFINITY));
        }
    }
    Ok(PersistenceDiagram::from_dims(dims))
}

struct Reduction {
    /// `(birth, death)` simplex positions.
    pairs: Vec<(usize, usize)>,
    essential: Vec<usize>,
}

fn reduce_boundaries(mut columns: Vec<Vec<usize>>, by_dim: &[Vec<usize>], clearing: bool) -> Reduction {
    let len = columns.len();
    let top = by_dim.len() - 1;
    let mut pivot_owner = vec![usize::MAX; len];
    let mut is_zero = vec![false; len];
    let mut cleared = vec![false; len];
    let mut pairs = Vec::new();
    let mut scratch = Vec::new();

    let dim_order: Vec<usize> = if clearing { (1..=top).rev().collect() } else { (1..=top).collect() };
    for dim in dim_order {
        for &j in &by_dim[dim] {
            if cleared[j] {
                columns[j].clear();
                is_zero[j] = true;
                continue;
            }
            let mut column = std::mem::take(&mut columns[j]);
            while let Some(&low) = column.last() {
                let owner = pivot_owner[low];
                if owner == usize::MAX {
                    break;
                }
                add_into(&mut column, &columns[owner], &mut scratch);
            }
            match column.last() {
                Some(&low) => {
                    pivot_owner[low] = j;
                    pairs.push((low, j));
                    cleared[low] = clearing;
                }
                None => is_zero[j] = true,
            }
            columns[j] = column;
        }
        // lower dimensions never add columns of this one
        for &j in &by_dim[dim] {
            columns[j] = Vec::new();
        }
    }
    for &i in &by_dim[0] {
        is_zero[i] = true;
    }
    let essential = (0..len).filter(|&i| is_zero[i] && pivot_owner[i] == usize::MAX).collect();
    Reduction { pairs, essential }
}

/// Reduces the anti-transposed boundary matrix: coboundary columns taken in
/// reverse filtration order, rows indexed by reversed position.
fn reduce_coboundaries(boundaries: &[Vec<usize>], by_dim: &[Vec<usize>], hom_top: usize, clearing: bool) -> Reduction {
    let len = boundaries.len();
    let mut columns: Vec<Vec<usize>> = vec![Vec::new(); len];
    for tau in (0..len).rev() {
        for &facet in &boundaries[tau] {
            columns[facet].push(len - 1 - tau);
        }
    }
    let mut pivot_owner = vec![usize::MAX; len];
    let mut paired = vec![false; len];
    let mut pairs = Vec::new();
    let mut essential = Vec::new();
    let mut scratch = Vec::new();

    for cells in by_dim.iter().take(hom_top + 1) {
        for &j in cells.iter().rev() {
            if clearing && paired[j] {
                columns[j] = Vec::new();
                continue;
            }
            let mut column = std::mem::take(&mut columns[j]);
            while let Some(&low) = column.last() {
                let owner = pivot_owner[low];
                if owner == usize::MAX {
                    break;
                }
                add_into(&mut column, &columns[owner], &mut scratch);
            }
            match column.last() {
                Some(&low) => {
                    let tau = len - 1 - low;
                    pivot_owner[low] = j;
                    paired[tau] = true;
                    pairs.push((j, tau));
                }
                None if !paired[j] => essential.push(j),
                None => {}
            }
            columns[j] = column;
        }
        for &j in cells {
            columns[j] = Vec::new();
        }
    }
    Reduction { pairs, essential }
}

/// `column += other` over GF(2), both sorted ascending.
fn add_into(column: &mut Vec<usize>, other: &[usize], scratch: &mut Vec<usize>) {
    scratch.clear();
    scratch.reserve(column.len() + other.len());
    let (mut a, mut b) = (0, 0);
    while a < column.len() && b < other.len() {
        match column[a].cmp(&other[b]) {
            std::cmp::Ordering::Less => {
                scratch.push(column[a]);
                a += 1;
            }
            std::cmp::Ordering::Greater => {
                scratch.push(other[b]);
                b += 1;
            }
            std::cmp::Ordering::Equal => {
                a += 1;
                b += 1;
            }
        }
    }
    scratch.extend_from_slice(&column[a..]);
    scratch.extend_from_slice(&other[b..]);
    std::mem::swap(column, scratch);
}
