//! Cross-distance matrices between two labeled point sets.
//!
//! A [`CrossDistanceMatrix`] with rows indexed by `X` and columns by `Y`
//! encodes the whole nested family of relations `R_eps = {(x, y) : d(x, y) <= eps}`;
//! every complex in this crate is built from it alone.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ground metric used by [`cross_distances`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    #[default]
    Euclidean,
    Manhattan,
    Chebyshev,
}

impl Metric {
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        let diffs = a.iter().zip(b).map(|(p, q)| (p - q).abs());
        match self {
            Metric::Euclidean => diffs.map(|d| d * d).sum::<f64>().sqrt(),
            Metric::Manhattan => diffs.sum(),
            Metric::Chebyshev => diffs.fold(0.0, f64::max),
        }
    }
}

/// Coordinates, one `Vec` per point.
pub type Points = Vec<Vec<f64>>;

/// Points with one opaque string label each.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPointCloud {
    points: Vec<Vec<f64>>,
    labels: Vec<String>,
}

impl LabeledPointCloud {
    pub fn new(points: Vec<Vec<f64>>, labels: Vec<String>) -> Result<Self> {
        if points.len() != labels.len() {
            return Err(Error::InvalidParameter(format!(
                "{} points but {} labels",
                points.len(),
                labels.len()
            )));
        }
        if let Some(first) = points.first() {
            let dim = first.len();
            if dim == 0 {
                return Err(Error::EmptyInput("points need at least one coordinate"));
            }
            if let Some(bad) = points.iter().find(|p| p.len() != dim) {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: bad.len(),
                });
            }
        }
        Ok(Self { points, labels })
    }

    /// Reads the points CSV format: header `label,c1,...,cp`, one row per point.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(|e| csv_error(path, e))?;
        let width = reader.headers().map_err(|e| csv_error(path, e))?.len();
        if width < 2 {
            return Err(Error::Parse {
                path: path.into(),
                line: 1,
                message: "header must be `label,c1,...,cp` with p >= 1".into(),
            });
        }
        let mut points = Vec::new();
        let mut labels = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| csv_error(path, e))?;
            let line = record.position().map_or(0, |p| p.line());
            let mut fields = record.iter();
            let label = fields.next().unwrap_or_default().to_string();
            let coords = fields
                .map(|f| {
                    f.parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .ok_or_else(|| Error::Parse {
                            path: path.into(),
                            line,
                            message: format!("`{f}` is not a finite decimal number"),
                        })
                })
                .collect::<Result<Vec<f64>>>()?;
            labels.push(label);
            points.push(coords);
        }
        Self::new(points, labels)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Points carrying `label`, in file order.
    pub fn select(&self, label: &str) -> Vec<Vec<f64>> {
        self.points
            .iter()
            .zip(&self.labels)
            .filter(|(_, l)| l.as_str() == label)
            .map(|(p, _)| p.clone())
            .collect()
    }

    /// Splits into the `(X, Y)` pair selected by two distinct labels.
    pub fn split(&self, x_label: &str, y_label: &str) -> Result<(Points, Points)> {
        if x_label == y_label {
            return Err(Error::SameLabels(x_label.to_string()));
        }
        let xs = self.select(x_label);
        if xs.is_empty() {
            return Err(Error::UnknownLabel(x_label.to_string()));
        }
        let ys = self.select(y_label);
        if ys.is_empty() {
            return Err(Error::UnknownLabel(y_label.to_string()));
        }
        Ok((xs, ys))
    }
}

fn csv_error(path: &Path, err: csv::Error) -> Error {
    let line = err.position().map_or(0, |p| p.line());
    match err.into_kind() {
        csv::ErrorKind::Io(source) => Error::io(path, source),
        other => Error::Parse {
            path: path.into(),
            line,
            message: format!("{other:?}"),
        },
    }
}

/// Loads the two label-selected subsets of a points CSV file.
pub fn load_points(
    path: impl AsRef<Path>,
    x_label: &str,
    y_label: &str,
) -> Result<(Points, Points)> {
    if x_label == y_label {
        return Err(Error::SameLabels(x_label.to_string()));
    }
    LabeledPointCloud::load(path)?.split(x_label, y_label)
}

/// Dense `n x m` matrix of distances `d(x_i, y_j)`, all finite and nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossDistanceMatrix {
    n: usize,
    m: usize,
    entries: Vec<f64>,
}

impl CrossDistanceMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if n == 0 || m == 0 {
            return Err(Error::EmptyInput("cross-distance matrix needs n >= 1 and m >= 1"));
        }
        let mut entries = Vec::with_capacity(n * m);
        for (row, values) in rows.into_iter().enumerate() {
            if values.len() != m {
                return Err(Error::RaggedMatrix {
                    row,
                    expected: m,
                    found: values.len(),
                });
            }
            entries.extend(values);
        }
        Self::from_row_major(n, m, entries)
    }

    pub fn from_row_major(n: usize, m: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::EmptyInput("cross-distance matrix needs n >= 1 and m >= 1"));
        }
        if entries.len() != n * m {
            return Err(Error::InvalidParameter(format!(
                "{} entries for a {n}x{m} matrix",
                entries.len()
            )));
        }
        if let Some(k) = entries.iter().position(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::InvalidEntry {
                row: k / m,
                col: k % m,
                value: entries[k],
            });
        }
        Ok(Self { n, m, entries })
    }

    /// Reads the headerless matrix CSV format.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .flexible(true)
            .from_path(path)
            .map_err(|e| csv_error(path, e))?;
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| csv_error(path, e))?;
            let line = record.position().map_or(0, |p| p.line());
            let row = record
                .iter()
                .map(|f| {
                    f.parse::<f64>().map_err(|_| Error::Parse {
                        path: path.into(),
                        line,
                        message: format!("`{f}` is not a decimal number"),
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            rows.push(row);
        }
        Self::from_rows(rows)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v}")).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Number of rows, `|X|`.
    pub fn n_rows(&self) -> usize {
        self.n
    }

    /// Number of columns, `|Y|`.
    pub fn n_cols(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.m + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.m..(i + 1) * self.m]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Swaps the roles of `X` and `Y`.
    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.m {
            entries.extend((0..self.n).map(|i| self.get(i, j)));
        }
        Self {
            n: self.m,
            m: self.n,
            entries,
        }
    }

    /// Smallest entry of row `i`: the time the vertex `x_i` first has a witness.
    pub fn row_min(&self, i: usize) -> f64 {
        self.row(i).iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Entry at the given quantile (`0.0..=1.0`, nearest rank).
    pub fn quantile(&self, q: f64) -> f64 {
        let mut sorted = self.entries.clone();
        sorted.sort_by(f64::total_cmp);
        let q = q.clamp(0.0, 1.0);
        let rank = ((sorted.len() as f64 * q).ceil() as usize).clamp(1, sorted.len());
        sorted[rank - 1]
    }
}

impl fmt::Display for CrossDistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_csv())
    }
}

/// Pairwise distances between `xs` (rows) and `ys` (columns).
pub fn cross_distances(xs: &[Vec<f64>], ys: &[Vec<f64>], metric: Metric) -> Result<CrossDistanceMatrix> {
    if xs.is_empty() {
        return Err(Error::EmptyInput("X has no points"));
    }
    if ys.is_empty() {
        return Err(Error::EmptyInput("Y has no points"));
    }
    let dim = xs[0].len();
    if dim == 0 {
        return Err(Error::EmptyInput("points need at least one coordinate"));
    }
    if let Some(bad) = xs.iter().chain(ys).find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.len(),
        });
    }
    let entries = xs
        .iter()
        .flat_map(|x| ys.iter().map(move |y| metric.distance(x, y)))
        .collect();
    CrossDistanceMatrix::from_row_major(xs.len(), ys.len(), entries)
}
