//! End-to-end runs: relation in, diagrams out.
//!
//! This is the single entry point shared by the command-line tool and any
//! foreign-language wrapper, so both produce identical numbers.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::complexes::{
    dowker_filtration_capped, dowker_rips_filtration_capped, kflag_filtration_capped, Filtration, DEFAULT_SIMPLEX_CAP,
};
use crate::diagrams::{persistence_image, PersistenceImageParams};
use crate::error::{Error, Result};
use crate::persistence::{compute_persistence, PersistenceDiagram};
use crate::relations::CrossDistanceMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ComplexKind {
    Dowker,
    #[default]
    DowkerRips,
    Kflag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SwapPolicy {
    /// Transpose when `Y` is smaller and duality makes it safe.
    #[default]
    Auto,
    Never,
    Always,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub kind: ComplexKind,
    pub k: usize,
    pub max_dim: usize,
    pub max_hom_dim: usize,
    pub threshold: f64,
    pub swap: SwapPolicy,
    pub simplex_cap: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            kind: ComplexKind::DowkerRips,
            k: 3,
            max_dim: 2,
            max_hom_dim: 1,
            threshold: f64::INFINITY,
            swap: SwapPolicy::Auto,
            simplex_cap: DEFAULT_SIMPLEX_CAP,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.kind == ComplexKind::Kflag && self.k < 2 {
            return Err(Error::InvalidParameter(format!("--k must be at least 2, got {}", self.k)));
        }
        if self.max_hom_dim > self.max_dim {
            return Err(Error::InvalidParameter(format!(
                "max_hom_dim {} exceeds max_dim {}",
                self.max_hom_dim, self.max_dim
            )));
        }
        if self.threshold.is_nan() || self.threshold < 0.0 {
            return Err(Error::InvalidParameter(format!("threshold {}", self.threshold)));
        }
        Ok(())
    }

    /// Highest homological dimension in which the diagrams of the relation
    /// and its transpose are guaranteed to agree, if any bound applies.
    pub fn duality_limit(&self) -> Option<usize> {
        match self.kind {
            ComplexKind::Dowker => None,
            ComplexKind::DowkerRips => Some(1),
            ComplexKind::Kflag => Some(self.k - 1),
        }
    }

    fn swap_is_licensed(&self) -> bool {
        self.duality_limit().is_none_or(|limit| self.max_hom_dim <= limit)
    }

    pub fn build(&self, r: &CrossDistanceMatrix) -> Result<Filtration> {
        match self.kind {
            ComplexKind::Dowker => dowker_filtration_capped(r, self.max_dim, self.threshold, self.simplex_cap),
            ComplexKind::DowkerRips => dowker_rips_filtration_capped(r, self.max_dim, self.threshold, self.simplex_cap),
            ComplexKind::Kflag => kflag_filtration_capped(r, self.k, self.max_dim, self.threshold, self.simplex_cap),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub kind: String,
    pub n: usize,
    pub m: usize,
    pub max_dim: usize,
    pub max_hom_dim: usize,
    #[serde(with = "threshold_repr")]
    pub threshold: f64,
    pub swap_applied: bool,
    pub simplex_count: usize,
    pub truncated_dims: Vec<usize>,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
    pub build_seconds: f64,
    pub reduce_seconds: f64,
}

mod threshold_repr {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*v)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Text(t) if t == "inf" => Ok(f64::INFINITY),
            Repr::Text(t) => Err(serde::de::Error::custom(format!("bad threshold `{t}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOutput {
    pub metadata: RunMetadata,
    pub diagram: PersistenceDiagram,
}

/// Builds the configured filtration for `r` (or its transpose, per the swap
/// policy) and computes its diagram in dims `0..=max_hom_dim`.
pub fn compute_diagrams(r: &CrossDistanceMatrix, config: &RunConfig) -> Result<RunOutput> {
    config.validate()?;
    let mut notes = Vec::new();
    let mut warnings = Vec::new();
    let licensed = config.swap_is_licensed();
    let swap = match config.swap {
        SwapPolicy::Never => false,
        SwapPolicy::Always => true,
        SwapPolicy::Auto => {
            if !licensed {
                warnings.push(format!(
                    "swap=auto disabled: duality for {:?} complexes only covers dims 0..={}",
                    config.kind,
                    config.duality_limit().unwrap_or(0)
                ));
            }
            licensed && r.n_cols() < r.n_rows()
        }
    };
    if swap {
        if licensed {
            let reason = match config.kind {
                ComplexKind::Dowker => "Dowker duality".to_string(),
                ComplexKind::DowkerRips => "Dowker-Rips duality (dims 0 and 1)".to_string(),
                ComplexKind::Kflag => format!("k-flag duality (dims 0..={})", config.k - 1),
            };
            notes.push(format!("computed on the transposed relation; diagrams equal the requested side by {reason}"));
        } else {
            warnings.push("swap=always outside the duality range: diagrams describe the transposed relation".into());
        }
    }
    let input = if swap { r.transpose() } else { r.clone() };

    let start = Instant::now();
    let filtration = config.build(&input)?;
    let build_seconds = start.elapsed().as_secs_f64();
    let start = Instant::now();
    let diagram = compute_persistence(&filtration, config.max_hom_dim)?;
    let reduce_seconds = start.elapsed().as_secs_f64();

    let kind = match config.kind {
        ComplexKind::Kflag => format!("kflag({})", config.k),
        ComplexKind::Dowker => "dowker".into(),
        ComplexKind::DowkerRips => "dowker-rips".into(),
    };
    let metadata = RunMetadata {
        kind,
        n: r.n_rows(),
        m: r.n_cols(),
        max_dim: config.max_dim,
        max_hom_dim: config.max_hom_dim,
        threshold: config.threshold,
        swap_applied: swap,
        simplex_count: filtration.len(),
        truncated_dims: diagram.truncated_dims().to_vec(),
        notes,
        warnings,
        build_seconds,
        reduce_seconds,
    };
    Ok(RunOutput { metadata, diagram })
}

/// Flattened (row-major) persistence image of one dimension of a run.
pub fn persistence_image_vector(output: &RunOutput, dim: usize, params: &PersistenceImageParams) -> Result<Vec<f64>> {
    Ok(persistence_image(&output.diagram, dim, params)?.values)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineTiming {
    pub median_seconds: f64,
    pub runs_seconds: Vec<f64>,
    pub simplex_count: usize,
    pub counts_by_dim: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub n: usize,
    pub m: usize,
    pub max_dim: usize,
    pub max_hom_dim: usize,
    #[serde(with = "threshold_repr")]
    pub threshold: f64,
    pub repeats: usize,
    pub dowker: PipelineTiming,
    pub dowker_rips: PipelineTiming,
    /// Dowker median time over Dowker-Rips median time.
    pub speedup: f64,
}

/// Times build + reduce for the Dowker and Dowker-Rips pipelines on the same
/// relation, `repeats` times each, reporting medians.
pub fn bench(r: &CrossDistanceMatrix, max_dim: usize, threshold: f64, repeats: usize) -> Result<BenchReport> {
    let repeats = repeats.max(1);
    let max_hom_dim = max_dim.saturating_sub(1);
    let run = |kind: ComplexKind| -> Result<PipelineTiming> {
        let config = RunConfig {
            kind,
            max_dim,
            max_hom_dim,
            threshold,
            swap: SwapPolicy::Never,
            ..RunConfig::default()
        };
        let mut runs = Vec::with_capacity(repeats);
        let mut counts = Vec::new();
        for _ in 0..repeats {
            let start = Instant::now();
            let filtration = config.build(r)?;
            let dgm = compute_persistence(&filtration, max_hom_dim)?;
            runs.push(start.elapsed().as_secs_f64());
            std::hint::black_box(dgm);
            counts = filtration.counts_by_dim();
        }
        Ok(PipelineTiming {
            median_seconds: median(&runs),
            runs_seconds: runs,
            simplex_count: counts.iter().sum(),
            counts_by_dim: counts,
        })
    };
    let dowker = run(ComplexKind::Dowker)?;
    let dowker_rips = run(ComplexKind::DowkerRips)?;
    let speedup = if dowker_rips.median_seconds > 0.0 {
        dowker.median_seconds / dowker_rips.median_seconds
    } else {
        1.0
    };
    Ok(BenchReport {
        n: r.n_rows(),
        m: r.n_cols(),
        max_dim,
        max_hom_dim,
        threshold,
        repeats,
        dowker,
        dowker_rips,
        speedup,
    })
}

fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::diagrams_equal;
    use crate::fixtures;

    #[test]
    fn auto_swap_for_wide_relation() {
        let r = fixtures::tetrahedron_matrix().transpose(); // 6 x 4
        let out = compute_diagrams(&r, &RunConfig::default()).unwrap();
        assert!(out.metadata.swap_applied);
        assert_eq!(out.metadata.notes.len(), 1);
        let never = compute_diagrams(
            &r,
            &RunConfig {
                swap: SwapPolicy::Never,
                ..RunConfig::default()
            },
        )
        .unwrap();
        assert!(diagrams_equal(&out.diagram, &never.diagram, 0.0).equal);
    }

    #[test]
    fn auto_swap_degrades_in_high_dims() {
        let r = fixtures::tetrahedron_matrix().transpose();
        let config = RunConfig {
            max_dim: 3,
            max_hom_dim: 2,
            ..RunConfig::default()
        };
        let out = compute_diagrams(&r, &config).unwrap();
        assert!(!out.metadata.swap_applied);
        assert_eq!(out.metadata.warnings.len(), 1);
        assert_eq!(out.diagram.betti_vector(0.5, 3), vec![1, 0, 1]);
    }

    #[test]
    fn dowker_swap_any_dim() {
        let r = fixtures::tetrahedron_matrix().transpose();
        let config = RunConfig {
            kind: ComplexKind::Dowker,
            max_dim: 3,
            max_hom_dim: 2,
            ..RunConfig::default()
        };
        let auto = compute_diagrams(&r, &config).unwrap();
        assert!(auto.metadata.swap_applied);
        let never = compute_diagrams(&r, &RunConfig { swap: SwapPolicy::Never, ..config }).unwrap();
        assert_eq!(auto.diagram, never.diagram);
    }

    #[test]
    fn config_validation() {
        let bad = RunConfig {
            max_hom_dim: 3,
            max_dim: 2,
            ..RunConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = RunConfig {
            kind: ComplexKind::Kflag,
            k: 1,
            ..RunConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn bench_trivial_input() {
        let r = CrossDistanceMatrix::from_rows(vec![vec![1.0]]).unwrap();
        let report = bench(&r, 2, f64::INFINITY, 3).unwrap();
        assert_eq!(report.dowker.simplex_count, 1);
        assert_eq!(report.dowker_rips.simplex_count, 1);
        assert!(report.speedup.is_finite());
    }

    #[test]
    fn metadata_json_threshold() {
        let out = compute_diagrams(&fixtures::c6_matrix(), &RunConfig::default()).unwrap();
        let json = serde_json::to_string(&out).unwrap();
        assert!(json.contains("\"threshold\":\"inf\""));
        let back: RunOutput = serde_json::from_str(&json).unwrap();
        assert_eq!(back.diagram, out.diagram);
    }

    #[test]
    fn median_values() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
