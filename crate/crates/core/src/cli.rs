//! Command-line front end. `src/main.rs` only forwards to [`main_entry`].
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource guard.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::diagrams::{
    bottleneck, dimension_equal, persistence_image, EssentialPolicy, PersistenceImageParams, Weight, Witness,
};
use crate::error::{Error, Result};
use crate::oracles::{random_planar_matrix, verify_theorems_with, TheoremReport, VerifyConfig};
use crate::persistence::PersistenceDiagram;
use crate::pipeline::{bench, compute_diagrams, BenchReport, ComplexKind, OutputFormat, RunConfig, RunOutput, SwapPolicy};
use crate::relations::{cross_distances, load_points, CrossDistanceMatrix, Metric};

#[derive(Debug, Parser)]
#[command(name = "dowker-rips", version, about = "Dowker and Dowker-Rips persistent homology")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute persistence diagrams
    Ph(PhArgs),
    /// Check duality and interleaving relations on an instance
    Verify(VerifyArgs),
    /// Time the Dowker and Dowker-Rips pipelines on the same input
    Bench(BenchArgs),
    /// Compare two diagram files
    Compare(CompareArgs),
    /// Render a persistence image from a diagram file
    Image(ImageArgs),
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Points CSV (`label,c1,...,cp`)
    #[arg(long, requires_all = ["x_label", "y_label"], conflicts_with = "matrix")]
    pub points: Option<PathBuf>,
    #[arg(long)]
    pub x_label: Option<String>,
    #[arg(long)]
    pub y_label: Option<String>,
    /// Cross-distance matrix CSV (rows X, columns Y, no header)
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Metric::Euclidean)]
    pub metric: Metric,
}

impl InputArgs {
    fn is_given(&self) -> bool {
        self.points.is_some() || self.matrix.is_some()
    }

    pub fn load(&self) -> Result<CrossDistanceMatrix> {
        match (&self.points, &self.matrix) {
            (Some(points), None) => {
                let x = self.x_label.as_deref().unwrap_or_default();
                let y = self.y_label.as_deref().unwrap_or_default();
                let (xs, ys) = load_points(points, x, y)?;
                cross_distances(&xs, &ys, self.metric)
            }
            (None, Some(matrix)) => CrossDistanceMatrix::load(matrix),
            _ => Err(Error::InvalidParameter(
                "give either --points FILE --x-label L1 --y-label L2 or --matrix FILE".into(),
            )),
        }
    }
}

fn parse_threshold(s: &str) -> std::result::Result<f64, String> {
    match s {
        "inf" | "infinity" => Ok(f64::INFINITY),
        _ => s
            .parse::<f64>()
            .ok()
            .filter(|v| *v >= 0.0)
            .ok_or_else(|| format!("`{s}` is not a nonnegative number or `inf`")),
    }
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(',').ok_or_else(|| format!("expected `lo,hi`, got `{s}`"))?;
    let lo: f64 = lo.trim().parse().map_err(|_| format!("bad bound `{lo}`"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("bad bound `{hi}`"))?;
    Ok((lo, hi))
}

#[derive(Debug, Clone, Args)]
pub struct ComplexArgs {
    #[arg(long = "complex", value_enum, default_value_t = ComplexKind::DowkerRips)]
    pub kind: ComplexKind,
    /// Flagification order for `--complex kflag`
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 2)]
    pub max_dim: usize,
    #[arg(long, default_value_t = 1)]
    pub max_hom_dim: usize,
    /// Largest filtration value kept (`inf` for none)
    #[arg(long, value_parser = parse_threshold, default_value = "inf")]
    pub threshold: f64,
    #[arg(long, value_enum, default_value_t = SwapPolicy::Auto)]
    pub swap: SwapPolicy,
}

impl ComplexArgs {
    pub fn config(&self) -> RunConfig {
        RunConfig {
            kind: self.kind,
            k: self.k,
            max_dim: self.max_dim,
            max_hom_dim: self.max_hom_dim,
            threshold: self.threshold,
            swap: self.swap,
            ..RunConfig::default()
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct PhArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub complex: ComplexArgs,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 3)]
    pub max_dim: usize,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Comma-separated scales for the inclusion check (default: every critical value)
    #[arg(long, value_delimiter = ',', value_parser = parse_threshold)]
    pub thresholds: Vec<f64>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Synthetic instance size when no input file is given
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    #[arg(long, default_value_t = 200)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 2)]
    pub max_dim: usize,
    /// Quantile of the cross distances used as threshold
    #[arg(long, default_value_t = 0.3)]
    pub percentile: f64,
    /// Explicit threshold; overrides --percentile
    #[arg(long, value_parser = parse_threshold)]
    pub threshold: Option<f64>,
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    pub left: PathBuf,
    pub right: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ImageArgs {
    pub diagram: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, default_value_t = 20)]
    pub rows: usize,
    #[arg(long, default_value_t = 20)]
    pub cols: usize,
    /// Gaussian standard deviation (default: 5% of the persistence range)
    #[arg(long)]
    pub bandwidth: Option<f64>,
    /// `lo,hi` (default: span of the finite births)
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub birth_range: Option<(f64, f64)>,
    /// `lo,hi` (default: `0,max persistence`)
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub pers_range: Option<(f64, f64)>,
    #[arg(long, value_enum, default_value_t = Weight::LinearInPersistence)]
    pub weight: Weight,
    #[arg(long, value_enum, default_value_t = EssentialPolicy::Drop)]
    pub essential: EssentialPolicy,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// What a command produced: the primary output, diagnostics for stderr, and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: Vec<String>,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: Vec::new(),
            exit_code: 0,
        }
    }
}

pub fn cmd_ph(args: &PhArgs) -> Result<(RunOutput, String)> {
    let r = args.input.load()?;
    let output = compute_diagrams(&r, &args.complex.config())?;
    let text = match args.format {
        OutputFormat::Csv => output.diagram.to_csv(),
        OutputFormat::Json => to_json(&output),
    };
    Ok((output, text))
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<TheoremReport> {
    let r = args.input.load()?;
    let instance = match (&args.input.points, &args.input.matrix) {
        (Some(p), _) => p.display().to_string(),
        (_, Some(m)) => m.display().to_string(),
        _ => "input".into(),
    };
    verify_theorems_with(
        &r,
        &VerifyConfig {
            max_dim: args.max_dim,
            thresholds: args.thresholds.clone(),
            k: args.k,
            tol: args.tol,
            instance,
            ..VerifyConfig::default()
        },
    )
}

pub fn cmd_bench(args: &BenchArgs) -> Result<BenchReport> {
    let r = if args.input.is_given() {
        args.input.load()?
    } else {
        if args.n == 0 || args.m == 0 {
            return Err(Error::EmptyInput("--n and --m must be positive"));
        }
        random_planar_matrix(args.seed, args.n, args.m)
    };
    let threshold = args.threshold.unwrap_or_else(|| r.quantile(args.percentile));
    bench(&r, args.max_dim, threshold, args.repeats)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareEntry {
    pub dim: usize,
    pub equal: bool,
    pub bottleneck: serde_json::Value,
    pub witness: Option<Witness>,
}

pub fn cmd_compare(args: &CompareArgs) -> Result<Vec<CompareEntry>> {
    let a = PersistenceDiagram::load_csv(&args.left)?;
    let b = PersistenceDiagram::load_csv(&args.right)?;
    Ok(compare_diagrams(&a, &b, args.tol))
}

pub fn compare_diagrams(a: &PersistenceDiagram, b: &PersistenceDiagram, tol: f64) -> Vec<CompareEntry> {
    (0..a.num_dims().max(b.num_dims()).max(1))
        .map(|dim| {
            let verdict = dimension_equal(a, b, dim, tol);
            let distance = bottleneck(a, b, dim);
            CompareEntry {
                dim,
                equal: verdict.equal,
                bottleneck: if distance.is_finite() {
                    serde_json::json!(distance)
                } else {
                    serde_json::json!("inf")
                },
                witness: verdict.witness,
            }
        })
        .collect()
}

pub fn cmd_image(args: &ImageArgs) -> Result<String> {
    let dgm = PersistenceDiagram::load_csv(&args.diagram)?;
    let mut params = PersistenceImageParams::fit(&dgm, args.dim);
    params.resolution = (args.rows, args.cols);
    if let Some(range) = args.birth_range {
        params.birth_range = range;
    }
    if let Some(range) = args.pers_range {
        params.pers_range = range;
        params.bandwidth = 0.05 * (range.1 - range.0);
    }
    if let Some(bw) = args.bandwidth {
        params.bandwidth = bw;
    }
    params.weight = args.weight;
    params.essential = args.essential;
    Ok(persistence_image(&dgm, args.dim, &params)?.to_csv())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn emit(out: &Option<PathBuf>, text: String) -> Result<String> {
    match out {
        Some(path) => {
            write_file(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Runs a parsed command.
pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Ph(args) => {
            let (output, text) = cmd_ph(args)?;
            let mut outcome = Outcome::ok(emit(&args.out, text)?);
            outcome.stderr.extend(output.metadata.warnings.iter().map(|w| format!("warning: {w}")));
            if args.format == OutputFormat::Csv {
                outcome.stderr.extend(output.metadata.notes.iter().map(|n| format!("note: {n}")));
                if !output.metadata.truncated_dims.is_empty() {
                    outcome.stderr.push(format!(
                        "note: deaths in dims {:?} are truncation-affected (max_dim {})",
                        output.metadata.truncated_dims, output.metadata.max_dim
                    ));
                }
            }
            Ok(outcome)
        }
        Command::Verify(args) => {
            let report = cmd_verify(args)?;
            let stderr = report
                .checks
                .iter()
                .map(|c| format!("[{}] {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail))
                .collect();
            Ok(Outcome {
                stdout: emit(&args.out, to_json(&report))?,
                stderr,
                exit_code: if report.all_pass() { 0 } else { 1 },
            })
        }
        Command::Bench(args) => Ok(Outcome::ok(emit(&args.out, to_json(&cmd_bench(args)?))?)),
        Command::Compare(args) => Ok(Outcome::ok(emit(&args.out, to_json(&cmd_compare(args)?))?)),
        Command::Image(args) => Ok(Outcome::ok(emit(&args.out, cmd_image(args)?)?)),
    }
}

/// Parses `args`, runs the command and writes its output; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
            for line in &outcome.stderr {
                eprintln!("{line}");
            }
            outcome.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn main_entry() -> i32 {
    main_with_args(std::env::args_os())
}
