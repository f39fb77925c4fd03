//! The `mbd` command line.
//!
//! Exit codes: 0 success, 2 usage or configuration error, 3 data error,
//! 4 verification failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::band::{Curve, FunctionalSample, Reduction, TimeGrid};
use crate::depth::{depth_all, rank_and_flag, DepthConfig, Mode};
use crate::error::{Error, ErrorKind, Result};
use crate::io::{load_sample, load_tuples, read_sample, write_report_to, write_sample_to, Format, Schema};
use crate::model::{simulate, ModelKind, ScalarLaw, SimulationModel};
use crate::verify::{run_suite, Suite, VerifyParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DATA: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "mbd", version, about = "m-band and time-share depths for functional data")]
pub struct Cli {
    /// Worker threads (0 = one per core). Results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Depth of every curve in a sample.
    Depth(DepthArgs),
    /// Depths plus the least deep fraction of curves flagged as outliers.
    Rank(RankArgs),
    /// Draw a synthetic sample from a random-function model.
    Simulate(SimulateArgs),
    /// Run a Monte Carlo check against a closed-form value.
    Verify(VerifyArgs),
    /// Time depth computations on a synthetic sample.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Band,
    #[value(name = "timeshare")]
    TimeShare,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Band => Mode::Band,
            ModeArg::TimeShare => Mode::TimeShare,
        }
    }
}

/// `all`, `lag=H` or `tuples=FILE`.
#[derive(Debug, Clone, PartialEq)]
pub enum ReductionArg {
    All,
    Lag(f64),
    Tuples(PathBuf),
}

impl FromStr for ReductionArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "all" {
            return Ok(ReductionArg::All);
        }
        if let Some(h) = s.strip_prefix("lag=") {
            let h: f64 = h.parse().map_err(|_| format!("lag {h:?} is not a number"))?;
            if !(h > 0.0 && h.is_finite()) {
                return Err(format!("lag must be positive, got {h}"));
            }
            return Ok(ReductionArg::Lag(h));
        }
        if let Some(path) = s.strip_prefix("tuples=") {
            if path.is_empty() {
                return Err("tuples= needs a file".into());
            }
            return Ok(ReductionArg::Tuples(PathBuf::from(path)));
        }
        Err(format!("expected all, lag=H or tuples=FILE, got {s:?}"))
    }
}

/// `exact` or `sample:N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetsArg {
    Exact,
    Sample(u64),
}

impl FromStr for SubsetsArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "exact" {
            return Ok(SubsetsArg::Exact);
        }
        match s.strip_prefix("sample:").map(str::parse::<u64>) {
            Some(Ok(n)) if n > 0 => Ok(SubsetsArg::Sample(n)),
            _ => Err(format!("expected exact or sample:N with N ≥ 1, got {s:?}")),
        }
    }
}

#[derive(Debug, Args)]
pub struct DepthArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Schema::Wide)]
    pub schema: Schema,
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    #[arg(long, default_value_t = 2)]
    pub j: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Band)]
    pub mode: ModeArg,
    #[arg(long, default_value = "all")]
    pub reduction: ReductionArg,
    #[arg(long, default_value = "exact")]
    pub subsets: SubsetsArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = crate::hull::DEFAULT_TOL)]
    pub tol: f64,
    /// Leave each curve out of its own reference subsets.
    #[arg(long)]
    pub exclude_self: bool,
    /// Report path; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[command(flatten)]
    pub depth: DepthArgs,
    #[arg(long, default_value_t = 0.1)]
    pub flag_fraction: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Translation,
    GaussPaths,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Centre curve for the translation model: a CSV file or `const:C`.
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long)]
    pub n: usize,
    /// Grid size; required unless `--a` is a file.
    #[arg(long)]
    pub k: Option<usize>,
    /// Value dimension for Gaussian paths.
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output layout; defaults to wide for scalar curves and long otherwise.
    #[arg(long, value_enum)]
    pub schema: Option<Schema>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Monte Carlo replications (at least 100); suite default when absent.
    #[arg(long)]
    pub replications: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    #[arg(long, default_value_t = 10)]
    pub k: usize,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 4)]
    pub j: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Band)]
    pub mode: ModeArg,
    #[arg(long, default_value = "exact")]
    pub subsets: SubsetsArg,
    #[arg(long, default_value_t = 1)]
    pub repeat: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: --threads: {e}");
            return EXIT_CONFIG;
        }
    };
    match pool.install(|| dispatch(&cli.command)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e.kind() {
        ErrorKind::Input | ErrorKind::Config => EXIT_CONFIG,
        ErrorKind::Data | ErrorKind::Io => EXIT_DATA,
    }
}

fn dispatch(cmd: &Command) -> Result<i32> {
    match cmd {
        Command::Depth(a) => cmd_depth(a, None),
        Command::Rank(a) => cmd_depth(&a.depth, Some(a.flag_fraction)),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
    }
}

fn flag_err(flag: &str, msg: impl std::fmt::Display) -> Error {
    Error::Config(format!("{flag}: {msg}"))
}

fn output_writer(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Error::Data(format!("--output {}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn build_config(a: &DepthArgs) -> Result<DepthConfig> {
    if a.m == 0 {
        return Err(flag_err("--m", "must be at least 1"));
    }
    if a.j == 0 {
        return Err(flag_err("--j", "must be at least 1"));
    }
    if !(a.tol > 0.0 && a.tol.is_finite()) {
        return Err(flag_err("--tol", format!("must be positive, got {}", a.tol)));
    }
    let reduction = match &a.reduction {
        ReductionArg::All => Reduction::AllCombinations,
        ReductionArg::Lag(h) => {
            if a.m != 2 {
                return Err(flag_err("--reduction", "lag reduction requires --m 2"));
            }
            Reduction::LagSet(*h)
        }
        ReductionArg::Tuples(path) => {
            let tuples = load_tuples(path).map_err(|e| flag_err("--reduction", e))?;
            if let Some(t) = tuples.iter().find(|t| t.len() != a.m) {
                return Err(flag_err("--reduction", format!("tuple of length {} with --m {}", t.len(), a.m)));
            }
            Reduction::ExplicitTuples(tuples)
        }
    };
    let mut cfg = DepthConfig::new(a.m, a.j, a.mode.into())
        .with_reduction(reduction)
        .with_tol(a.tol)
        .excluding_self(a.exclude_self);
    if let SubsetsArg::Sample(n) = a.subsets {
        cfg = cfg.sampled(n, a.seed);
    }
    Ok(cfg)
}

fn cmd_depth(a: &DepthArgs, flag_fraction: Option<f64>) -> Result<i32> {
    if let Some(f) = flag_fraction {
        if !(0.0..=1.0).contains(&f) {
            return Err(flag_err("--flag-fraction", format!("must lie in [0, 1], got {f}")));
        }
    }
    let cfg = build_config(a)?;
    let sample = load_sample(&a.input, a.schema).map_err(|e| match e {
        Error::Data(msg) => Error::Data(format!("--input {}: {msg}", a.input.display())),
        other => other,
    })?;
    let pool = if cfg.exclude_self { sample.len().saturating_sub(1) } else { sample.len() };
    if cfg.j > pool {
        return Err(flag_err("--j", format!("{} exceeds the {pool} available reference curves", cfg.j)));
    }
    if let Reduction::ExplicitTuples(t) = &cfg.reduction {
        let k = sample.grid().len();
        if let Some(bad) = t.iter().flatten().find(|&&i| i >= k) {
            return Err(flag_err("--reduction", format!("time index {} exceeds the {k} grid points", bad + 1)));
        }
    }
    let report = depth_all(&sample, &cfg)?;
    let flagged = flag_fraction.map(|f| rank_and_flag(&report, f));
    let mut w = output_writer(a.output.as_deref())?;
    write_report_to(&report, &mut w, a.format, flagged.as_deref())?;
    w.flush()?;
    Ok(EXIT_OK)
}

/// Loads a single curve from a wide or long CSV, choosing the layout from
/// the header.
fn load_center(path: &Path) -> Result<FunctionalSample> {
    let text = std::fs::read_to_string(path).map_err(|e| flag_err("--a", format!("{}: {e}", path.display())))?;
    let long = text.lines().next().is_some_and(|h| h.split(',').nth(1).map(str::trim) == Some("t"));
    let sample = read_sample(text.as_bytes(), if long { Schema::Long } else { Schema::Wide })
        .map_err(|e| flag_err("--a", e))?;
    if sample.len() != 1 {
        return Err(flag_err("--a", format!("expected one curve, found {}", sample.len())));
    }
    Ok(sample)
}

fn cmd_simulate(a: &SimulateArgs) -> Result<i32> {
    if a.n == 0 {
        return Err(flag_err("--n", "must be at least 1"));
    }
    if !(a.sigma >= 0.0 && a.sigma.is_finite()) {
        return Err(flag_err("--sigma", format!("must be non-negative, got {}", a.sigma)));
    }
    if a.k == Some(0) {
        return Err(flag_err("--k", "must be at least 1"));
    }
    if a.d == 0 {
        return Err(flag_err("--d", "must be at least 1"));
    }
    let (kind, grid) = match a.model {
        ModelArg::Translation => {
            let spec = a.a.as_deref().ok_or_else(|| flag_err("--a", "required for the translation model"))?;
            let (center, grid) = if let Some(c) = spec.strip_prefix("const:") {
                let c: f64 = c
                    .parse()
                    .ok()
                    .filter(|c: &f64| c.is_finite())
                    .ok_or_else(|| flag_err("--a", format!("{c:?} is not a number")))?;
                let k = a.k.ok_or_else(|| flag_err("--k", "required with --a const:C"))?;
                (Curve::new("a", a.d, vec![c; k * a.d])?, TimeGrid::regular(k)?)
            } else {
                let s = load_center(Path::new(spec))?;
                if let Some(k) = a.k {
                    if k != s.grid().len() {
                        return Err(flag_err("--k", format!("{k} disagrees with the {} points in --a", s.grid().len())));
                    }
                }
                (s.curves()[0].clone(), s.grid().clone())
            };
            let kind = if center.dim() == 1 {
                ModelKind::TranslationScalar { a: center, law: ScalarLaw::Gaussian { sigma: a.sigma } }
            } else {
                ModelKind::TranslationVector { a: center, sigma: a.sigma }
            };
            (kind, grid)
        }
        ModelArg::GaussPaths => {
            let k = a.k.ok_or_else(|| flag_err("--k", "required for gauss-paths"))?;
            (ModelKind::IidGaussianPaths { k, d: a.d, sigma: a.sigma }, TimeGrid::regular(k)?)
        }
    };
    let model = SimulationModel::new(kind, a.seed)?;
    let sample = simulate(&model, a.n, &grid)?;
    let schema = a.schema.unwrap_or(if sample.dim() == 1 { Schema::Wide } else { Schema::Long });
    if schema == Schema::Wide && sample.dim() != 1 {
        return Err(flag_err("--schema", "wide output holds scalar curves only"));
    }
    let mut w = output_writer(a.output.as_deref())?;
    write_sample_to(&sample, &mut w, schema)?;
    w.flush()?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs) -> Result<i32> {
    let replications = a.replications.unwrap_or_else(|| a.suite.default_replications());
    if replications < 100 {
        return Err(flag_err("--replications", format!("must be at least 100, got {replications}")));
    }
    let outcome = run_suite(a.suite, VerifyParams { replications, seed: a.seed })?;
    let mut out = io::stdout().lock();
    let suite = a.suite.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default();
    writeln!(out, "suite: {suite}")?;
    writeln!(out, "replications: {}", outcome.replications)?;
    if outcome.ladder.is_empty() {
        writeln!(out, "estimate: {:.6}", outcome.estimate)?;
        writeln!(out, "target: {:.6}", outcome.target)?;
        writeln!(out, "standard_error: {:.6}", outcome.standard_error)?;
        for (name, value) in &outcome.references {
            writeln!(out, "reference {name}: {value:.6}")?;
        }
        writeln!(out, "deviation_in_se: {:.3}", deviation_in_se(outcome.estimate, outcome.target, outcome.standard_error))?;
    } else {
        for step in &outcome.ladder {
            writeln!(out, "n = {:>5}: mean sup error {:.6}", step.n, step.mean_sup_error)?;
        }
        writeln!(out, "population standard_error (max): {:.6}", outcome.standard_error)?;
    }
    writeln!(out, "result: {}", if outcome.passed { "PASS" } else { "FAIL" })?;
    Ok(if outcome.passed { EXIT_OK } else { EXIT_VERIFY })
}

fn deviation_in_se(estimate: f64, target: f64, se: f64) -> f64 {
    let diff = (estimate - target).abs();
    if se > 0.0 {
        diff / se
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

fn cmd_bench(a: &BenchArgs) -> Result<i32> {
    for (flag, v) in [("--n", a.n), ("--k", a.k), ("--m", a.m), ("--j", a.j), ("--repeat", a.repeat)] {
        if v == 0 {
            return Err(flag_err(flag, "must be at least 1"));
        }
    }
    if a.j > a.n {
        return Err(flag_err("--j", format!("{} exceeds --n {}", a.j, a.n)));
    }
    let mut cfg = DepthConfig::new(a.m, a.j, a.mode.into());
    if let SubsetsArg::Sample(count) = a.subsets {
        cfg = cfg.sampled(count, a.seed);
    }
    let model = SimulationModel::new(ModelKind::IidGaussianPaths { k: a.k, d: 1, sigma: 1.0 }, a.seed)?;
    let sample = simulate(&model, a.n, &TimeGrid::regular(a.k)?)?;
    let mut out = io::stdout().lock();
    for r in 1..=a.repeat {
        let start = Instant::now();
        let report = depth_all(&sample, &cfg)?;
        let secs = start.elapsed().as_secs_f64();
        let evaluated = report.subset_count as f64 * a.n as f64;
        writeln!(
            out,
            "run {r}: {secs:.4} s, {} subsets per curve, {:.0} subsets/s",
            report.subset_count,
            evaluated / secs.max(1e-9)
        )?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_reduction_and_subsets() {
        assert_eq!("all".parse::<ReductionArg>().unwrap(), ReductionArg::All);
        assert_eq!("lag=2".parse::<ReductionArg>().unwrap(), ReductionArg::Lag(2.0));
        assert_eq!("tuples=x.txt".parse::<ReductionArg>().unwrap(), ReductionArg::Tuples("x.txt".into()));
        assert!("lag=-1".parse::<ReductionArg>().is_err());
        assert!("pairs".parse::<ReductionArg>().is_err());
        assert_eq!("sample:500".parse::<SubsetsArg>().unwrap(), SubsetsArg::Sample(500));
        assert!("sample:0".parse::<SubsetsArg>().is_err());
        assert!("sample".parse::<SubsetsArg>().is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["mbd", "verify", "--suite", "nope"]), EXIT_CONFIG);
        assert_eq!(run(["mbd", "frobnicate"]), EXIT_CONFIG);
        assert_eq!(run(["mbd", "verify", "--suite", "wendel", "--replications", "10"]), EXIT_CONFIG);
    }

    #[test]
    fn missing_input_is_a_data_error() {
        assert_eq!(run(["mbd", "depth", "--input", "/nonexistent/file.csv"]), EXIT_DATA);
    }
}
