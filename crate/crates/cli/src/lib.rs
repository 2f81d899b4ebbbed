//! Command-line front end: JSON file formats, run manifests and the six commands
//! `solve`, `verify`, `enlarge`, `analyze`, `lattice` and `fermat`.
//!
//! Exit codes: 0 success or YES, 1 usage or parse error, 2 uncertified result,
//! NO/UNDECIDED or a rejected request, 3 internal inconsistency.

pub mod formats;
pub mod report;

use std::fmt;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use eigenpoints_core::configuration::{bezout_guard, max_collinear, DEFAULT_ENUMERATION_CAP};
use eigenpoints_core::eigensolver::{eigenpoints, EigenOptions};
use eigenpoints_core::lattice::identity_report;
use eigenpoints_core::reconstruction::{converse_hypothesis_report, enlarge, is_eigenscheme, Answer, ReconstructionOptions};
use eigenpoints_core::solver::SolveOptions;
use eigenpoints_core::tensor::{expected_count, fermat_tensor};
use eigenpoints_core::Error;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use formats::{PointsJson, TensorJson};
use report::{AnalyzeReport, BezoutJson, CollinearJson, ConverseJson, LatticeReport, SolveReport, VerifyReport};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "eigenpoints", version, about = "Eigenpoints of partially symmetric tensors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Seed for every randomized step.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the output file here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print a machine-readable report to stdout.
    #[arg(long)]
    pub json: bool,
    /// Write the run manifest here (default: next to `--out`).
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the eigenpoints of a tensor file.
    Solve {
        /// Tensor JSON file, or `-` for stdin.
        tensor: PathBuf,
        /// Keep only real points (the result is then never certified).
        #[arg(long)]
        real_only: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether a point set is the eigenscheme of a tensor of degree `d`.
    Verify {
        points: PathBuf,
        #[arg(long)]
        degree: u32,
        /// Restrict to symmetric tensors.
        #[arg(long)]
        symmetric: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Complete a small point set in P^3 to a full eigenscheme.
    Enlarge {
        points: PathBuf,
        #[arg(long)]
        degree: u32,
        /// Where the tensor goes when `--out` is given (default: `<out>.tensor.json`).
        #[arg(long)]
        tensor_out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Incidence predicates on a point set.
    Analyze {
        points: PathBuf,
        #[arg(long)]
        degree: u32,
        /// Largest number of subsets any search may visit.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u128,
        #[command(flatten)]
        common: Common,
    },
    /// Check the intersection-theory identities at `(n, d)`.
    Lattice {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Write the Fermat tensor `x_0^d + ... + x_n^d`.
    Fermat {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
    Json(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Json(e) => write!(f, "malformed JSON: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Json(_) => 1,
            CliError::Core(e) => match e {
                Error::BoundViolated { .. }
                | Error::RetriesExhausted(_)
                | Error::EnumerationCap { .. }
                | Error::Cardinality { .. }
                | Error::PositiveDimensional(_) => 2,
                Error::Inconsistent(_) => 3,
                _ => 1,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub seeds: Vec<u64>,
    pub version: String,
    /// Wall-clock time; the only field that varies between identical runs.
    pub elapsed_ms: f64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Result of one invocation, captured so that tests can drive the CLI in-process.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Outcome {
    code: i32,
    /// The primary output file: written to `--out` or printed.
    artifact: serde_json::Value,
    /// Additional files written next to `--out`.
    extra: Vec<(PathBuf, serde_json::Value)>,
    /// Used instead of `artifact` on stdout when there is no `--out`.
    combined: Option<serde_json::Value>,
    report: serde_json::Value,
    summary: Vec<String>,
    seeds: Vec<u64>,
}

struct Input {
    path: String,
    bytes: Vec<u8>,
}

fn read_input(path: &Path) -> Result<Input, CliError> {
    let mut bytes = Vec::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_end(&mut bytes).map_err(|e| CliError::Io(e.to_string()))?;
    } else {
        bytes = fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(Input { path: path.display().to_string(), bytes })
}

fn to_pretty(v: &impl Serialize) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn sibling(out: &Path, suffix: &str) -> PathBuf {
    out.with_extension(suffix)
}

fn solve_options(seed: u64) -> EigenOptions {
    EigenOptions { solve: SolveOptions { seed, ..SolveOptions::default() }, real_only: false }
}

fn reconstruction_options(seed: u64) -> ReconstructionOptions {
    ReconstructionOptions { seed, eigen: solve_options(seed), ..ReconstructionOptions::default() }
}

fn cmd_solve(input: &Input, real_only: bool, seed: u64) -> Result<Outcome, CliError> {
    let tj: TensorJson = serde_json::from_slice(&input.bytes)?;
    let t = tj.to_partial()?;
    let sol = eigenpoints(&t, &EigenOptions { real_only, ..solve_options(seed) })?;
    let points = PointsJson::from_solution(&sol);
    let report = SolveReport {
        count: sol.points.len(),
        total_multiplicity: sol.total_multiplicity(),
        expected: sol.expected,
        certified: sol.certified,
        positive_dimensional: sol.positive_dimensional,
        diagnostic: sol.diagnostic.clone(),
        seed,
    };
    let mut summary = vec![format!(
        "{} points (total multiplicity {}), expected {}, {}",
        report.count,
        report.total_multiplicity,
        report.expected,
        if sol.certified { "certified" } else { "not certified" }
    )];
    summary.extend(sol.diagnostic.iter().cloned());
    Ok(Outcome {
        code: if sol.certified { 0 } else { 2 },
        artifact: serde_json::to_value(&points)?,
        extra: Vec::new(),
        combined: None,
        report: serde_json::to_value(&report)?,
        summary,
        seeds: vec![seed],
    })
}

fn cmd_verify(input: &Input, degree: u32, symmetric: bool, seed: u64) -> Result<Outcome, CliError> {
    let pj: PointsJson = serde_json::from_slice(&input.bytes)?;
    let z = pj.to_point_set()?;
    let dec = is_eigenscheme(&z, degree, symmetric, &reconstruction_options(seed))?;
    let report = VerifyReport::from_decision(&dec, degree, z.len());
    let mut summary = Vec::new();
    summary.extend(report.cardinality_warning.iter().map(|w| format!("warning: {w}")));
    summary.push(format!(
        "{}: kernel dimension {}, degenerate dimension {}",
        report.decision, report.kernel.dimension, report.kernel.effective_degenerate_dimension
    ));
    summary.extend(dec.diagnostics.iter().cloned());
    let value = serde_json::to_value(&report)?;
    Ok(Outcome {
        code: if dec.answer == Answer::Yes { 0 } else { 2 },
        artifact: value.clone(),
        extra: Vec::new(),
        combined: None,
        report: value,
        summary,
        seeds: if dec.seeds.is_empty() { vec![seed] } else { dec.seeds.clone() },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnlargeJson {
    pub tensor: TensorJson,
    pub points: PointsJson,
}

fn cmd_enlarge(input: &Input, degree: u32, seed: u64, tensor_out: Option<PathBuf>, out: Option<&Path>) -> Result<Outcome, CliError> {
    let pj: PointsJson = serde_json::from_slice(&input.bytes)?;
    let z = pj.to_point_set()?;
    let e = enlarge(&z, degree, &reconstruction_options(seed))?;
    let mut points = PointsJson::from_solution(&e.solution);
    for &i in &e.input_positions {
        points.points[i].input = true;
    }
    let tensor = TensorJson::from_partial(&e.tensor);
    let extra = match out {
        Some(o) => vec![(tensor_out.unwrap_or_else(|| sibling(o, "tensor.json")), serde_json::to_value(&tensor)?)],
        None => Vec::new(),
    };
    let report = serde_json::json!({
        "inputPoints": z.len(),
        "outputPoints": e.solution.points.len(),
        "certified": e.solution.certified,
        "inputPositions": e.input_positions,
        "seed": e.seed,
        "attempts": e.attempts,
        "kernelDimension": e.kernel.dimension,
    });
    let summary = vec![format!(
        "enlarged {} points to {} (seed {}, {} attempt(s))",
        z.len(),
        e.solution.points.len(),
        e.seed,
        e.attempts
    )];
    let combined = serde_json::to_value(&EnlargeJson { tensor, points: points.clone() })?;
    Ok(Outcome {
        code: 0,
        artifact: serde_json::to_value(&points)?,
        extra,
        combined: Some(combined),
        report,
        summary,
        seeds: vec![e.seed],
    })
}

fn cmd_analyze(input: &Input, degree: u32, cap: u128) -> Result<Outcome, CliError> {
    let pj: PointsJson = serde_json::from_slice(&input.bytes)?;
    let z = pj.to_point_set()?;
    let collinear = CollinearJson::new(&max_collinear(&z), degree);
    let mut notes = Vec::new();
    let mut converse = None;
    let mut bezout = None;
    match z.n() {
        2 => bezout = Some(BezoutJson::from_report(&bezout_guard(&z, degree, cap)?)),
        3 => match converse_hypothesis_report(&z, degree, cap) {
            Ok(r) => converse = Some(ConverseJson::from_report(&r)),
            Err(Error::Cardinality { expected, got }) => notes.push(format!("surface predicate skipped: expected {expected} points, got {got}")),
            Err(e) => return Err(e.into()),
        },
        n => notes.push(format!("no incidence predicates beyond collinearity for n = {n}")),
    }
    let mut summary = vec![format!("max collinear {} (threshold {})", collinear.max, degree)];
    if let Some(c) = &converse {
        summary.push(format!(
            "{} points on a surface of degree {}: {}",
            c.threshold,
            degree.saturating_sub(1),
            if c.condition_one.found { "found" } else { "none" }
        ));
    }
    if let Some(b) = &bezout {
        summary.push(format!("plane curve guard {}", if b.passed { "passed" } else { "failed" }));
    }
    summary.extend(notes.iter().cloned());
    if z.len() as u64 != expected_count(z.n() as u32, degree) && converse.is_none() {
        summary.push(format!("note: {} points, an eigenscheme has {}", z.len(), expected_count(z.n() as u32, degree)));
    }
    let report = AnalyzeReport { n: z.n(), degree, points: z.len(), collinear, converse, bezout, notes };
    let value = serde_json::to_value(&report)?;
    Ok(Outcome { code: 0, artifact: value.clone(), extra: Vec::new(), combined: None, report: value, summary, seeds: Vec::new() })
}

fn cmd_lattice(n: u32, d: u32) -> Result<Outcome, CliError> {
    let (lat, checks) = identity_report(n, d)?;
    let report = LatticeReport::new(n, d, &lat, &checks);
    let mut summary = vec![format!("lattice of rank {} with labels {}", lat.rank(), lat.labels.join(", "))];
    for c in &report.checks {
        summary.push(format!("{} {}: expected {}, got {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.expected, c.got));
    }
    let value = serde_json::to_value(&report)?;
    Ok(Outcome {
        code: if report.all_passed { 0 } else { 3 },
        artifact: value.clone(),
        extra: Vec::new(),
        combined: None,
        report: value,
        summary,
        seeds: Vec::new(),
    })
}

fn cmd_fermat(n: usize, d: u32) -> Result<Outcome, CliError> {
    let t = TensorJson::from_symmetric(&fermat_tensor(n, d)?);
    let value = serde_json::to_value(&t)?;
    let report = serde_json::json!({ "n": n, "d": d, "expected": expected_count(n as u32, d) });
    Ok(Outcome {
        code: 0,
        artifact: value,
        extra: Vec::new(),
        combined: None,
        report,
        summary: vec![format!("Fermat tensor of degree {d} in {} variables", n + 1)],
        seeds: Vec::new(),
    })
}

/// Parse `args` (including the program name) and run the command.
pub fn run_cli<I, T>(args: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutput { code: 1, stdout: String::new(), stderr: text }
            } else {
                CommandOutput { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let arguments = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match run(cli, arguments) {
        Ok(o) => o,
        Err(e) => CommandOutput { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn run(cli: Cli, arguments: Vec<String>) -> Result<CommandOutput, CliError> {
    let start = Instant::now();
    let mut inputs = Vec::new();
    let (name, common, outcome) = match cli.command {
        Command::Solve { tensor, real_only, common } => {
            let input = read_input(&tensor)?;
            let o = cmd_solve(&input, real_only, common.seed);
            inputs.push(input);
            ("solve", common, o)
        }
        Command::Verify { points, degree, symmetric, common } => {
            let input = read_input(&points)?;
            let o = cmd_verify(&input, degree, symmetric, common.seed);
            inputs.push(input);
            ("verify", common, o)
        }
        Command::Enlarge { points, degree, tensor_out, common } => {
            let input = read_input(&points)?;
            let o = cmd_enlarge(&input, degree, common.seed, tensor_out, common.out.as_deref());
            inputs.push(input);
            ("enlarge", common, o)
        }
        Command::Analyze { points, degree, cap, common } => {
            let input = read_input(&points)?;
            let o = cmd_analyze(&input, degree, cap);
            inputs.push(input);
            ("analyze", common, o)
        }
        Command::Lattice { n, d, common } => ("lattice", common, cmd_lattice(n, d)),
        Command::Fermat { n, d, common } => ("fermat", common, cmd_fermat(n, d)),
    };
    let outcome = outcome?;

    let mut stdout = String::new();
    if let Some(out) = &common.out {
        write_file(out, &to_pretty(&outcome.artifact)?)?;
        for (path, value) in &outcome.extra {
            write_file(path, &to_pretty(value)?)?;
        }
    }
    if common.json {
        let mut envelope = serde_json::json!({
            "command": name,
            "exitCode": outcome.code,
            "seeds": outcome.seeds,
            "report": outcome.report,
        });
        if common.out.is_none() {
            envelope["artifact"] = outcome.combined.clone().unwrap_or_else(|| outcome.artifact.clone());
        }
        stdout = to_pretty(&envelope)?;
    } else if common.out.is_none() {
        stdout = to_pretty(outcome.combined.as_ref().unwrap_or(&outcome.artifact))?;
    }

    let manifest_path = common.manifest.clone().or_else(|| common.out.as_deref().map(|o| sibling(o, "manifest.json")));
    if let Some(path) = manifest_path {
        let manifest = RunManifest {
            command: name.into(),
            arguments,
            inputs: inputs.iter().map(|i| InputDigest { path: i.path.clone(), sha256: sha256_hex(&i.bytes) }).collect(),
            seeds: outcome.seeds.clone(),
            version: VERSION.into(),
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        };
        write_file(&path, &to_pretty(&manifest)?)?;
    }

    let mut stderr = String::new();
    for line in &outcome.summary {
        stderr.push_str(line);
        stderr.push('\n');
    }
    Ok(CommandOutput { code: outcome.code, stdout, stderr })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn usage_errors_exit_one() {
        let o = run_cli(["eigenpoints", "solve"]);
        assert_eq!(o.code, 1);
        let o = run_cli(["eigenpoints", "frobnicate"]);
        assert_eq!(o.code, 1);
        assert_eq!(run_cli(["eigenpoints", "--help"]).code, 0);
    }

    #[test]
    fn exit_codes_follow_error_kind() {
        assert_eq!(CliError::from(Error::BoundViolated { bound: 10, got: 11 }).exit_code(), 2);
        assert_eq!(CliError::from(Error::Inconsistent("x".into())).exit_code(), 3);
        assert_eq!(CliError::from(Error::Parse("x".into())).exit_code(), 1);
        assert_eq!(CliError::Io("x".into()).exit_code(), 1);
    }

    #[test]
    fn fermat_and_lattice_in_process() {
        let o = run_cli(["eigenpoints", "fermat", "--n", "2", "--d", "4"]);
        assert_eq!(o.code, 0);
        let t: TensorJson = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(t.kind, "symmetric");
        assert_eq!(t.f.unwrap().terms.len(), 3);
        let o = run_cli(["eigenpoints", "lattice", "--n", "3", "--d", "5", "--json"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["report"]["allPassed"], true);
    }
}
