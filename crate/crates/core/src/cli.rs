//! The `fwps` command-line interface.
//!
//! Every subcommand writes a single JSON document to standard output, with
//! keys in a fixed order and no timestamps, so equal inputs give
//! byte-identical output. Failures are reported as
//! `{"error": {"kind": ..., "message": ...}}` together with the exit code:
//! 0 on success, 2 when the input is well-formed but mathematically invalid,
//! 3 when it cannot be parsed.
//!
//! Input documents contain exactly one of `"rays"`, `"weights"`, or the pair
//! `"r"` / `"exponents"`; any other key is rejected.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;
use crate::intlat::AbelianGroupInvariants;
use crate::par::Execution;
use crate::pi11::{pi11_of_fan, universal_cover};
use crate::quotients::{classify_p2_quotient, enumerate_p2_quotients, normalize_p2_action, P2QuotientRecord};
use crate::toric::{fan_from_weights, picard_rank, validate_fwps, FwpsFan, WeightVector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

/// Integers beyond this magnitude are not exactly representable as doubles
/// and are written as decimal strings.
const SAFE_INTEGER: u64 = 1 << 53;

#[derive(Parser, Debug)]
#[command(
    name = "fwps",
    version,
    about = "Fundamental groups, covers and plane quotients of fake weighted projective spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze the fan given by {"rays": [[...], ...]}
    Analyze(InputArgs),
    /// Build the fan of P(a) from {"weights": [...]} and analyze it
    FromWeights(InputArgs),
    /// Normal form of the plane action {"r": r, "exponents": [e0, e1, e2]}
    NormalizeAction(InputArgs),
    /// List every plane quotient P^2 / Z_r with r up to --max-r
    Enumerate {
        #[arg(long, allow_negative_numbers = true)]
        max_r: i64,
        #[arg(long)]
        table: bool,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Read the input document from this file instead of standard input
    #[arg(long)]
    input: Option<PathBuf>,
    /// Print a human-readable table instead of JSON
    #[arg(long)]
    table: bool,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct InputDoc {
    rays: Option<Vec<Vec<i64>>>,
    weights: Option<Vec<i64>>,
    r: Option<i64>,
    exponents: Option<Vec<i64>>,
}

enum Input {
    Rays(Vec<Vec<i64>>),
    Weights(Vec<i64>),
    Action { r: i64, exponents: Vec<i64> },
}

/// What the process should print and how it should exit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

enum Failure {
    Domain(Error),
    Parse { kind: &'static str, message: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn parse_failure(message: impl Into<String>) -> Failure {
    Failure::Parse { kind: "ParseError", message: message.into() }
}

#[derive(Serialize)]
struct GroupReport {
    descriptor: String,
    torsion: Vec<i64>,
    free_rank: usize,
}

impl From<&AbelianGroupInvariants> for GroupReport {
    fn from(g: &AbelianGroupInvariants) -> Self {
        Self { descriptor: g.to_string(), torsion: g.torsion().to_vec(), free_rank: g.free_rank() }
    }
}

#[derive(Serialize)]
struct CoverReport {
    weights: Vec<i64>,
    deck_group: String,
    index: i64,
}

#[derive(Serialize)]
#[serde(untagged)]
enum Classification {
    Quotient { r: i64, a: i64 },
    Reason(String),
}

/// Full analysis of one fan. Keys appear in declaration order.
#[derive(Serialize)]
struct AnalysisReport {
    valid: bool,
    dim: usize,
    rays: Vec<Vec<i64>>,
    weights: Vec<i64>,
    pi11: GroupReport,
    is_wps: bool,
    cover: CoverReport,
    picard_rank: usize,
    p2_classification: Classification,
}

#[derive(Serialize)]
struct FromWeightsReport {
    rays: Vec<Vec<i64>>,
    analysis: AnalysisReport,
}

fn analyze(fan: &FwpsFan) -> Result<AnalysisReport, Error> {
    let pi11 = pi11_of_fan(&fan.to_fan())?;
    let cover = universal_cover(fan)?;
    let p2_classification = if fan.dim() != 2 {
        Classification::Reason(format!("dimension {} is not 2", fan.dim()))
    } else if cover.cover_weights.as_slice() != [1, 1, 1] {
        Classification::Reason(format!("cover weights {} are not (1, 1, 1)", cover.cover_weights))
    } else {
        let nf = classify_p2_quotient(fan)?;
        Classification::Quotient { r: nf.r, a: nf.a }
    };
    Ok(AnalysisReport {
        valid: true,
        dim: fan.dim(),
        rays: fan.ray_vectors(),
        weights: fan.weights().as_slice().to_vec(),
        pi11: GroupReport::from(&pi11),
        is_wps: pi11.is_trivial(),
        cover: CoverReport {
            weights: cover.cover_weights.as_slice().to_vec(),
            deck_group: cover.deck_group.to_string(),
            index: cover.index,
        },
        picard_rank: picard_rank(&fan.to_fan())?,
        p2_classification,
    })
}

fn read_input(args: &InputArgs, stdin: &mut dyn Read) -> Result<Input, Failure> {
    let mut text = String::new();
    let read = match &args.input {
        Some(path) => std::fs::read_to_string(path).map(|t| text = t),
        None => stdin.read_to_string(&mut text).map(|_| ()),
    };
    read.map_err(|e| Failure::Parse { kind: "IoError", message: e.to_string() })?;
    let doc: InputDoc = serde_json::from_str(&text).map_err(|e| parse_failure(e.to_string()))?;
    let one_of = "expected exactly one of \"rays\", \"weights\", or \"r\" with \"exponents\"";
    let action = match (doc.r, doc.exponents) {
        (Some(r), Some(exponents)) => Some(Input::Action { r, exponents }),
        (None, None) => None,
        _ => return Err(parse_failure("\"r\" and \"exponents\" must be given together")),
    };
    let mut present = [doc.rays.map(Input::Rays), doc.weights.map(Input::Weights), action].into_iter().flatten();
    match (present.next(), present.next()) {
        (Some(input), None) => Ok(input),
        _ => Err(parse_failure(one_of)),
    }
}

fn rays_of(input: Input) -> Result<Vec<Vec<i64>>, Failure> {
    match input {
        Input::Rays(r) => Ok(r),
        _ => Err(parse_failure("analyze expects a \"rays\" document")),
    }
}

fn weights_of(input: Input) -> Result<Vec<i64>, Failure> {
    match input {
        Input::Weights(w) => Ok(w),
        _ => Err(parse_failure("from-weights expects a \"weights\" document")),
    }
}

fn action_of(input: Input) -> Result<(i64, Vec<i64>), Failure> {
    match input {
        Input::Action { r, exponents } => Ok((r, exponents)),
        _ => Err(parse_failure("normalize-action expects an \"r\" and \"exponents\" document")),
    }
}

/// Rewrites integers outside the double-exact range as strings; reports whether any were found.
fn stringify_big(v: &mut Value) -> bool {
    match v {
        Value::Number(n) => {
            let big = !n.as_i64().is_some_and(|x| x.unsigned_abs() <= SAFE_INTEGER);
            if big {
                *v = Value::String(n.to_string());
            }
            big
        }
        Value::Array(xs) => xs.iter_mut().fold(false, |acc, x| stringify_big(x) | acc),
        Value::Object(m) => m.values_mut().fold(false, |acc, x| stringify_big(x) | acc),
        _ => false,
    }
}

fn mark_big(report: &mut Value) {
    if stringify_big(report) {
        if let Value::Object(m) = report {
            m.insert("big".into(), Value::Bool(true));
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("reports serialize");
    match &mut v {
        Value::Array(records) => records.iter_mut().for_each(mark_big),
        other => mark_big(other),
    }
    let mut out = serde_json::to_string_pretty(&v).expect("values serialize");
    out.push('\n');
    out
}

fn tuple(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(", "))
}

fn rays_line(rays: &[Vec<i64>]) -> String {
    rays.iter().map(|r| tuple(r)).collect::<Vec<_>>().join(" ")
}

fn analysis_table(r: &AnalysisReport) -> String {
    let classification = match &r.p2_classification {
        Classification::Quotient { r, a } => format!("r = {r}, a = {a}"),
        Classification::Reason(why) => format!("none ({why})"),
    };
    let rows = [
        ("dim", r.dim.to_string()),
        ("rays", rays_line(&r.rays)),
        ("weights", tuple(&r.weights)),
        ("pi11", r.pi11.descriptor.clone()),
        ("is wps", r.is_wps.to_string()),
        ("cover weights", tuple(&r.cover.weights)),
        ("deck group", r.cover.deck_group.clone()),
        ("cover index", r.cover.index.to_string()),
        ("picard rank", r.picard_rank.to_string()),
        ("P2 quotient", classification),
    ];
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<14} {v}");
    }
    out
}

fn enumeration_table(records: &[P2QuotientRecord]) -> String {
    let mut out = format!("{:>5} {:>5} {:>6}  rays\n", "r", "a", "index");
    for x in records {
        let _ = writeln!(out, "{:>5} {:>5} {:>6}  {}", x.r, x.a, x.index, rays_line(&x.rays));
    }
    out
}

fn execute(command: Command, stdin: &mut dyn Read) -> Result<String, Failure> {
    match command {
        Command::Analyze(args) => {
            let rays = rays_of(read_input(&args, stdin)?)?;
            let report = analyze(&validate_fwps(&rays)?)?;
            Ok(if args.table { analysis_table(&report) } else { to_json(&report) })
        }
        Command::FromWeights(args) => {
            let weights = weights_of(read_input(&args, stdin)?)?;
            let fan = fan_from_weights(&WeightVector::new(weights)?)?;
            let report = FromWeightsReport { rays: fan.ray_vectors(), analysis: analyze(&fan)? };
            Ok(if args.table { analysis_table(&report.analysis) } else { to_json(&report) })
        }
        Command::NormalizeAction(args) => {
            let (r, exponents) = action_of(read_input(&args, stdin)?)?;
            let nf = normalize_p2_action(r, &exponents)?;
            Ok(if args.table { format!("{nf}\n") } else { to_json(&nf) })
        }
        Command::Enumerate { max_r, table } => {
            let records = enumerate_p2_quotients(max_r, Execution::Parallel)?;
            Ok(if table { enumeration_table(&records) } else { to_json(&records) })
        }
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: &'a str,
}

#[derive(Serialize)]
struct ErrorDoc<'a> {
    error: ErrorBody<'a>,
}

fn error_outcome(code: i32, kind: &str, message: &str) -> Outcome {
    Outcome { code, stdout: to_json(&ErrorDoc { error: ErrorBody { kind, message } }) }
}

/// Runs the CLI on `args` (including the program name). Standard input is
/// only read when a subcommand needs a document and `--input` is absent.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: EXIT_OK, stdout: e.to_string() };
            }
            let message = e.to_string();
            let first = message.lines().next().unwrap_or_default().trim_start_matches("error: ");
            return error_outcome(EXIT_PARSE, "UsageError", first);
        }
    };
    match execute(cli.command, stdin) {
        Ok(stdout) => Outcome { code: EXIT_OK, stdout },
        Err(Failure::Domain(e)) => error_outcome(EXIT_DOMAIN, e.kind(), &e.to_string()),
        Err(Failure::Parse { kind, message }) => error_outcome(EXIT_PARSE, kind, &message),
    }
}
