//! Command-line front end for `ramify-core`: reads one JSON payload, runs a
//! query, and prints deterministic JSON or an aligned table.
//!
//! Exit codes: 0 ok, 1 schema error, 2 precision limited, 3 semantic
//! precondition failed.

pub mod commands;
pub mod error;
pub mod payload;
pub mod table;

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ramify_core::ramification::Mode;
use serde::Deserialize;
use serde_json::{json, Value};

use commands::Options;
pub use error::CliError;
use payload::Payload;

/// Largest precision tried when looking for a sufficient one.
const PROBE_LIMIT: u32 = 512;

#[derive(Debug, Parser)]
#[command(name = "ramify", version, about = "Exact ramification invariants of p-adic extensions")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Precision cap for tower arithmetic, overriding the payload.
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Payload file; stdin when absent.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Closed,
    Open,
}

#[derive(Debug, Clone, Args)]
pub struct LevelArgs {
    /// Level γ on the upper-numbering scale; repeatable.
    #[arg(long = "level")]
    pub levels: Vec<String>,
    /// Only this side of each level (default: both).
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Sub {
    /// Newton polygon of P(T + a) for a root a of the payload polynomial.
    NewtonPolygon,
    /// Herbrand function φ and its inverse ψ.
    Herbrand {
        /// Points at which to evaluate φ and ψ; repeatable.
        #[arg(long = "level")]
        levels: Vec<String>,
    },
    /// Different, conductor, breaks and ramification class.
    Breaks,
    /// Level-γ partitions of the roots.
    Partition(LevelArgs),
    /// Ramification groups of a Galois root set.
    Filtration(LevelArgs),
    /// Iterated dilatation reaching level r.
    DilatationChain {
        #[arg(long = "r")]
        r: Option<String>,
    },
    /// Subgroup corresponding to a quotient of the fiber functor.
    RecoverSubgroup,
    /// Unramified, tame or wild.
    Classify,
    /// Runs a list of queries, independent ones in parallel.
    Batch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    NewtonPolygon,
    Herbrand,
    Breaks,
    Partition,
    Filtration,
    DilatationChain,
    RecoverSubgroup,
    Classify,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::NewtonPolygon,
        Command::Herbrand,
        Command::Breaks,
        Command::Partition,
        Command::Filtration,
        Command::DilatationChain,
        Command::RecoverSubgroup,
        Command::Classify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::NewtonPolygon => "newton-polygon",
            Command::Herbrand => "herbrand",
            Command::Breaks => "breaks",
            Command::Partition => "partition",
            Command::Filtration => "filtration",
            Command::DilatationChain => "dilatation-chain",
            Command::RecoverSubgroup => "recover-subgroup",
            Command::Classify => "classify",
        }
    }

    pub fn from_name(name: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == name)
    }
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn failure(e: &CliError) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() }
    }
}

/// Parses `args` (program name first) and runs the query. `stdin` is only
/// read when no `--input` file is given.
pub fn run<I, T>(args: I, stdin: impl FnOnce() -> std::io::Result<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: text, code: 1 }
            } else {
                Outcome { stdout: text, stderr: String::new(), code: 0 }
            };
        }
    };
    let text = match &cli.input {
        Some(path) => std::fs::read_to_string(path),
        None => stdin(),
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => return Outcome::failure(&CliError::schema(format!("cannot read input: {e}"))),
    };

    let (command, opts) = match &cli.command {
        Sub::Batch => {
            let (report, code) = batch(&text, cli.precision);
            return Outcome { stdout: format_report(&report, cli.format), stderr: String::new(), code };
        }
        Sub::NewtonPolygon => (Command::NewtonPolygon, Options::default()),
        Sub::Herbrand { levels } => (Command::Herbrand, Options { levels: levels.clone(), ..Options::default() }),
        Sub::Breaks => (Command::Breaks, Options::default()),
        Sub::Partition(a) => (Command::Partition, level_options(a)),
        Sub::Filtration(a) => (Command::Filtration, level_options(a)),
        Sub::DilatationChain { r } => (Command::DilatationChain, Options { r: r.clone(), ..Options::default() }),
        Sub::RecoverSubgroup => (Command::RecoverSubgroup, Options::default()),
        Sub::Classify => (Command::Classify, Options::default()),
    };
    let opts = Options { precision: cli.precision, ..opts };
    match Payload::parse(&text).and_then(|p| run_query(command, &p, &opts)) {
        Ok(report) => Outcome { stdout: format_report(&report, cli.format), stderr: String::new(), code: 0 },
        Err(e) => Outcome::failure(&e),
    }
}

fn level_options(a: &LevelArgs) -> Options {
    Options {
        levels: a.levels.clone(),
        mode: a.mode.map(|m| match m {
            ModeArg::Closed => Mode::Closed,
            ModeArg::Open => Mode::Open,
        }),
        ..Options::default()
    }
}

pub fn format_report(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports are plain JSON");
            s.push('\n');
            s
        }
        Format::Table => table::render(report),
    }
}

/// Runs one query; a precision failure is retried at larger caps to name
/// the smallest sufficient precision.
pub fn run_query(command: Command, payload: &Payload, opts: &Options) -> Result<Value, CliError> {
    match commands::execute(command, payload, opts) {
        Err(CliError::Precision(msg)) => Err(CliError::Precision(precision_hint(command, payload, opts, msg))),
        other => other,
    }
}

fn precision_hint(command: Command, payload: &Payload, opts: &Options, msg: String) -> String {
    let Some(start) = opts.precision.or_else(|| payload.tower.as_ref().and_then(|t| t.precision())) else {
        return msg;
    };
    let sufficient = |n: u32| {
        let o = Options { precision: Some(n), ..opts.clone() };
        !matches!(commands::execute(command, payload, &o), Err(CliError::Precision(_)))
    };
    let limit = start.saturating_mul(16).clamp(start, PROBE_LIMIT.max(start));
    let (mut lo, mut n) = (start, start);
    let mut hi = None;
    while n < limit {
        n = n.saturating_mul(2).min(limit);
        if sufficient(n) {
            hi = Some(n);
            break;
        }
        lo = n;
    }
    match hi {
        None => format!("{msg}; no precision up to {limit} suffices"),
        Some(mut hi) => {
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if sufficient(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            format!("{msg}; precision {start} is insufficient, minimal sufficient precision is {hi}")
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BatchFile {
    queries: Vec<BatchQuery>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BatchQuery {
    command: String,
    payload: Value,
}

fn batch_item(q: &BatchQuery, precision: Option<u32>) -> Value {
    let result = Command::from_name(&q.command)
        .ok_or_else(|| CliError::schema(format!("unknown command {:?}", q.command)))
        .and_then(|c| {
            let p: Payload = serde_json::from_value(q.payload.clone())?;
            run_query(c, &p, &Options { precision, ..Options::default() })
        });
    match result {
        Ok(output) => json!({"command": q.command, "exit": 0, "output": output}),
        Err(e) => json!({"command": q.command, "exit": e.exit_code(), "error": e.to_string()}),
    }
}

/// Results in input order; the exit code is the worst one seen.
fn batch(text: &str, precision: Option<u32>) -> (Value, i32) {
    let file: BatchFile = match serde_json::from_str(text) {
        Ok(f) => f,
        Err(e) => {
            let e = CliError::from(e);
            return (json!({"error": e.to_string()}), e.exit_code());
        }
    };
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).max(1);
    let chunk = file.queries.len().div_ceil(workers).max(1);
    let results: Vec<Value> = std::thread::scope(|scope| {
        let handles: Vec<_> = file
            .queries
            .chunks(chunk)
            .map(|qs| scope.spawn(move || qs.iter().map(|q| batch_item(q, precision)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("query worker panicked")).collect()
    });
    let code = results.iter().filter_map(|r| r["exit"].as_i64()).max().unwrap_or(0) as i32;
    (json!({"results": results}), code)
}

/// Reads all of stdin.
pub fn read_stdin() -> std::io::Result<String> {
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s)?;
    Ok(s)
}
