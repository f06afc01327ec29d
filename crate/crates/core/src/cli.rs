//! The `realcover` command line.
//!
//! Every command prints one JSON document. Exit status 0 means success,
//! 2 a definitive negative answer (not admissible, infeasible, not
//! verified) and 1 malformed input.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::bn;
use crate::constructions::execute;
use crate::covering4::{build_covnum, CoveringNumberTarget};
use crate::pl::realize;
use crate::planner::{plan, verify_report, Plan, PlanError};
use crate::topology::{admissibility_violation, enumerate_genus, CoverSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_BAD_INPUT: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;

pub const WORKERS_ENV: &str = "REALCOVER_SCAN_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "realcover", version, about = "Real coverings of the projective line")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check whether a covering specification passes every admissibility test.
    Admissible { spec: String },
    /// Build a construction plan for a specification.
    Plan { spec: String },
    /// Check a saved plan against a specification.
    Verify { plan_file: PathBuf, spec: String },
    /// Piecewise-linear model of the real locus of a saved plan.
    Realize {
        plan_file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Degree-4 covering with all degrees 0 and a given covering number.
    Covnum { target: String },
    /// Every admissible specification with g <= G_MAX and k <= K_MAX.
    Enumerate { g_max: u32, k_max: u32 },
    /// Brill-Noether number.
    Rho {
        g: u32,
        k: u32,
        #[arg(default_value_t = 1)]
        r: u32,
    },
    /// Dimension counts for the space of degree-k coverings.
    Dims { g: u32, k: u32 },
    /// The table of recorded facts, or one entry of it.
    Facts { key: Vec<u32> },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Exit status and what to print.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn json(code: i32, v: Value) -> Self {
        Self { code, stdout: format!("{v}\n"), stderr: String::new() }
    }

    fn bad(msg: impl std::fmt::Display) -> Self {
        Self { code: EXIT_BAD_INPUT, stdout: String::new(), stderr: format!("{}\n", json!({ "error": msg.to_string() })) }
    }
}

fn parse_json<T: DeserializeOwned>(what: &str, text: &str) -> Result<T, Output> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Output::bad(format!("{what}: at {path}: {}", e.inner()))
    })
}

fn read_plan(path: &PathBuf) -> Result<Plan, Output> {
    let text = std::fs::read_to_string(path).map_err(|e| Output::bad(format!("{}: {e}", path.display())))?;
    parse_json("plan", &text)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CovnumArgs {
    g: u32,
    s: u32,
    a: u8,
    kcov: u32,
}

fn workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

fn scan_genus(g: u32, k_max: u32) -> Vec<Value> {
    enumerate_genus(g, k_max)
        .into_iter()
        .map(|spec| {
            let (tag, note) = match plan(&spec) {
                Ok(p) => (p.provenance.map(|t| t.as_str().to_string()), None),
                Err(PlanError::Infeasible(why)) => (None, Some(why)),
            };
            json!({ "spec": spec, "plan": tag, "note": note })
        })
        .collect()
}

/// Scans genera in parallel; results are concatenated in genus order.
fn scan(g_max: u32, k_max: u32, workers: usize) -> Vec<Value> {
    let genera: Vec<u32> = (0..=g_max).collect();
    let per = genera.len().div_ceil(workers.max(1)).max(1);
    let parts: Vec<Vec<Value>> = std::thread::scope(|scope| {
        let handles: Vec<_> = genera
            .chunks(per)
            .map(|chunk| scope.spawn(move || chunk.iter().flat_map(|&g| scan_genus(g, k_max)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
    });
    parts.into_iter().flatten().collect()
}

fn dispatch(command: Command) -> Result<Output, Output> {
    let out = match command {
        Command::Admissible { spec } => {
            let spec: CoverSpec = parse_json("spec", &spec)?;
            match admissibility_violation(&spec) {
                None => Output::json(EXIT_OK, json!({ "admissible": true })),
                Some(v) => Output::json(EXIT_NEGATIVE, json!({ "admissible": false, "reason": v.name() })),
            }
        }
        Command::Plan { spec } => {
            let spec: CoverSpec = parse_json("spec", &spec)?;
            match plan(&spec) {
                Ok(p) => Output::json(EXIT_OK, serde_json::to_value(p).expect("serializable")),
                Err(PlanError::Infeasible(why)) => Output::json(EXIT_NEGATIVE, json!({ "infeasible": why })),
            }
        }
        Command::Verify { plan_file, spec } => {
            let p = read_plan(&plan_file)?;
            let spec: CoverSpec = parse_json("spec", &spec)?;
            let report = verify_report(&p, &spec);
            if report.ok {
                Output::json(EXIT_OK, json!({ "verified": true }))
            } else {
                Output::json(EXIT_NEGATIVE, json!({ "verified": false, "trail": report.trail }))
            }
        }
        Command::Realize { plan_file, format } => {
            let p = read_plan(&plan_file)?;
            execute(&p.seed, &p.steps).map_err(Output::bad)?;
            let cover = realize(&p).map_err(Output::bad)?;
            match format {
                Format::Json => Output::json(EXIT_OK, cover.to_json()),
                Format::Csv => Output { code: EXIT_OK, stdout: cover.fiber_csv(), stderr: String::new() },
            }
        }
        Command::Covnum { target } => {
            let args: CovnumArgs = parse_json("target", &target)?;
            match CoveringNumberTarget::new(args.g, args.s, args.a, args.kcov) {
                Err(e) => Output::json(EXIT_NEGATIVE, json!({ "infeasible": e.to_string() })),
                Ok(t) => {
                    let built = build_covnum(&t).map_err(Output::bad)?;
                    if built.covering_number == 0 {
                        Output::json(EXIT_NEGATIVE, json!({ "no_cover": true }))
                    } else {
                        Output::json(EXIT_OK, serde_json::to_value(built).expect("serializable"))
                    }
                }
            }
        }
        Command::Enumerate { g_max, k_max } => Output::json(EXIT_OK, Value::Array(scan(g_max, k_max, workers()))),
        Command::Rho { g, k, r } => {
            bn::check_query(k, r).map_err(Output::bad)?;
            Output::json(EXIT_OK, json!({ "g": g, "k": k, "r": r, "rho": bn::rho(g, k, r) }))
        }
        Command::Dims { g, k } => {
            bn::check_query(k, 1).map_err(Output::bad)?;
            let d = bn::dims(g, k).map_err(Output::bad)?;
            Output::json(EXIT_OK, serde_json::to_value(d).expect("serializable"))
        }
        Command::Facts { key } => match key.as_slice() {
            [] => Output::json(EXIT_OK, serde_json::to_value(bn::facts()).expect("serializable")),
            &[g, s, a, k] if a <= 1 => {
                let fact = bn::lookup(g, s, a as u8, k);
                Output::json(EXIT_OK, serde_json::to_value(fact).expect("serializable"))
            }
            _ => return Err(Output::bad("facts takes no arguments or exactly: g s a k (a is 0 or 1)")),
        },
    };
    Ok(out)
}

/// Runs the command line given by `argv` (program name first).
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    dispatch(cli.command).unwrap_or_else(|e| e)
}
