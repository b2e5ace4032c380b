//! Command-line front end: runs scenario files and single ring queries.
//!
//! Exit status: 0 when every mandatory step passes, 1 when a check fails,
//! 2 on input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chowcheck::exact::{PrimeField, RankMode, DEFAULT_PRIME};
use chowcheck::verifier::{builtin, ring_query, run_scenario, Report, RingQuery, RunOptions, Scenario, BUILTINS};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "chowcheck", version, about = "Exact checks for Jacobian rings, elliptic pencils and curve relation lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ModeArgs {
    /// Prime for modular rank certificates.
    #[arg(long, conflicts_with = "exact")]
    prime: Option<u64>,
    /// Use exact rational elimination only.
    #[arg(long)]
    exact: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file or a bundled scenario.
    Verify {
        /// Path to a scenario file, or the name of a bundled scenario.
        scenario: String,
        /// Write the machine-readable report here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Single query against the ring declared in a scenario.
    Ring {
        query: QueryKind,
        /// Scenario file or bundled scenario name.
        #[arg(long)]
        file: String,
        /// Degree k for `dim` and `duality`.
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        a: Option<u32>,
        #[arg(long)]
        b: Option<u32>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// List the bundled scenarios, or print one.
    Builtin { name: Option<String> },
}

#[derive(Clone, Copy, ValueEnum)]
enum QueryKind {
    Dim,
    Map,
    Duality,
    Smooth,
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn load(source: &str) -> Result<Scenario, String> {
    let path = Path::new(source);
    let text = if path.exists() {
        fs::read_to_string(path).map_err(|e| format!("{source}: {e}"))?
    } else if let Some(t) = builtin(source) {
        t.to_string()
    } else {
        return Err(format!(
            "{source}: no such file and not a bundled scenario ({})",
            BUILTINS.join(", ")
        ));
    };
    Scenario::parse(&text).map_err(|e| format!("{source}: {e}"))
}

fn rank_mode(m: &ModeArgs) -> Result<Option<RankMode>, String> {
    if m.exact {
        return Ok(Some(RankMode::Exact));
    }
    match m.prime {
        Some(p) => {
            PrimeField::new(p).map_err(|e| e.to_string())?;
            Ok(Some(RankMode::Modular(p)))
        }
        None => Ok(None),
    }
}

fn finish(report: &Report, path: Option<&Path>) -> ExitCode {
    print!("{}", report.human());
    if let Some(p) = path {
        if let Err(e) = fs::write(p, report.machine()) {
            return input_error(format!("{}: {e}", p.display()));
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Verify { scenario, report, mode } => {
            let s = match load(&scenario) {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            let options = match rank_mode(&mode) {
                Ok(Some(m)) => RunOptions::forced(m),
                Ok(None) => RunOptions::default(),
                Err(e) => return input_error(e),
            };
            finish(&run_scenario(&s, &options), report.as_deref())
        }
        Command::Ring { query, file, degree, a, b, report, mode } => {
            let s = match load(&file) {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            let mode = match rank_mode(&mode) {
                Ok(m) => m.unwrap_or(RankMode::Modular(DEFAULT_PRIME)),
                Err(e) => return input_error(e),
            };
            let q = match (query, degree, a.zip(b)) {
                (QueryKind::Dim, Some(k), _) => RingQuery::Dim { k },
                (QueryKind::Map, _, Some((a, b))) => RingQuery::Map { a, b },
                (QueryKind::Duality, _, Some(ab)) => RingQuery::Duality { k: 0, ab: Some(ab) },
                (QueryKind::Duality, Some(k), None) => RingQuery::Duality { k, ab: None },
                (QueryKind::Smooth, _, _) => RingQuery::Smooth,
                (QueryKind::Dim, None, _) => return input_error("dim needs --degree"),
                (QueryKind::Map, _, None) => return input_error("map needs --a and --b"),
                (QueryKind::Duality, None, None) => return input_error("duality needs --degree or --a and --b"),
            };
            match ring_query(&s, q, mode) {
                Ok(r) => finish(&r, report.as_deref()),
                Err(e) => input_error(e),
            }
        }
        Command::Builtin { name: None } => {
            for n in BUILTINS {
                println!("{n}");
            }
            ExitCode::SUCCESS
        }
        Command::Builtin { name: Some(n) } => match builtin(&n) {
            Some(t) => {
                print!("{t}");
                ExitCode::SUCCESS
            }
            None => input_error(format!("no bundled scenario named {n}")),
        },
    }
}
