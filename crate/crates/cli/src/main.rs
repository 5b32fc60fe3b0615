//! Command-line front end.  Three subcommands share one pipeline (phase →
//! polyhedron → nondegeneracy → hypotheses → prediction) and differ in what
//! they measure afterwards.  Exit codes are a stable contract:
//!
//! * 0 — success (including "mismatch"/"flagged" verdicts: those live in the
//!   report, not the exit code),
//! * 1 — malformed input (file, JSON, syntax, ranges),
//! * 2 — degenerate phase, with the witness in the report,
//! * 3 — inadmissible exponent tuple, with diagnostics in the report.

mod analysis;
mod args;
mod experiments;
mod exponents;
mod report;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Map, Value};

use analysis::Staged;
use args::{AnalyzeArgs, Cli, Command, DecayFitArgs, Mode, SublevelArgs};

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl From<newton_osc_core::Error> for CliError {
    fn from(e: newton_osc_core::Error) -> Self {
        use newton_osc_core::Error;
        let code = match &e {
            Error::DegeneratePhase { .. } => 2,
            Error::InvalidExponents(_) => 3,
            _ => 1,
        };
        CliError::new(code, e.to_string())
    }
}

/// NEWTON_OSC_THREADS caps the rayon pool; unset leaves the rayon default.
fn configure_threads() -> Result<(), String> {
    let value = match std::env::var("NEWTON_OSC_THREADS") {
        Ok(v) => v,
        Err(std::env::VarError::NotPresent) => return Ok(()),
        Err(e) => return Err(format!("NEWTON_OSC_THREADS: {e}")),
    };
    let threads = value
        .trim()
        .parse::<usize>()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("NEWTON_OSC_THREADS must be a positive integer, got {value:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| format!("NEWTON_OSC_THREADS: {e}"))
}

fn main() -> ExitCode {
    if let Err(message) = configure_threads() {
        eprintln!("error: {message}");
        return ExitCode::from(1);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::DecayFit(a) => cmd_decay_fit(a),
        Command::Sublevel(a) => cmd_sublevel(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<i32, CliError> {
    let phase = analysis::load_phase(&args.phase)?;
    let entries = exponents::parse_list(&args.exponents).map_err(|m| CliError::new(1, m))?;
    let inputs = json!({
        "command": "analyze",
        "phase": report::phase_value(&phase),
        "exponents": exponents::render_list(&entries),
        "grid_h": args.grid_h,
    });
    match analysis::stage(phase, Some(entries), args.grid_h, inputs)? {
        Staged::Stop { code, doc, note } => {
            report::write_out(&doc, args.out.as_deref())?;
            eprintln!("{note}");
            Ok(code)
        }
        Staged::Ready(a) => {
            report::write_out(&a.doc, args.out.as_deref())?;
            Ok(0)
        }
    }
}

fn cmd_decay_fit(args: &DecayFitArgs) -> Result<i32, CliError> {
    let (default_min, default_max) = match args.mode {
        // The dyadic model sum is exact and cheap, so it gets a wider window.
        Mode::DyadicSum => ((6f64).exp2(), (20f64).exp2()),
        Mode::Sharpness | Mode::FixedF => ((4f64).exp2(), (12f64).exp2()),
    };
    let lambda_min = args.lambda_min.unwrap_or(default_min);
    let lambda_max = args.lambda_max.unwrap_or(default_max);
    let grid = experiments::lambda_grid(lambda_min, lambda_max)?;

    let phase = analysis::load_phase(&args.phase)?;
    let entries = exponents::parse_list(&args.exponents).map_err(|m| CliError::new(1, m))?;
    let inputs = json!({
        "command": "decay-fit",
        "phase": report::phase_value(&phase),
        "exponents": exponents::render_list(&entries),
        "mode": args.mode.name(),
        "lambda_min": lambda_min,
        "lambda_max": lambda_max,
        "max_points": args.max_points,
        "grid_h": args.grid_h,
    });
    let mut a = match analysis::stage(phase, Some(entries), args.grid_h, inputs)? {
        Staged::Stop { code, doc, note } => {
            report::write_out(&doc, args.out.as_deref())?;
            eprintln!("{note}");
            return Ok(code);
        }
        Staged::Ready(a) => a,
    };

    let output = match args.mode {
        Mode::Sharpness => experiments::sharpness(&a, &grid, args.max_points as u128)?,
        Mode::FixedF => experiments::fixed_f(&a, &grid, args.max_points as u128)?,
        Mode::DyadicSum => experiments::dyadic_sum(&a, &grid)?,
    };
    if let Some(path) = &args.stream {
        report::write_stream(path, args.mode.name(), "lambda", &output.records)?;
    }
    let mut sections = Map::new();
    sections.insert(args.mode.name().to_string(), output.section);
    a.doc["experiments"] = Value::Object(sections);
    report::write_out(&a.doc, args.out.as_deref())?;
    Ok(0)
}

fn cmd_sublevel(args: &SublevelArgs) -> Result<i32, CliError> {
    let eps_min = args.eps_min.unwrap_or((-12f64).exp2());
    let eps_max = args.eps_max.unwrap_or((-4f64).exp2());
    let grid = experiments::epsilon_grid(eps_min, eps_max)?;

    let phase = analysis::load_phase(&args.phase)?;
    let inputs = json!({
        "command": "sublevel",
        "phase": report::phase_value(&phase),
        "eps_min": eps_min,
        "eps_max": eps_max,
        "samples": args.samples,
        "seed": args.seed,
        "grid_h": args.grid_h,
    });
    let mut a = match analysis::stage(phase, None, args.grid_h, inputs)? {
        Staged::Stop { code, doc, note } => {
            report::write_out(&doc, args.out.as_deref())?;
            eprintln!("{note}");
            return Ok(code);
        }
        Staged::Ready(a) => a,
    };

    let output = experiments::sublevel_growth(&a, &grid, args.samples, args.seed)?;
    if let Some(path) = &args.stream {
        report::write_stream(path, "sublevel", "epsilon", &output.records)?;
    }
    let mut sections = Map::new();
    sections.insert("sublevel".to_string(), output.section);
    a.doc["experiments"] = Value::Object(sections);
    report::write_out(&a.doc, args.out.as_deref())?;
    Ok(0)
}
