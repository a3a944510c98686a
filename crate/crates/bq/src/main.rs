use std::path::PathBuf;
use std::process::ExitCode;

use bq::cli::{list_groups, load_dual, load_group, load_symbol, load_window, order_bound};
use bq::compute::{compute, Format, What};
use bq::error::BqError;
use bq::formats::{to_json_string, write_text};
use bq::suite::{run_suite, Suite, SuiteReport, DEFAULT_SEED, DEFAULT_TOL};
use bq_core::bargmann::WindowMode;
use bq_core::group::default_battery;
use bq_core::random;
use clap::{Parser, Subcommand};

/// Positive Berezin quantization on finite groups: catalog, verification and export.
#[derive(Parser)]
#[command(name = "bq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog groups with their orders and irrep dimensions.
    ListGroups,
    /// Run a verification suite and report residuals per check.
    Verify {
        /// Group spec (`S3`, `Z2xZ2`, `heisenberg(3)`, `file:<path>`), or `battery`.
        #[arg(long)]
        group: String,
        /// plancherel, weyl, wigner, coherent, berezin, pseudodiff, bargmann, toeplitz or all.
        #[arg(long, default_value = "all", value_parser = clap::value_parser!(SuiteArg))]
        suite: SuiteArg,
        /// Base absolute tolerance.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Write the report body as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Load the unitary dual from a JSON file instead of the catalog.
        #[arg(long)]
        dual: Option<PathBuf>,
    },
    /// Compute an operator, symbol or projection and export it.
    Compute {
        /// berezin, op, symbol, projection or toeplitz.
        #[arg(long, value_parser = clap::value_parser!(WhatArg))]
        what: WhatArg,
        #[arg(long)]
        group: String,
        /// delta-e, random (unit norm) or file:<path>.
        #[arg(long, default_value = "delta-e")]
        omega: String,
        /// one, random or file:<path>.
        #[arg(long, default_value = "one")]
        symbol: String,
        #[arg(long)]
        out: PathBuf,
        /// json, or csv for the spectrum of projection/toeplitz.
        #[arg(long, default_value = "json", value_parser = clap::value_parser!(FormatArg))]
        format: FormatArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Rescale a non-unit window instead of rejecting it.
        #[arg(long)]
        normalize_window: bool,
        #[arg(long)]
        dual: Option<PathBuf>,
    },
}

macro_rules! arg_wrapper {
    ($name:ident, $inner:ty) => {
        #[derive(Clone, Copy)]
        struct $name($inner);
        impl std::str::FromStr for $name {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                s.parse::<$inner>().map($name).map_err(|e| e.to_string())
            }
        }
    };
}

arg_wrapper!(SuiteArg, Suite);
arg_wrapper!(WhatArg, What);
arg_wrapper!(FormatArg, Format);

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command) -> Result<bool, BqError> {
    let bound = order_bound()?;
    match command {
        Command::ListGroups => {
            print!("{}", list_groups(bound)?);
            Ok(true)
        }
        Command::Verify { group, suite, tol, seed, json, dual } => {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(BqError::Usage { name: "--tol", reason: format!("expected a positive number, got {tol}") });
            }
            let specs: Vec<String> = if group == "battery" {
                default_battery().iter().map(ToString::to_string).collect()
            } else {
                vec![group]
            };
            let mut reports: Vec<SuiteReport> = Vec::new();
            for spec in &specs {
                let g = load_group(spec, bound)?;
                let d = load_dual(&g, dual.as_deref(), seed)?;
                let report = run_suite(&g, &d, suite.0, tol, seed);
                print!("{}", report.render());
                eprintln!("wall time for {}: {:.3} s", report.group, report.wall_time.as_secs_f64());
                reports.push(report);
            }
            if let Some(path) = json {
                let body = if reports.len() == 1 { to_json_string(&reports[0])? } else { to_json_string(&reports)? };
                write_text(&path, &body)?;
            }
            Ok(reports.iter().all(|r| r.passed))
        }
        Command::Compute { what, group, omega, symbol, out, format, seed, normalize_window, dual } => {
            let g = load_group(&group, bound)?;
            let d = load_dual(&g, dual.as_deref(), seed)?;
            let window = load_window(&omega, &g, &mut random::rng(seed, 0))?;
            let f = load_symbol(&symbol, &d, what.0.symbol_orientation(), &mut random::rng(seed, 1))?;
            let mode = if normalize_window { WindowMode::Normalize } else { WindowMode::RequireUnit };
            let artifact = compute(what.0, &g, &d, &window, &f, mode)?;
            write_text(&out, &artifact.render(format.0)?)?;
            Ok(true)
        }
    }
}
