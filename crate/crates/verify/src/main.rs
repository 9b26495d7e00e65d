use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use holo_verify::{convergence_table, load_config, parse_sizes, run, table, CheckId, Suite, VerifyConfig};

/// Exit status for a run with failing checks.
const FAILED: u8 = 1;
/// Exit status for invalid input.
const INVALID: u8 = 2;

#[derive(Parser)]
#[command(name = "verify", version, about = "Verify holographic operators against closed forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a JSON report.
    Run {
        /// JSON configuration; defaults apply to omitted fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Restrict to these suites (repeatable).
        #[arg(long = "suite", value_parser = |s: &str| s.parse::<Suite>())]
        suites: Vec<Suite>,
        #[arg(long)]
        seed: Option<u64>,
        /// Report path; stdout when absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print a convergence table as CSV.
    Table {
        #[arg(long, value_parser = |s: &str| s.parse::<CheckId>())]
        check: CheckId,
        /// Comma-separated rule sizes, e.g. 8,16,32.
        #[arg(long, value_parser = parse_sizes)]
        sizes: ::std::vec::Vec<usize>,
    },
}

fn invalid(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(INVALID)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(INVALID) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Run { config, suites, seed, output } => {
            let mut cfg = match config {
                Some(path) => match load_config(&path) {
                    Ok(c) => c,
                    Err(e) => return invalid(e),
                },
                None => VerifyConfig::default(),
            };
            if !suites.is_empty() {
                cfg.suites.retain(|s| suites.contains(s));
            }
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if output.is_some() {
                cfg.output = output;
            }
            let report = run(&cfg);
            let json = report.to_json();
            match &cfg.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, json + "\n") {
                        return invalid(format!("cannot write {}: {e}", path.display()));
                    }
                }
                None => println!("{json}"),
            }
            for r in report.failures() {
                eprintln!("FAIL {} {}: {}", r.suite, r.check_id, r.message.as_deref().unwrap_or(&r.anchor));
            }
            let s = &report.summary;
            eprintln!("{} of {} checks passed", s.passed, s.total);
            if s.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(FAILED)
            }
        }
        Command::Table { check, sizes } => match convergence_table(check, &sizes) {
            Ok(rows) => {
                print!("{}", table::to_csv(&rows));
                ExitCode::SUCCESS
            }
            Err(e) => invalid(e),
        },
    }
}
