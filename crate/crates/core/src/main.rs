use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gq::dsl::{self, DslError, Options, Report, CHECKS};

#[derive(Parser)]
#[command(name = "gq", about = "Checks for graded manifolds, algebroids and symplectic complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Numeric {
    /// Integration steps for path checks.
    #[arg(long, default_value_t = 1000)]
    steps: usize,
    /// Tolerance for path and grid checks.
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
    /// Seed for randomly generated grid maps.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Run a program file.
    Run {
        file: PathBuf,
        /// Write the machine-readable report here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        numeric: Numeric,
    },
    /// Run the built-in example for each named check (`all` for every check).
    Check {
        #[arg(required = true)]
        names: Vec<String>,
        #[command(flatten)]
        numeric: Numeric,
    },
}

fn options(n: &Numeric, base_dir: PathBuf) -> Options {
    Options { steps: n.steps, tolerance: n.tolerance, seed: n.seed, base_dir }
}

fn finish(report: &Report) -> ExitCode {
    print!("{}", report.to_text());
    let s = &report.summary;
    println!("{} checks: {} passed, {} failed, {} degraded", s.total, s.passed, s.failed, s.degraded);
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn program_error(e: DslError) -> ExitCode {
    eprintln!("{e}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { file, report, numeric } => {
            let src = match std::fs::read_to_string(&file) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("cannot read {}: {e}", file.display());
                    return ExitCode::from(2);
                }
            };
            let base = file.parent().map(PathBuf::from).unwrap_or_default();
            let r = match dsl::run_source(&src, &options(&numeric, base)) {
                Ok(r) => r,
                Err(e) => return program_error(e),
            };
            if let Some(path) = report {
                if let Err(e) = std::fs::write(&path, r.to_json()) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            finish(&r)
        }
        Command::Check { names, numeric } => {
            let all = names.iter().any(|n| n == "all");
            let mut src = String::new();
            for spec in CHECKS.iter().filter(|c| all || names.iter().any(|n| n == c.name)) {
                src.push_str(spec.demo);
                src.push('\n');
            }
            if let Some(bad) = names.iter().find(|n| *n != "all" && !CHECKS.iter().any(|c| c.name == n.as_str())) {
                eprintln!(
                    "unknown check `{bad}`; known: {}",
                    CHECKS.iter().map(|c| c.name).collect::<Vec<_>>().join(", ")
                );
                return ExitCode::from(2);
            }
            // Demos reuse binding names, so each runs in its own session.
            let mut merged: Option<Report> = None;
            for line in src.lines() {
                let r = match dsl::run_source(line, &options(&numeric, PathBuf::from("."))) {
                    Ok(r) => r,
                    Err(e) => return program_error(e),
                };
                merged = Some(match merged {
                    None => r,
                    Some(mut m) => {
                        m.summary.total += r.summary.total;
                        m.summary.passed += r.summary.passed;
                        m.summary.failed += r.summary.failed;
                        m.summary.degraded += r.summary.degraded;
                        m.checks.extend(r.checks);
                        m
                    }
                });
            }
            finish(&merged.expect("at least one check"))
        }
    }
}
