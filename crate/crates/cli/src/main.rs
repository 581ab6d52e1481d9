use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use jetres_cli::{error_document, render, run_job, CliError, Command, Job, RunOptions};
use jetres_core::Limits;
use serde_json::json;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    FibreIntegral,
    Integral,
    Ggl,
    Diagnostics,
    EulerChar,
    AmpleCheck,
    Residue,
    FixedPoints,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::FibreIntegral => Command::FibreIntegral,
            Cmd::Integral => Command::Integral,
            Cmd::Ggl => Command::Ggl,
            Cmd::Diagnostics => Command::Diagnostics,
            Cmd::EulerChar => Command::EulerChar,
            Cmd::AmpleCheck => Command::AmpleCheck,
            Cmd::Residue => Command::Residue,
            Cmd::FixedPoints => Command::FixedPoints,
        }
    }
}

/// Exact tautological integrals on jet towers and the GGL degree bound.
#[derive(Debug, Parser)]
#[command(name = "jetres", version)]
struct Args {
    command: Cmd,
    /// JSON job file with `schema_version`, `command` and `params`.
    #[arg(long)]
    job: Option<PathBuf>,
    /// Parameter override, `key=value`; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Recompute with an independent method and compare.
    #[arg(long)]
    verify: bool,
    #[arg(long, value_name = "N")]
    max_points: Option<u64>,
    #[arg(long, value_name = "N")]
    max_terms: Option<u64>,
    /// Truncation budget for euler-char.
    #[arg(long, value_name = "N")]
    budget: Option<usize>,
    /// Write the result document here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load(args: &Args, command: Command) -> Result<Job, CliError> {
    let mut job = match &args.job {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Job::from_json(&text, command)?
        }
        None => Job::new(command),
    };
    for s in &args.set {
        job.set(s)?;
    }
    Ok(job)
}

fn emit(args: &Args, text: &str) -> Result<(), CliError> {
    match &args.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let command = Command::from(args.command);
    let defaults = Limits::default();
    let opts = RunOptions {
        verify: args.verify,
        limits: Limits {
            max_points: args.max_points.unwrap_or(defaults.max_points),
            max_terms: args.max_terms.unwrap_or(defaults.max_terms),
        },
        budget: args.budget,
    };
    let outcome = load(&args, command).and_then(|job| run_job(&job, &opts));
    match outcome {
        Ok(out) => {
            eprintln!("{}", json!({ "elapsed_ms": out.elapsed.as_secs_f64() * 1e3 }));
            if let Err(e) = emit(&args, &render(&out.document)) {
                eprintln!("{}", render(&error_document(command, &e)).trim_end());
                return ExitCode::from(e.exit_code() as u8);
            }
            if out.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(4)
            }
        }
        Err(e) => {
            let doc = render(&error_document(command, &e));
            let _ = emit(&args, &doc);
            if args.out.is_some() {
                eprint!("{doc}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
