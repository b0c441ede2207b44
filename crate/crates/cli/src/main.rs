//! `metriplectic` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 runtime error. Every run ends with one summary line on stderr:
//! `cmd=<name> elapsed_ms=<int> status=<ok|fail|error>`.

mod commands;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use commands::Outcome;

#[derive(Debug, Parser)]
#[command(name = "metriplectic", version, about = "Verify and simulate metriplectic systems on Lie-Poisson manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the builtin models, or show one in detail.
    Models {
        #[arg(long)]
        name: Option<String>,
    },
    /// Run the full verification battery on a builtin or a model file.
    Check(CheckArgs),
    /// Integrate the metriplectic flow and write trajectory CSV.
    Simulate(SimulateArgs),
    /// Evaluate an expression or a pair of brackets at a point.
    Eval(EvalArgs),
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Builtin name (se2, se2ext, galilei, bargmann, canonical:N, lv:<rows>) or model file path.
    target: String,
    #[arg(long)]
    hamiltonian: Option<String>,
    #[arg(long)]
    entropy: Option<String>,
    #[arg(long, default_value_t = metriplectic::parser::DEFAULT_SEED)]
    seed: u64,
    /// Emit one JSON record per check instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    model: String,
    #[arg(long)]
    hamiltonian: Option<String>,
    #[arg(long)]
    entropy: Option<String>,
    /// Comma-separated state, or `@file` with one state per line.
    #[arg(long, allow_hyphen_values = true)]
    initial: String,
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    #[arg(long, default_value_t = 1000)]
    steps: usize,
    #[arg(long, default_value = "rk4")]
    scheme: String,
    /// Temperature as an integer or `p/q`.
    #[arg(long)]
    tau: Option<String>,
    /// Output CSV path; batch runs append `_k` before the extension.
    #[arg(long)]
    output: Option<String>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Recorded in the output header line on stdout; the integrators are deterministic.
    #[arg(long, default_value_t = metriplectic::parser::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Debug, Args)]
struct EvalArgs {
    model: String,
    #[arg(long)]
    expr: Option<String>,
    /// Point as comma-separated values; all rational gives an exact result.
    #[arg(long, allow_hyphen_values = true)]
    at: String,
    /// Two expressions `f,g`; prints the deformed Poisson bracket and the symmetric bracket.
    #[arg(long)]
    bracket: Option<String>,
    #[arg(long)]
    hamiltonian: Option<String>,
    #[arg(long)]
    entropy: Option<String>,
}

fn command_name(args: &[String]) -> String {
    args.iter().skip(1).find(|a| !a.starts_with('-')).cloned().unwrap_or_else(|| "none".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let args: Vec<String> = std::env::args().collect();
    let (name, outcome) = match Cli::try_parse_from(&args) {
        Ok(cli) => {
            let name = match &cli.command {
                Command::Models { .. } => "models",
                Command::Check(_) => "check",
                Command::Simulate(_) => "simulate",
                Command::Eval(_) => "eval",
            };
            let outcome = match cli.command {
                Command::Models { name } => commands::models(name.as_deref()),
                Command::Check(a) => commands::check(&a),
                Command::Simulate(a) => commands::simulate(&a),
                Command::Eval(a) => commands::eval(&a),
            };
            (name.to_string(), outcome)
        }
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { Outcome::Usage(String::new()) } else { Outcome::Ok };
            (command_name(&args), code)
        }
    };
    let code = outcome.report();
    let status = match code {
        0 => "ok",
        1 => "fail",
        _ => "error",
    };
    eprintln!("cmd={name} elapsed_ms={} status={status}", start.elapsed().as_millis());
    ExitCode::from(code)
}
