#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod expr;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use commands::{Report, TensorInputs};
use config::{Format, RunArgs, RunConfig};

/// Computations on noncommutative two-tori: theta vectors, their tensor
/// products and the residual checks behind them.
#[derive(Parser)]
#[command(name = "nctorus", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Randomized algebra, module and connection invariants.
    AlgebraCheck,
    /// Theta vectors of `E_{n,m}` for the given complex structure.
    ThetaBasis,
    /// One value `h(z, Δ)` of the product map, direct and closed form.
    Tensor {
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
        #[arg(long)]
        delta: i64,
        /// JSON vector in `E_{n,m}`; defaults to theta vector `--alpha`.
        #[arg(long)]
        f: Option<PathBuf>,
        /// JSON vector in `E'_{k,l}`; defaults to theta vector `--beta`.
        #[arg(long)]
        g: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        alpha: usize,
        #[arg(long, default_value_t = 0)]
        beta: usize,
    },
    /// Structure constants of the product of theta vectors.
    StructureConstants,
    /// Every product identity and cross-check.
    VerifyAll,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::AlgebraCheck => "algebra-check",
            Command::ThetaBasis => "theta-basis",
            Command::Tensor { .. } => "tensor",
            Command::StructureConstants => "structure-constants",
            Command::VerifyAll => "verify-all",
        }
    }
}

fn render(report: &Report, name: &str, format: Format) -> Result<Vec<u8>, String> {
    match format {
        Format::Json => {
            let mut body = match report.body.clone() {
                Value::Object(map) => map,
                other => {
                    let mut map = serde_json::Map::new();
                    map.insert("result".into(), other);
                    map
                }
            };
            body.insert("schema".into(), Value::from(1));
            body.insert("command".into(), Value::from(name));
            let mut out = serde_json::to_vec_pretty(&Value::Object(body)).map_err(|e| e.to_string())?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&report.header).map_err(|e| e.to_string())?;
            for row in &report.rows {
                w.write_record(row).map_err(|e| e.to_string())?;
            }
            w.into_inner().map_err(|e| e.to_string())
        }
    }
}

fn run(cli: &Cli) -> Result<bool, String> {
    let cfg = RunConfig::from_args(&cli.run)?;
    let report = match &cli.command {
        Command::AlgebraCheck => commands::algebra_check(&cfg),
        Command::ThetaBasis => commands::theta_basis(&cfg),
        Command::Tensor {
            z,
            delta,
            f,
            g,
            alpha,
            beta,
        } => commands::tensor(
            &cfg,
            &TensorInputs {
                z: *z,
                delta: *delta,
                f: f.clone(),
                g: g.clone(),
                alpha: *alpha,
                beta: *beta,
            },
        ),
        Command::StructureConstants => commands::structure(&cfg),
        Command::VerifyAll => commands::verify_all(&cfg),
    }?;
    let bytes = render(&report, cli.command.name(), cfg.format)?;
    match &cfg.output {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| format!("{}: {e}", path.display()))?,
        None => std::io::stdout().write_all(&bytes).map_err(|e| e.to_string())?,
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
