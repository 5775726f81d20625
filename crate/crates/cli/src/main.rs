// Copyright 2026 lindblad-fidelity contributors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lindblad_fidelity::linalg::identity;
use lindblad_fidelity::pauli::{embed, sigma_minus, sigma_z, MAX_QUBITS};
use lindblad_fidelity::theory::delta_f_general;
use lindblad_fidelity::NoiseChannel;
use lindblad_fidelity_cli::runner::RunError;
use lindblad_fidelity_cli::verify::{self, VerifyOptions};
use lindblad_fidelity_cli::{config, runner};

/// Average gate fidelity under weak Markovian dissipation: closed-form
/// predictions cross-checked by a dense Lindblad simulator.
#[derive(Parser)]
#[command(name = "lindblad-fidelity", version, about)]
struct Cli {
    /// Global seed override (takes precedence over the config seed and the
    /// LF_SEED environment variable)
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the scenarios of a JSON config and write a report
    Run {
        /// Scenario config (schema lindblad-fidelity/v1)
        #[arg(long)]
        config: PathBuf,
        /// Report output path (default: report.json)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a flat CSV summary
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Recompute every supported closed-form claim and cross-check it
    /// numerically; nonzero exit if any row fails
    Verify {
        /// Cut Monte Carlo sample counts tenfold (CI mode)
        #[arg(long)]
        fast: bool,
    },
    /// Print the fidelity-reduction factor dF of a jump operator
    DeltaF {
        /// Jump operator kind: sigma-minus, sigma-z, collective-dephasing,
        /// collective-relaxation, two-photon, identity
        #[arg(long)]
        channel: String,
        /// Qubit the single-qubit jump acts on (default 0)
        #[arg(long)]
        qubit: Option<usize>,
        /// Register size (default 1; two-photon implies 2)
        #[arg(long)]
        n: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let env_seed = match read_env_seed() {
        Ok(seed) => seed,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };

    let result = match cli.command {
        Command::Run { config, out, csv } => run(&config, out, csv, cli.seed, env_seed),
        Command::Verify { fast } => return run_verify(fast),
        Command::DeltaF { channel, qubit, n } => delta_f_command(&channel, qubit, n),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn read_env_seed() -> Result<Option<u64>, String> {
    match std::env::var("LF_SEED") {
        Ok(text) => text
            .parse::<u64>()
            .map(Some)
            .map_err(|_| format!("LF_SEED is not a valid u64: {text:?}")),
        Err(_) => Ok(None),
    }
}

fn run(
    config_path: &PathBuf,
    out: Option<PathBuf>,
    csv: Option<PathBuf>,
    cli_seed: Option<u64>,
    env_seed: Option<u64>,
) -> Result<(), RunError> {
    let bytes = std::fs::read(config_path).map_err(|e| {
        RunError::Validation(format!("cannot read config {}: {e}", config_path.display()))
    })?;
    let config = config::parse(&bytes).map_err(RunError::Validation)?;
    let report = runner::execute(&config, &bytes, cli_seed, env_seed)?;

    report.print_table();

    let out_path = out.unwrap_or_else(|| PathBuf::from("report.json"));
    std::fs::write(&out_path, report.to_json()).map_err(|e| {
        RunError::Validation(format!("cannot write report {}: {e}", out_path.display()))
    })?;
    println!("report written to {}", out_path.display());

    if let Some(csv_path) = csv {
        let mut buffer = Vec::new();
        report
            .write_csv(&mut buffer)
            .map_err(|e| RunError::Validation(format!("cannot format CSV: {e}")))?;
        std::fs::write(&csv_path, buffer).map_err(|e| {
            RunError::Validation(format!("cannot write CSV {}: {e}", csv_path.display()))
        })?;
        println!("csv written to {}", csv_path.display());
    }
    Ok(())
}

fn run_verify(fast: bool) -> ExitCode {
    let rows = verify::run_all(&VerifyOptions { fast });
    verify::print_table(&rows);
    if verify::all_pass(&rows) {
        ExitCode::SUCCESS
    } else {
        eprintln!("verification failed");
        ExitCode::from(1)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn fraction(numerator: i64, denominator: u64) -> String {
    let g = gcd(numerator.unsigned_abs(), denominator).max(1);
    let n = numerator / g as i64;
    let d = denominator / g;
    if d == 1 {
        format!("{n}")
    } else {
        format!("{n}/{d}")
    }
}

fn delta_f_command(channel: &str, qubit: Option<usize>, n: Option<usize>) -> Result<(), RunError> {
    let n = n.unwrap_or(if channel == "two-photon" { 2 } else { 1 });
    if !(1..=MAX_QUBITS).contains(&n) {
        return Err(RunError::Validation(format!(
            "--n: must be in 1..={MAX_QUBITS}, got {n}"
        )));
    }
    let qubit = qubit.unwrap_or(0);
    let d = 1usize << n;
    let validation = |e: lindblad_fidelity::Error| RunError::Validation(e.to_string());

    // (jump operator, closed-form reference when the channel is tabulated)
    let (jump, closed_form) = match channel {
        "sigma-minus" => (
            embed(&sigma_minus(), qubit, n).map_err(validation)?,
            Some(format!(
                "-d/(2(d+1)) = {} at d = {d}",
                fraction(-(d as i64), 2 * (d as u64 + 1))
            )),
        ),
        "sigma-z" => (
            embed(&sigma_z(), qubit, n).map_err(validation)?,
            Some(format!(
                "-d/(d+1) = {} at d = {d}",
                fraction(-(d as i64), d as u64 + 1)
            )),
        ),
        "collective-dephasing" => (
            NoiseChannel::collective_dephasing(n, 1.0)
                .map_err(validation)?
                .jump,
            Some(format!(
                "-N d/(d+1) = {} at N = {n}, d = {d}",
                fraction(-(n as i64 * d as i64), d as u64 + 1)
            )),
        ),
        "collective-relaxation" => (
            NoiseChannel::collective_relaxation(n, 1.0)
                .map_err(validation)?
                .jump,
            Some(format!(
                "-N d/(2(d+1)) = {} at N = {n}, d = {d}",
                fraction(-(n as i64 * d as i64), 2 * (d as u64 + 1))
            )),
        ),
        "two-photon" => (
            NoiseChannel::two_photon(n, 1.0).map_err(validation)?.jump,
            Some("-1/5".to_string()),
        ),
        "identity" => (identity(d), Some("0".to_string())),
        other => {
            return Err(RunError::Validation(format!(
                "--channel: unknown kind {other:?}; expected one of sigma-minus, sigma-z, \
                 collective-dephasing, collective-relaxation, two-photon, identity"
            )))
        }
    };

    let value = delta_f_general(&jump, n).map_err(|e| RunError::Numerical(e.to_string()))?;
    println!("delta_f = {value:.15}");
    if let Some(reference) = closed_form {
        println!("closed form: {reference}");
    }
    Ok(())
}
