// Copyright 2026 lindblad-fidelity contributors
// SPDX-License-Identifier: Apache-2.0

//! Scenario execution pipeline: config in, report out.

use sha2::{Digest, Sha256};
use std::time::Instant;

use lindblad_fidelity::fidelity::{avg_fidelity_exact, avg_fidelity_monte_carlo};
use lindblad_fidelity::theory::{predict_first_order, second_order_pi_rotation, RotationAxis};
use lindblad_fidelity::{Error as CoreError, HaarSampler};

use crate::config::{ChannelSpec, Config, Scenario};
use crate::gates::NamedGate;
use crate::report::{Metadata, MonteCarloReport, Report, ScenarioReport, TermReport};

/// Seed used when neither --seed, config, nor LF_SEED provides one.
pub const DEFAULT_SEED: u64 = 0x4c46;

#[derive(Debug)]
pub enum RunError {
    /// Bad input: exit code 2.
    Validation(String),
    /// Simulation failed an invariant or diverged: exit code 3.
    Numerical(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Validation(_) => 2,
            RunError::Numerical(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            RunError::Validation(m) | RunError::Numerical(m) => m,
        }
    }
}

fn numerical(e: CoreError) -> RunError {
    RunError::Numerical(e.to_string())
}

/// Execute every scenario of a parsed config.
///
/// `config_bytes` are the raw bytes of the config file (hashed into the
/// report metadata); seed priority is `cli_seed`, then the config's own
/// seed, then `env_seed` (LF_SEED), then [`DEFAULT_SEED`]. Scenario `i`
/// without an explicit seed uses `effective_seed + i`.
pub fn execute(
    config: &Config,
    config_bytes: &[u8],
    cli_seed: Option<u64>,
    env_seed: Option<u64>,
) -> Result<Report, RunError> {
    let started = Instant::now();
    let effective_seed = cli_seed
        .or(config.seed)
        .or(env_seed)
        .unwrap_or(DEFAULT_SEED);

    let mut rows = Vec::with_capacity(config.scenarios.len());
    for (index, scenario) in config.scenarios.iter().enumerate() {
        let scenario_seed = scenario
            .seed
            .unwrap_or(effective_seed.wrapping_add(index as u64));
        rows.push(run_scenario(index, scenario, scenario_seed)?);
    }

    let digest = Sha256::digest(config_bytes);
    let config_sha256 = digest
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect::<String>();

    Ok(Report {
        schema: crate::report::SCHEMA_VERSION.to_string(),
        metadata: Metadata {
            config_sha256,
            seed: effective_seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_seconds: started.elapsed().as_secs_f64(),
        },
        scenarios: rows,
    })
}

fn run_scenario(index: usize, scenario: &Scenario, seed: u64) -> Result<ScenarioReport, RunError> {
    let model = scenario.noise_model().map_err(numerical)?;

    // smallness diagnostics from the stored dissipator rates
    let gamma_tau_max = model
        .channels()
        .iter()
        .fold(0.0f64, |m, ch| m.max(ch.rate * scenario.tau));
    let gamma_tau_sum: f64 = model
        .channels()
        .iter()
        .map(|ch| ch.rate * scenario.tau)
        .sum();
    let expansion_warning = gamma_tau_max > lindblad_fidelity::theory::EXPANSION_WARNING_THRESHOLD;

    let mut predicted_first_order = None;
    let mut predicted_terms = None;
    let mut predicted_second_order = None;
    if scenario.evaluation.runs_prediction() {
        let prediction = predict_first_order(&model, scenario.tau).map_err(numerical)?;
        predicted_terms = Some(
            prediction
                .terms
                .iter()
                .map(|t| TermReport {
                    label: t.label.clone(),
                    rate: t.rate,
                    delta_f: t.delta_f,
                    contribution: t.contribution,
                })
                .collect(),
        );
        predicted_first_order = Some(prediction.fbar);
        predicted_second_order = second_order_prediction(scenario).map_err(numerical)?;
    }

    let mut simulated_exact = None;
    let mut simulated_monte_carlo = None;
    if scenario.evaluation.runs_simulation() {
        let exact = avg_fidelity_exact(&scenario.schedule, &model).map_err(numerical)?;
        simulated_exact = Some(exact);
        if scenario.samples > 0 {
            let mut sampler = HaarSampler::new(seed, 1 << scenario.n);
            let estimate = avg_fidelity_monte_carlo(
                &scenario.schedule,
                &model,
                &mut sampler,
                scenario.samples,
            )
            .map_err(numerical)?;
            simulated_monte_carlo = Some(MonteCarloReport {
                mean: estimate.mean,
                std_error: estimate.std_error,
                samples: estimate.samples,
            });
        }
    }

    let residual = match (simulated_exact, predicted_first_order) {
        (Some(sim), Some(pred)) => Some(sim - pred),
        _ => None,
    };
    let residual_over_gammatau_sq = residual.and_then(|r| {
        if gamma_tau_sum > 0.0 {
            Some(r / (gamma_tau_sum * gamma_tau_sum))
        } else {
            None
        }
    });

    Ok(ScenarioReport {
        index,
        n: scenario.n,
        gate: scenario.gate_display.clone(),
        tau: scenario.tau,
        gamma_tau_max,
        gamma_tau_sum,
        expansion_warning,
        predicted_first_order,
        predicted_terms,
        predicted_second_order,
        simulated_exact,
        simulated_monte_carlo,
        residual,
        residual_over_gammatau_sq,
    })
}

/// The second-order closed form exists for single-qubit pi rotations about
/// x or z under relaxation plus dephasing on that qubit; emit it when the
/// scenario matches.
fn second_order_prediction(scenario: &Scenario) -> lindblad_fidelity::Result<Option<f64>> {
    let axis = match scenario.named_gate {
        Some(NamedGate::X180) => RotationAxis::X,
        Some(NamedGate::Z180) => RotationAxis::Z,
        _ => return Ok(None),
    };
    if scenario.n != 1 {
        return Ok(None);
    }
    let mut gamma_1 = 0.0;
    let mut gamma_phi = 0.0;
    for spec in &scenario.channels {
        match spec {
            ChannelSpec::Relaxation { qubit: 0, rate } => gamma_1 += rate,
            ChannelSpec::Dephasing { qubit: 0, rate } => gamma_phi += rate,
            _ => return Ok(None),
        }
    }
    let prediction = second_order_pi_rotation(axis, gamma_1, gamma_phi, scenario.tau)?;
    Ok(Some(prediction.fbar))
}
