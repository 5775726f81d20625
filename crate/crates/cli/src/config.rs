// Copyright 2026 lindblad-fidelity contributors
// SPDX-License-Identifier: Apache-2.0

//! Scenario configuration: JSON schema `lindblad-fidelity/v1`.
//!
//! Parsing is permissive (strings for kinds and gate names) and a separate
//! validation pass resolves everything into domain objects, so that error
//! messages can name the offending field, e.g.
//! `scenarios[0].noise[1].kind: unknown channel kind "t2star"`.

use ndarray::Array2;
use num_complex::Complex64;
use serde::Deserialize;

use lindblad_fidelity::fidelity::MIN_FIDELITY_SAMPLES;
use lindblad_fidelity::linalg::CMatrix;
use lindblad_fidelity::pauli::MAX_QUBITS;
use lindblad_fidelity::{GateSchedule, NoiseChannel, NoiseModel, Segment};

use crate::gates::NamedGate;

pub const SCHEMA_VERSION: &str = "lindblad-fidelity/v1";
pub const DEFAULT_SAMPLES: usize = 10_000;

pub const CHANNEL_KINDS: [&str; 5] = [
    "relaxation",
    "dephasing",
    "collective-dephasing",
    "collective-relaxation",
    "two-photon",
];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub schema: String,
    #[serde(default)]
    pub seed: Option<u64>,
    pub scenarios: Vec<RawScenario>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScenario {
    pub n: usize,
    pub gate: RawGate,
    pub tau: f64,
    #[serde(default)]
    pub noise: Vec<RawChannel>,
    #[serde(default)]
    pub evaluation: Option<String>,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum RawGate {
    Named(String),
    Seeded { name: String, seed: u64 },
    Explicit { segments: Vec<RawSegment> },
}

/// Complex matrix entries are `[re, im]` pairs, row major.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSegment {
    pub hamiltonian: Vec<Vec<[f64; 2]>>,
    pub duration: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawChannel {
    pub kind: String,
    #[serde(default)]
    pub qubit: Option<usize>,
    pub rate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evaluation {
    Predict,
    Simulate,
    Both,
}

impl Evaluation {
    pub fn runs_prediction(self) -> bool {
        matches!(self, Evaluation::Predict | Evaluation::Both)
    }

    pub fn runs_simulation(self) -> bool {
        matches!(self, Evaluation::Simulate | Evaluation::Both)
    }
}

/// Channel spec with the user-facing rate (the Gamma_phi/2 convention is
/// applied later, by the `NoiseChannel` constructors).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelSpec {
    Relaxation { qubit: usize, rate: f64 },
    Dephasing { qubit: usize, rate: f64 },
    CollectiveDephasing { rate: f64 },
    CollectiveRelaxation { rate: f64 },
    TwoPhoton { rate: f64 },
}

impl ChannelSpec {
    pub fn to_channel(self, n: usize) -> lindblad_fidelity::Result<NoiseChannel> {
        match self {
            ChannelSpec::Relaxation { qubit, rate } => NoiseChannel::relaxation(n, qubit, rate),
            ChannelSpec::Dephasing { qubit, rate } => NoiseChannel::dephasing(n, qubit, rate),
            ChannelSpec::CollectiveDephasing { rate } => {
                NoiseChannel::collective_dephasing(n, rate)
            }
            ChannelSpec::CollectiveRelaxation { rate } => {
                NoiseChannel::collective_relaxation(n, rate)
            }
            ChannelSpec::TwoPhoton { rate } => NoiseChannel::two_photon(n, rate),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub n: usize,
    pub tau: f64,
    pub gate_display: String,
    /// Present for named gates; None for explicit segment schedules.
    pub named_gate: Option<NamedGate>,
    pub schedule: GateSchedule,
    pub channels: Vec<ChannelSpec>,
    pub evaluation: Evaluation,
    pub samples: usize,
    pub seed: Option<u64>,
}

impl Scenario {
    pub fn noise_model(&self) -> lindblad_fidelity::Result<NoiseModel> {
        let mut channels = Vec::new();
        for spec in &self.channels {
            let ch = spec.to_channel(self.n)?;
            if !ch.is_null() {
                channels.push(ch);
            }
        }
        NoiseModel::new(self.n, channels)
    }
}

#[derive(Debug, Clone)]
pub struct Config {
    pub seed: Option<u64>,
    pub scenarios: Vec<Scenario>,
}

/// Parse and validate a config document. The error string names the
/// offending field.
pub fn parse(bytes: &[u8]) -> Result<Config, String> {
    let raw: RawConfig = serde_json::from_slice(bytes)
        .map_err(|e| format!("config is not valid JSON for this schema: {e}"))?;
    validate(raw)
}

fn validate(raw: RawConfig) -> Result<Config, String> {
    if raw.schema != SCHEMA_VERSION {
        return Err(format!(
            "schema: expected {SCHEMA_VERSION:?}, got {:?}",
            raw.schema
        ));
    }
    if raw.scenarios.is_empty() {
        return Err("scenarios: at least one scenario is required".to_string());
    }
    let mut scenarios = Vec::with_capacity(raw.scenarios.len());
    for (index, scenario) in raw.scenarios.into_iter().enumerate() {
        scenarios.push(validate_scenario(index, scenario)?);
    }
    Ok(Config {
        seed: raw.seed,
        scenarios,
    })
}

fn validate_scenario(index: usize, raw: RawScenario) -> Result<Scenario, String> {
    let at = |field: &str| format!("scenarios[{index}].{field}");

    if raw.n < 1 || raw.n > MAX_QUBITS {
        return Err(format!(
            "{}: qubit count must be in 1..={MAX_QUBITS}, got {}",
            at("n"),
            raw.n
        ));
    }
    if !raw.tau.is_finite() || raw.tau < 0.0 {
        return Err(format!(
            "{}: duration must be finite and nonnegative, got {}",
            at("tau"),
            raw.tau
        ));
    }

    let evaluation = match raw.evaluation.as_deref() {
        None | Some("both") => Evaluation::Both,
        Some("predict") => Evaluation::Predict,
        Some("simulate") => Evaluation::Simulate,
        Some(other) => {
            return Err(format!(
                "{}: unknown evaluation {other:?}; expected predict, simulate, or both",
                at("evaluation")
            ))
        }
    };

    let samples = raw.samples.unwrap_or(DEFAULT_SAMPLES);
    if samples != 0 && samples < MIN_FIDELITY_SAMPLES {
        return Err(format!(
            "{}: must be 0 (skip Monte Carlo) or >= {MIN_FIDELITY_SAMPLES}, got {samples}",
            at("samples")
        ));
    }

    let mut channels = Vec::with_capacity(raw.noise.len());
    for (ch_index, ch) in raw.noise.iter().enumerate() {
        let ch_at = |field: &str| format!("scenarios[{index}].noise[{ch_index}].{field}");
        if !ch.rate.is_finite() || ch.rate < 0.0 {
            return Err(format!(
                "{}: rate must be finite and nonnegative, got {}",
                ch_at("rate"),
                ch.rate
            ));
        }
        let needs_qubit = matches!(ch.kind.as_str(), "relaxation" | "dephasing");
        if needs_qubit {
            let qubit = ch
                .qubit
                .ok_or_else(|| format!("{}: required for kind {:?}", ch_at("qubit"), ch.kind))?;
            if qubit >= raw.n {
                return Err(format!(
                    "{}: qubit {qubit} out of range for n = {}",
                    ch_at("qubit"),
                    raw.n
                ));
            }
        } else if ch.qubit.is_some() {
            return Err(format!(
                "{}: not applicable for kind {:?}",
                ch_at("qubit"),
                ch.kind
            ));
        }
        let spec = match ch.kind.as_str() {
            "relaxation" => ChannelSpec::Relaxation {
                qubit: ch.qubit.unwrap(),
                rate: ch.rate,
            },
            "dephasing" => ChannelSpec::Dephasing {
                qubit: ch.qubit.unwrap(),
                rate: ch.rate,
            },
            "collective-dephasing" => ChannelSpec::CollectiveDephasing { rate: ch.rate },
            "collective-relaxation" => ChannelSpec::CollectiveRelaxation { rate: ch.rate },
            "two-photon" => {
                if raw.n != 2 {
                    return Err(format!(
                        "{}: two-photon requires n = 2, got n = {}",
                        ch_at("kind"),
                        raw.n
                    ));
                }
                ChannelSpec::TwoPhoton { rate: ch.rate }
            }
            other => {
                return Err(format!(
                    "{}: unknown channel kind {other:?}; expected one of {}",
                    ch_at("kind"),
                    CHANNEL_KINDS.join(", ")
                ))
            }
        };
        channels.push(spec);
    }

    let (named_gate, schedule, gate_display) = resolve_gate(index, &raw)?;

    Ok(Scenario {
        n: raw.n,
        tau: raw.tau,
        gate_display,
        named_gate,
        schedule,
        channels,
        evaluation,
        samples,
        seed: raw.seed,
    })
}

fn resolve_gate(
    index: usize,
    raw: &RawScenario,
) -> Result<(Option<NamedGate>, GateSchedule, String), String> {
    let at = format!("scenarios[{index}].gate");
    match &raw.gate {
        RawGate::Named(name) => {
            let gate = NamedGate::parse(name, None).map_err(|e| format!("{at}: {e}"))?;
            named_gate_schedule(&at, gate, raw.n, raw.tau)
        }
        RawGate::Seeded { name, seed } => {
            let gate = NamedGate::parse(name, Some(*seed)).map_err(|e| format!("{at}: {e}"))?;
            named_gate_schedule(&at, gate, raw.n, raw.tau)
        }
        RawGate::Explicit { segments } => {
            let d = 1usize << raw.n;
            let mut built = Vec::with_capacity(segments.len());
            for (seg_index, seg) in segments.iter().enumerate() {
                let seg_at = format!("{at}.segments[{seg_index}]");
                if seg.hamiltonian.len() != d || seg.hamiltonian.iter().any(|row| row.len() != d) {
                    return Err(format!(
                        "{seg_at}.hamiltonian: expected a {d}x{d} matrix for n = {}",
                        raw.n
                    ));
                }
                let mut h: CMatrix = Array2::zeros((d, d));
                for (i, row) in seg.hamiltonian.iter().enumerate() {
                    for (j, entry) in row.iter().enumerate() {
                        h[[i, j]] = Complex64::new(entry[0], entry[1]);
                    }
                }
                if !seg.duration.is_finite() || seg.duration < 0.0 {
                    return Err(format!(
                        "{seg_at}.duration: must be finite and nonnegative, got {}",
                        seg.duration
                    ));
                }
                built.push(Segment {
                    hamiltonian: h,
                    duration: seg.duration,
                });
            }
            let schedule =
                GateSchedule::new(raw.n, built).map_err(|e| format!("{at}.segments: {e}"))?;
            let total = schedule.total_duration();
            if (total - raw.tau).abs() > 1e-9 * raw.tau.max(1.0) {
                return Err(format!(
                    "{at}.segments: durations sum to {total}, but tau = {}",
                    raw.tau
                ));
            }
            Ok((None, schedule, "explicit".to_string()))
        }
    }
}

fn named_gate_schedule(
    at: &str,
    gate: NamedGate,
    n: usize,
    tau: f64,
) -> Result<(Option<NamedGate>, GateSchedule, String), String> {
    if let Some(required) = gate.required_qubits() {
        if n != required {
            return Err(format!(
                "{at}: gate {:?} requires n = {required}, got n = {n}",
                gate.display_name()
            ));
        }
    }
    if tau == 0.0 && !gate.is_identity() {
        return Err(format!(
            "{at}: gate {:?} needs tau > 0",
            gate.display_name()
        ));
    }
    let schedule = gate.schedule(n, tau).map_err(|e| format!("{at}: {e}"))?;
    Ok((Some(gate), schedule, gate.display_name()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal(gate: &str, noise: &str) -> String {
        format!(
            r#"{{
                "schema": "lindblad-fidelity/v1",
                "scenarios": [
                    {{"n": 1, "gate": {gate}, "tau": 1.0, "noise": [{noise}]}}
                ]
            }}"#
        )
    }

    #[test]
    fn parses_minimal_config() {
        let text = minimal(
            "\"identity\"",
            r#"{"kind": "relaxation", "qubit": 0, "rate": 1e-3}"#,
        );
        let config = parse(text.as_bytes()).unwrap();
        assert_eq!(config.scenarios.len(), 1);
        let sc = &config.scenarios[0];
        assert_eq!(sc.samples, DEFAULT_SAMPLES);
        assert_eq!(sc.evaluation, Evaluation::Both);
        assert_eq!(
            sc.channels[0],
            ChannelSpec::Relaxation {
                qubit: 0,
                rate: 1e-3
            }
        );
    }

    #[test]
    fn unknown_channel_kind_names_field() {
        let text = minimal("\"identity\"", r#"{"kind": "t2star", "rate": 1e-3}"#);
        let err = parse(text.as_bytes()).unwrap_err();
        assert!(err.contains("scenarios[0].noise[0].kind"), "{err}");
        assert!(err.contains("t2star"), "{err}");
    }

    #[test]
    fn unknown_gate_names_field() {
        let text = minimal("\"sqrt-swap\"", "");
        let err = parse(text.as_bytes()).unwrap_err();
        assert!(err.contains("scenarios[0].gate"), "{err}");
    }

    #[test]
    fn wrong_schema_rejected() {
        let text = r#"{"schema": "other/v2", "scenarios": []}"#;
        let err = parse(text.as_bytes()).unwrap_err();
        assert!(err.contains("schema"), "{err}");
    }

    #[test]
    fn qubit_out_of_range_rejected() {
        let text = minimal(
            "\"identity\"",
            r#"{"kind": "dephasing", "qubit": 1, "rate": 1e-3}"#,
        );
        let err = parse(text.as_bytes()).unwrap_err();
        assert!(err.contains("scenarios[0].noise[0].qubit"), "{err}");
    }

    #[test]
    fn two_photon_needs_two_qubits() {
        let text = minimal("\"identity\"", r#"{"kind": "two-photon", "rate": 1e-3}"#);
        let err = parse(text.as_bytes()).unwrap_err();
        assert!(err.contains("two-photon requires n = 2"), "{err}");
    }

    #[test]
    fn haar_random_needs_seed_object() {
        let text = minimal("\"haar-random\"", "");
        let err = parse(text.as_bytes()).unwrap_err();
        assert!(err.contains("seed"), "{err}");

        let text = minimal("{\"name\": \"haar-random\", \"seed\": 11}", "");
        let config = parse(text.as_bytes()).unwrap();
        assert_eq!(
            config.scenarios[0].named_gate,
            Some(NamedGate::HaarRandom { seed: 11 })
        );
    }

    #[test]
    fn explicit_segments_parse_and_check_tau() {
        let text = r#"{
            "schema": "lindblad-fidelity/v1",
            "scenarios": [{
                "n": 1,
                "gate": {"segments": [
                    {"hamiltonian": [[[0.0, 0.0], [0.5, 0.0]], [[0.5, 0.0], [0.0, 0.0]]],
                     "duration": 1.0}
                ]},
                "tau": 1.0,
                "noise": []
            }]
        }"#;
        let config = parse(text.as_bytes()).unwrap();
        assert_eq!(config.scenarios[0].gate_display, "explicit");

        let mismatched = text.replace("\"tau\": 1.0", "\"tau\": 2.0");
        let err = parse(mismatched.as_bytes()).unwrap_err();
        assert!(err.contains("durations sum"), "{err}");
    }

    #[test]
    fn non_hermitian_segment_rejected() {
        let text = r#"{
            "schema": "lindblad-fidelity/v1",
            "scenarios": [{
                "n": 1,
                "gate": {"segments": [
                    {"hamiltonian": [[[0.0, 0.0], [1.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]],
                     "duration": 1.0}
                ]},
                "tau": 1.0,
                "noise": []
            }]
        }"#;
        let err = parse(text.as_bytes()).unwrap_err();
        assert!(err.contains("segments"), "{err}");
        assert!(err.to_lowercase().contains("hermitian"), "{err}");
    }

    #[test]
    fn samples_bounds_enforced() {
        let text =
            minimal("\"identity\"", "").replace("\"tau\": 1.0", "\"tau\": 1.0, \"samples\": 10");
        let err = parse(text.as_bytes()).unwrap_err();
        assert!(err.contains("samples"), "{err}");
    }
}
