// Copyright 2026 lindblad-fidelity contributors
// SPDX-License-Identifier: Apache-2.0

//! Machine-readable run reports.
//!
//! Reports are deterministic for identical config bytes and seed: scenario
//! rows are ordered by index and all fields are serialized with a fixed
//! layout. The only nondeterministic field is `wall_time_seconds` in the
//! metadata block.

use serde::{Deserialize, Serialize};
use std::io::Write;

pub const SCHEMA_VERSION: &str = "lindblad-fidelity/v1";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema: String,
    pub metadata: Metadata,
    pub scenarios: Vec<ScenarioReport>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    pub config_sha256: String,
    pub seed: u64,
    pub version: String,
    pub wall_time_seconds: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermReport {
    pub label: String,
    /// Dissipator rate (master-equation coefficient).
    pub rate: f64,
    pub delta_f: f64,
    pub contribution: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonteCarloReport {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioReport {
    pub index: usize,
    pub n: usize,
    pub gate: String,
    pub tau: f64,
    /// max_k (dissipator rate_k) * tau
    pub gamma_tau_max: f64,
    /// sum_k (dissipator rate_k) * tau
    pub gamma_tau_sum: f64,
    pub expansion_warning: bool,
    pub predicted_first_order: Option<f64>,
    pub predicted_terms: Option<Vec<TermReport>>,
    pub predicted_second_order: Option<f64>,
    pub simulated_exact: Option<f64>,
    pub simulated_monte_carlo: Option<MonteCarloReport>,
    /// simulated_exact - predicted_first_order, unrounded.
    pub residual: Option<f64>,
    pub residual_over_gammatau_sq: Option<f64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut body = serde_json::to_string_pretty(self).expect("report serialization");
        body.push('\n');
        body
    }

    /// Flat per-scenario summary for spreadsheet triage.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(
            w,
            "index,n,gate,tau,gamma_tau_sum,expansion_warning,predicted_first_order,\
             predicted_second_order,simulated_exact,mc_mean,mc_std_error,mc_samples,\
             residual,residual_over_gammatau_sq"
        )?;
        for s in &self.scenarios {
            let opt = |v: &Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
            let (mc_mean, mc_err, mc_samples) = match &s.simulated_monte_carlo {
                Some(mc) => (
                    format!("{:e}", mc.mean),
                    format!("{:e}", mc.std_error),
                    mc.samples.to_string(),
                ),
                None => (String::new(), String::new(), String::new()),
            };
            writeln!(
                w,
                "{},{},{},{:e},{:e},{},{},{},{},{},{},{},{},{}",
                s.index,
                s.n,
                s.gate,
                s.tau,
                s.gamma_tau_sum,
                s.expansion_warning,
                opt(&s.predicted_first_order),
                opt(&s.predicted_second_order),
                opt(&s.simulated_exact),
                mc_mean,
                mc_err,
                mc_samples,
                opt(&s.residual),
                opt(&s.residual_over_gammatau_sq),
            )?;
        }
        Ok(())
    }

    /// Short human-readable summary table.
    pub fn print_table(&self) {
        println!(
            "{:<5} {:<3} {:<22} {:>9} {:>13} {:>13} {:>11} flags",
            "idx", "n", "gate", "tau", "predicted", "exact", "residual"
        );
        for s in &self.scenarios {
            let fmt = |v: &Option<f64>| match v {
                Some(x) => format!("{x:.9}"),
                None => "-".to_string(),
            };
            let resid = match s.residual {
                Some(r) => format!("{r:+.2e}"),
                None => "-".to_string(),
            };
            let flags = if s.expansion_warning {
                "expansion-warning"
            } else {
                ""
            };
            println!(
                "{:<5} {:<3} {:<22} {:>9.4} {:>13} {:>13} {:>11} {}",
                s.index,
                s.n,
                s.gate,
                s.tau,
                fmt(&s.predicted_first_order),
                fmt(&s.simulated_exact),
                resid,
                flags
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report() -> Report {
        Report {
            schema: SCHEMA_VERSION.to_string(),
            metadata: Metadata {
                config_sha256: "00".repeat(32),
                seed: 7,
                version: "test".to_string(),
                wall_time_seconds: 0.25,
            },
            scenarios: vec![ScenarioReport {
                index: 0,
                n: 1,
                gate: "identity".to_string(),
                tau: 1.0,
                gamma_tau_max: 1e-3,
                gamma_tau_sum: 1.5e-3,
                expansion_warning: false,
                predicted_first_order: Some(0.999),
                predicted_terms: Some(vec![]),
                predicted_second_order: None,
                simulated_exact: Some(0.9990002),
                simulated_monte_carlo: None,
                residual: Some(2e-7),
                residual_over_gammatau_sq: Some(0.0889),
            }],
        }
    }

    #[test]
    fn json_roundtrips_and_is_stable() {
        let report = sample_report();
        let a = report.to_json();
        let b = report.to_json();
        assert_eq!(a, b);
        let parsed: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(parsed["schema"], SCHEMA_VERSION);
        assert_eq!(
            parsed["scenarios"][0]["predicted_second_order"],
            serde_json::Value::Null
        );

        // schema round-trip: emitted reports parse back into the same types
        let reparsed: Report = serde_json::from_str(&a).unwrap();
        assert_eq!(reparsed.to_json(), a);
    }

    #[test]
    fn csv_has_header_plus_rows() {
        let report = sample_report();
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.trim_end().lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("index,n,gate"));
        assert!(lines[1].starts_with("0,1,identity"));
    }
}
