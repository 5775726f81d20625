// Copyright 2026 lindblad-fidelity contributors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form fidelity reduction from weak Markovian dissipation.
//!
//! The central quantity is the per-channel factor
//!
//! ```text
//! dF(L) = (1 - d)/d^2 Tr[L^dag L] + 1/(d^2 (d+1)) sum_i Tr[L^dag f_i L f_i]
//! ```
//!
//! summed over the d^2 - 1 traceless Pauli basis matrices f_i. To first
//! order in the dissipation the average gate fidelity is
//!
//! ```text
//! Fbar = 1 + tau * sum_k Gamma_k dF(L_k)
//! ```
//!
//! independent of which unitary is performed: no operation in this module
//! takes a gate as input. The rates entering the sum are the dissipator
//! coefficients stored in each [`NoiseChannel`], so the dephasing
//! Gamma_phi/2 convention is applied exactly once, in `noise`.

use crate::error::{Error, Result};
use crate::linalg::{adjoint, trace, CMatrix};
use crate::noise::{NoiseChannel, NoiseModel};
use crate::pauli::{pauli_basis, sigma_x, sigma_y, sigma_z, MAX_QUBITS};

/// Expansion order of a fidelity prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionOrder {
    First,
    Second,
}

/// Per-channel fidelity-reduction factor.
#[derive(Debug, Clone)]
pub struct DeltaF {
    pub value: f64,
    pub channel_label: String,
    pub qubit_count: usize,
}

impl DeltaF {
    pub fn of_channel(channel: &NoiseChannel, n: usize) -> Result<DeltaF> {
        Ok(DeltaF {
            value: delta_f_general(&channel.jump, n)?,
            channel_label: channel.label.clone(),
            qubit_count: n,
        })
    }
}

/// One channel's contribution to a first-order prediction.
#[derive(Debug, Clone)]
pub struct ChannelTerm {
    pub label: String,
    /// Dissipator rate (the stored master-equation coefficient).
    pub rate: f64,
    pub delta_f: f64,
    /// rate * tau * delta_f; sums to fbar - 1 at first order.
    pub contribution: f64,
}

/// Beyond this value of max_k Gamma_k tau the first-order expansion is not
/// to be trusted and predictions carry a warning flag.
pub const EXPANSION_WARNING_THRESHOLD: f64 = 0.1;

/// Predicted average gate fidelity with its per-channel breakdown.
///
/// Predictions are returned unclamped: values below 0 (or above 1) signal
/// expansion breakdown and hiding them would mask exactly the regime the
/// warning flag exists for.
#[derive(Debug, Clone)]
pub struct FidelityPrediction {
    pub fbar: f64,
    pub order: ExpansionOrder,
    pub terms: Vec<ChannelTerm>,
    /// max_k (stored rate_k) * tau, the expansion smallness diagnostic.
    pub gamma_tau_max: f64,
    /// sum_k (stored rate_k) * tau, used for residual normalization.
    pub gamma_tau_sum: f64,
    pub expansion_warning: bool,
    /// The tau^2 contribution, present only for second-order predictions.
    pub second_order_term: Option<f64>,
}

fn check_square_pow2(jump: &CMatrix, n: usize) -> Result<usize> {
    if !(1..=MAX_QUBITS).contains(&n) {
        return Err(Error::QubitCount { n, max: MAX_QUBITS });
    }
    let d = 1usize << n;
    if jump.nrows() != d || jump.ncols() != d {
        return Err(Error::Dimension {
            expected: d,
            rows: jump.nrows(),
            cols: jump.ncols(),
        });
    }
    Ok(d)
}

/// General N-qubit fidelity-reduction factor of a jump operator.
///
/// Evaluated through two algebraic routes — the traceless-basis form above
/// and its rearrangement with the identity folded into the basis sum —
/// which must agree to 1e-10; a mismatch means the Pauli algebra is
/// corrupted and is reported as a numerical failure.
pub fn delta_f_general(jump: &CMatrix, n: usize) -> Result<f64> {
    let d = check_square_pow2(jump, n)? as f64;
    let jdag = adjoint(jump);
    let jdag_j = jdag.dot(jump);

    let mut basis_sum = 0.0;
    let mut basis_sum_rearranged = 0.0;
    for p in pauli_basis(n)? {
        let f = p.materialize();
        let term = trace(&f.dot(jump).dot(&f).dot(&jdag)).re;
        basis_sum_rearranged += term;
        if !p.is_identity() {
            basis_sum += term;
        }
    }
    let trace_jdag_j = trace(&jdag_j).re;

    let direct = (1.0 - d) / (d * d) * trace_jdag_j + basis_sum / (d * d * (d + 1.0));
    let rearranged = -trace_jdag_j / (d + 1.0) + basis_sum_rearranged / (d * d * (d + 1.0));

    let scale = 1.0f64.max(direct.abs());
    if (direct - rearranged).abs() > 1e-10 * scale {
        return Err(Error::Numerical(format!(
            "delta_f route mismatch: {direct} vs {rearranged}"
        )));
    }
    Ok(direct)
}

/// Single-qubit special case,
/// dF = -Tr[L^dag L]/4 + (1/12) sum_j Tr[L^dag s_j L s_j].
pub fn delta_f_single_qubit(jump: &CMatrix) -> Result<f64> {
    if jump.nrows() != 2 || jump.ncols() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            rows: jump.nrows(),
            cols: jump.ncols(),
        });
    }
    let jdag = adjoint(jump);
    let mut sum = 0.0;
    for s in [sigma_x(), sigma_y(), sigma_z()] {
        sum += trace(&jdag.dot(&s).dot(jump).dot(&s)).re;
    }
    Ok(-trace(&jdag.dot(jump)).re / 4.0 + sum / 12.0)
}

fn prediction_from_terms(
    terms: Vec<ChannelTerm>,
    tau: f64,
    order: ExpansionOrder,
    second_order_term: Option<f64>,
) -> FidelityPrediction {
    let gamma_tau_max = terms.iter().fold(0.0f64, |m, t| m.max(t.rate * tau));
    let gamma_tau_sum: f64 = terms.iter().map(|t| t.rate * tau).sum();
    let fbar =
        1.0 + terms.iter().map(|t| t.contribution).sum::<f64>() + second_order_term.unwrap_or(0.0);
    FidelityPrediction {
        fbar,
        order,
        terms,
        gamma_tau_max,
        gamma_tau_sum,
        expansion_warning: gamma_tau_max > EXPANSION_WARNING_THRESHOLD,
        second_order_term,
    }
}

/// First-order prediction Fbar = 1 + tau sum_k Gamma_k dF(L_k) for an
/// arbitrary noise model. Gate-independent by construction.
pub fn predict_first_order(model: &NoiseModel, tau: f64) -> Result<FidelityPrediction> {
    if tau < 0.0 || !tau.is_finite() {
        return Err(Error::BadDuration(tau));
    }
    let n = model.qubit_count();
    let mut terms = Vec::with_capacity(model.channels().len());
    for ch in model.channels() {
        let df = delta_f_general(&ch.jump, n)?;
        terms.push(ChannelTerm {
            label: ch.label.clone(),
            rate: ch.rate,
            delta_f: df,
            contribution: ch.rate * tau * df,
        });
    }
    Ok(prediction_from_terms(
        terms,
        tau,
        ExpansionOrder::First,
        None,
    ))
}

/// Closed form for uncorrelated relaxation and dephasing on every qubit:
/// Fbar = 1 - d/(2(d+1)) tau sum_k (Gamma_1^k + Gamma_phi^k).
pub fn predict_uncorrelated(
    n: usize,
    gamma_1: &[f64],
    gamma_phi: &[f64],
    tau: f64,
) -> Result<FidelityPrediction> {
    if !(1..=MAX_QUBITS).contains(&n) {
        return Err(Error::QubitCount { n, max: MAX_QUBITS });
    }
    if gamma_1.len() != n {
        return Err(Error::RateListLength {
            expected: n,
            got: gamma_1.len(),
        });
    }
    if gamma_phi.len() != n {
        return Err(Error::RateListLength {
            expected: n,
            got: gamma_phi.len(),
        });
    }
    if tau < 0.0 || !tau.is_finite() {
        return Err(Error::BadDuration(tau));
    }
    let d = (1usize << n) as f64;
    let df_relaxation = -d / (2.0 * (d + 1.0));
    let df_dephasing = -d / (d + 1.0);

    let mut terms = Vec::new();
    for (qubit, &g1) in gamma_1.iter().enumerate() {
        if g1 < 0.0 {
            return Err(Error::NegativeRate(g1));
        }
        if g1 != 0.0 {
            terms.push(ChannelTerm {
                label: format!("relaxation[q{qubit}]"),
                rate: g1,
                delta_f: df_relaxation,
                contribution: g1 * tau * df_relaxation,
            });
        }
    }
    for (qubit, &gphi) in gamma_phi.iter().enumerate() {
        if gphi < 0.0 {
            return Err(Error::NegativeRate(gphi));
        }
        if gphi != 0.0 {
            terms.push(ChannelTerm {
                label: format!("dephasing[q{qubit}] (stored rate = Gamma_phi/2)"),
                rate: gphi / 2.0,
                delta_f: df_dephasing,
                contribution: (gphi / 2.0) * tau * df_dephasing,
            });
        }
    }
    Ok(prediction_from_terms(
        terms,
        tau,
        ExpansionOrder::First,
        None,
    ))
}

/// Closed form for equal-weight collective relaxation and dephasing:
/// Fbar = 1 - N d/(2(d+1)) tau (Gamma_1c + Gamma_phi_c). Identical, at
/// first order, to uncorrelated noise of the same per-qubit rates.
pub fn predict_correlated(
    n: usize,
    gamma_1c: f64,
    gamma_phi_c: f64,
    tau: f64,
) -> Result<FidelityPrediction> {
    if !(1..=MAX_QUBITS).contains(&n) {
        return Err(Error::QubitCount { n, max: MAX_QUBITS });
    }
    for rate in [gamma_1c, gamma_phi_c] {
        if rate < 0.0 || !rate.is_finite() {
            return Err(Error::NegativeRate(rate));
        }
    }
    if tau < 0.0 || !tau.is_finite() {
        return Err(Error::BadDuration(tau));
    }
    let d = (1usize << n) as f64;
    let nf = n as f64;
    let mut terms = Vec::new();
    if gamma_1c != 0.0 {
        let df = -nf * d / (2.0 * (d + 1.0));
        terms.push(ChannelTerm {
            label: "collective-relaxation".to_string(),
            rate: gamma_1c,
            delta_f: df,
            contribution: gamma_1c * tau * df,
        });
    }
    if gamma_phi_c != 0.0 {
        let df = -nf * d / (d + 1.0);
        terms.push(ChannelTerm {
            label: "collective-dephasing (stored rate = Gamma_phi_c/2)".to_string(),
            rate: gamma_phi_c / 2.0,
            delta_f: df,
            contribution: (gamma_phi_c / 2.0) * tau * df,
        });
    }
    Ok(prediction_from_terms(
        terms,
        tau,
        ExpansionOrder::First,
        None,
    ))
}

/// Rotation axis of the second-order single-qubit reference formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationAxis {
    X,
    Z,
}

/// Second-order gate fidelity of a single-qubit pi rotation under
/// relaxation Gamma_1 and dephasing Gamma_phi:
///
/// ```text
/// x axis: 1 - (G1 + Gphi) tau / 3 + (1/8)(11/12 G1^2 + 5/3 G1 Gphi + Gphi^2) tau^2
/// z axis: 1 - (G1 + Gphi) tau / 3 + (1/8)(G1^2 + 4/3 (G1 Gphi + Gphi^2)) tau^2
/// ```
///
/// The axes differ only at second order; the schedules realizing these
/// rotations are constant-amplitude resonant drives of duration tau.
pub fn second_order_pi_rotation(
    axis: RotationAxis,
    gamma_1: f64,
    gamma_phi: f64,
    tau: f64,
) -> Result<FidelityPrediction> {
    for rate in [gamma_1, gamma_phi] {
        if rate < 0.0 || !rate.is_finite() {
            return Err(Error::NegativeRate(rate));
        }
    }
    if tau < 0.0 || !tau.is_finite() {
        return Err(Error::BadDuration(tau));
    }
    let quadratic = match axis {
        RotationAxis::X => {
            (11.0 / 12.0 * gamma_1 * gamma_1
                + 5.0 / 3.0 * gamma_1 * gamma_phi
                + gamma_phi * gamma_phi)
                / 8.0
        }
        RotationAxis::Z => {
            (gamma_1 * gamma_1 + 4.0 / 3.0 * (gamma_1 * gamma_phi + gamma_phi * gamma_phi)) / 8.0
        }
    };
    let mut terms = Vec::new();
    if gamma_1 != 0.0 {
        terms.push(ChannelTerm {
            label: "relaxation[q0]".to_string(),
            rate: gamma_1,
            delta_f: -1.0 / 3.0,
            contribution: -gamma_1 * tau / 3.0,
        });
    }
    if gamma_phi != 0.0 {
        terms.push(ChannelTerm {
            label: "dephasing[q0] (stored rate = Gamma_phi/2)".to_string(),
            rate: gamma_phi / 2.0,
            delta_f: -2.0 / 3.0,
            contribution: -gamma_phi * tau / 3.0,
        });
    }
    Ok(prediction_from_terms(
        terms,
        tau,
        ExpansionOrder::Second,
        Some(quadratic * tau * tau),
    ))
}
