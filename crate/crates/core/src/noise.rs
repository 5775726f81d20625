// Copyright 2026 lindblad-fidelity contributors
// SPDX-License-Identifier: Apache-2.0

//! Dissipative channels: jump operators paired with master-equation rates.
//!
//! Rate convention. A [`NoiseChannel`] stores the coefficient that multiplies
//! the dissipator D[L] in the master equation. For pure dephasing the
//! user-facing rate is the coherence-decay rate Gamma_phi, while the
//! dissipator coefficient is Gamma_phi / 2; the division happens here, once,
//! at construction time, and is recorded in the channel label. Relaxation
//! rates enter the dissipator unmodified. All rates are in units of inverse
//! time (hbar = 1 throughout the crate).

use crate::error::{Error, Result};
use crate::linalg::{max_abs, CMatrix};
use crate::pauli::{embed, sigma_minus, sigma_z, MAX_QUBITS};

/// One Markovian decoherence process: jump operator plus dissipator rate.
#[derive(Debug, Clone)]
pub struct NoiseChannel {
    /// Jump operator L acting on the full 2^N-dimensional space.
    pub jump: CMatrix,
    /// Coefficient of D[L] in the master equation (not always the
    /// user-facing rate; see the module docs).
    pub rate: f64,
    pub label: String,
}

impl NoiseChannel {
    pub fn new(jump: CMatrix, rate: f64, label: impl Into<String>) -> Result<Self> {
        if rate < 0.0 || !rate.is_finite() {
            return Err(Error::NegativeRate(rate));
        }
        let d = jump.nrows();
        if jump.ncols() != d || d == 0 || !d.is_power_of_two() {
            return Err(Error::Dimension {
                expected: d.max(1),
                rows: jump.nrows(),
                cols: jump.ncols(),
            });
        }
        Ok(NoiseChannel {
            jump,
            rate,
            label: label.into(),
        })
    }

    pub fn dim(&self) -> usize {
        self.jump.nrows()
    }

    /// Energy relaxation on one qubit: jump sigma_-, dissipator rate Gamma_1.
    pub fn relaxation(n: usize, qubit: usize, gamma_1: f64) -> Result<Self> {
        let jump = embed(&sigma_minus(), qubit, n)?;
        NoiseChannel::new(jump, gamma_1, format!("relaxation[q{qubit}]"))
    }

    /// Pure dephasing on one qubit: jump sigma_z, dissipator rate
    /// Gamma_phi / 2, so that single-qubit coherences decay at Gamma_phi.
    pub fn dephasing(n: usize, qubit: usize, gamma_phi: f64) -> Result<Self> {
        if gamma_phi < 0.0 || !gamma_phi.is_finite() {
            return Err(Error::NegativeRate(gamma_phi));
        }
        let jump = embed(&sigma_z(), qubit, n)?;
        NoiseChannel::new(
            jump,
            gamma_phi / 2.0,
            format!("dephasing[q{qubit}] (stored rate = Gamma_phi/2)"),
        )
    }

    /// Collective dephasing: jump sum_k sigma_z^k with equal weights,
    /// dissipator rate Gamma_phi_c / 2.
    pub fn collective_dephasing(n: usize, gamma_phi_c: f64) -> Result<Self> {
        if gamma_phi_c < 0.0 || !gamma_phi_c.is_finite() {
            return Err(Error::NegativeRate(gamma_phi_c));
        }
        let jump = collective_sum(&sigma_z(), n)?;
        NoiseChannel::new(
            jump,
            gamma_phi_c / 2.0,
            "collective-dephasing (stored rate = Gamma_phi_c/2)".to_string(),
        )
    }

    /// Collective relaxation: jump sum_k sigma_-^k with equal weights,
    /// dissipator rate Gamma_1c.
    pub fn collective_relaxation(n: usize, gamma_1c: f64) -> Result<Self> {
        let jump = collective_sum(&sigma_minus(), n)?;
        NoiseChannel::new(jump, gamma_1c, "collective-relaxation".to_string())
    }

    /// Two-photon relaxation of a qubit pair: jump sigma_- kron sigma_-,
    /// dissipator rate Gamma_2p. Only defined for N = 2.
    pub fn two_photon(n: usize, gamma_2p: f64) -> Result<Self> {
        if n != 2 {
            return Err(Error::TwoPhotonQubits(n));
        }
        let jump = crate::linalg::kron(&sigma_minus(), &sigma_minus());
        NoiseChannel::new(jump, gamma_2p, "two-photon".to_string())
    }

    /// True when the channel cannot affect the dynamics.
    pub fn is_null(&self) -> bool {
        self.rate == 0.0 || max_abs(&self.jump) == 0.0
    }
}

fn collective_sum(op: &CMatrix, n: usize) -> Result<CMatrix> {
    let mut jump = embed(op, 0, n)?;
    for qubit in 1..n {
        jump = jump + embed(op, qubit, n)?;
    }
    Ok(jump)
}

/// A set of channels acting on the same N-qubit register.
#[derive(Debug, Clone)]
pub struct NoiseModel {
    n: usize,
    channels: Vec<NoiseChannel>,
}

impl NoiseModel {
    pub fn new(n: usize, channels: Vec<NoiseChannel>) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&n) {
            return Err(Error::QubitCount { n, max: MAX_QUBITS });
        }
        let d = 1usize << n;
        for ch in &channels {
            if ch.dim() != d {
                return Err(Error::Dimension {
                    expected: d,
                    rows: ch.jump.nrows(),
                    cols: ch.jump.ncols(),
                });
            }
        }
        Ok(NoiseModel { n, channels })
    }

    pub fn empty(n: usize) -> Result<Self> {
        NoiseModel::new(n, Vec::new())
    }

    pub fn single(channel: NoiseChannel) -> Result<Self> {
        let n = channel.dim().trailing_zeros() as usize;
        NoiseModel::new(n, vec![channel])
    }

    /// Independent relaxation and dephasing on every qubit. Zero-rate
    /// channels are dropped so the superoperator assembly stays minimal.
    pub fn standard_uncorrelated(n: usize, gamma_1: &[f64], gamma_phi: &[f64]) -> Result<Self> {
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
        let mut channels = Vec::new();
        for (qubit, &rate) in gamma_1.iter().enumerate() {
            if rate != 0.0 {
                channels.push(NoiseChannel::relaxation(n, qubit, rate)?);
            } else if rate < 0.0 {
                return Err(Error::NegativeRate(rate));
            }
        }
        for (qubit, &rate) in gamma_phi.iter().enumerate() {
            if rate != 0.0 {
                channels.push(NoiseChannel::dephasing(n, qubit, rate)?);
            } else if rate < 0.0 {
                return Err(Error::NegativeRate(rate));
            }
        }
        NoiseModel::new(n, channels)
    }

    pub fn push(&mut self, channel: NoiseChannel) -> Result<()> {
        if channel.dim() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                rows: channel.jump.nrows(),
                cols: channel.jump.ncols(),
            });
        }
        self.channels.push(channel);
        Ok(())
    }

    pub fn qubit_count(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn channels(&self) -> &[NoiseChannel] {
        &self.channels
    }

    pub fn is_empty(&self) -> bool {
        self.channels.is_empty()
    }
}
