// Copyright 2026 lindblad-fidelity contributors
// SPDX-License-Identifier: Apache-2.0

//! Error type shared by all modules of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit count {n} outside the supported range 1..={max}")]
    QubitCount { n: usize, max: usize },

    #[error("qubit index {index} out of range for {n} qubits")]
    QubitIndex { index: usize, n: usize },

    #[error("dimension mismatch: expected {expected}x{expected}, got {rows}x{cols}")]
    Dimension {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("rate must be nonnegative, got {0}")]
    NegativeRate(f64),

    #[error("rate lists need one entry per qubit: expected {expected}, got {got}")]
    RateListLength { expected: usize, got: usize },

    #[error("two-photon relaxation is defined for exactly 2 qubits, got {0}")]
    TwoPhotonQubits(usize),

    #[error("operator is not Hermitian: max |A - A^dag| = {defect:.3e}")]
    NotHermitian { defect: f64 },

    #[error("state vector has norm {0}, expected 1")]
    NotNormalized(f64),

    #[error("duration must be nonnegative and finite, got {0}")]
    BadDuration(f64),

    #[error("quadrature needs at least {min} steps, got {got}")]
    TooFewSteps { min: usize, got: usize },

    #[error("at least {min} samples required, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("density-matrix invariant violated: {0}")]
    Invariant(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
