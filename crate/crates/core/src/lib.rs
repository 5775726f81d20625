// Copyright 2026 lindblad-fidelity contributors
// SPDX-License-Identifier: Apache-2.0

//! Average gate fidelity of N-qubit gates under weak Markovian dissipation.
//!
//! To first order in Gamma tau, the fidelity reduction of a gate is
//! independent of which unitary is performed: each dissipative channel
//! contributes tau * Gamma_k * dF(L_k), where dF depends only on the jump
//! operator. This crate evaluates those closed forms ([`theory`]) and
//! independently verifies them with a dense Lindblad master-equation
//! simulator ([`engine`]) plus Haar-averaged fidelity evaluation
//! ([`fidelity`]).
//!
//! Units: hbar = 1; rates and Hamiltonian entries are in inverse time, gate
//! durations in time, so only products like Gamma tau are meaningful.
//!
//! ```
//! use lindblad_fidelity::{
//!     engine::GateSchedule,
//!     fidelity::avg_fidelity_exact,
//!     noise::NoiseModel,
//!     theory::predict_first_order,
//! };
//!
//! let model = NoiseModel::standard_uncorrelated(1, &[1e-3], &[1e-3]).unwrap();
//! let predicted = predict_first_order(&model, 1.0).unwrap().fbar;
//! let simulated =
//!     avg_fidelity_exact(&GateSchedule::identity(1, 1.0).unwrap(), &model).unwrap();
//! assert!((predicted - simulated).abs() < 1e-5);
//! ```

pub mod engine;
pub mod error;
pub mod fidelity;
pub mod linalg;
pub mod noise;
pub mod pauli;
pub mod theory;

pub use engine::{DensityMatrix, GateSchedule, Propagator, Segment};
pub use error::{Error, Result};
pub use fidelity::{FidelityEstimate, HaarSampler};
pub use noise::{NoiseChannel, NoiseModel};
pub use pauli::{Pauli, PauliString};
pub use theory::{DeltaF, FidelityPrediction, RotationAxis};
