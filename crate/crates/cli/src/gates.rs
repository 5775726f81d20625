// Copyright 2026 lindblad-fidelity contributors
// SPDX-License-Identifier: Apache-2.0

//! Named gate library.
//!
//! The fidelity theory is gate-independent, so this set exists for
//! ergonomics and for the second-order pi-rotation cross-checks. Every
//! named gate expands to a constant-amplitude schedule whose ideal unitary
//! reproduces the textbook matrix (including global phase) to 1e-10.

use ndarray::Array2;
use num_complex::Complex64;

use lindblad_fidelity::error::Result;
use lindblad_fidelity::linalg::{c, identity, kron, CMatrix};
use lindblad_fidelity::pauli::{sigma_0, sigma_x, sigma_z};
use lindblad_fidelity::{GateSchedule, HaarSampler};

pub const GATE_NAMES: [&str; 8] = [
    "identity",
    "x90",
    "x180",
    "z180",
    "h",
    "cz",
    "cnot",
    "haar-random",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedGate {
    Identity,
    X90,
    X180,
    Z180,
    Hadamard,
    Cz,
    Cnot,
    HaarRandom { seed: u64 },
}

impl NamedGate {
    /// Resolve a gate name plus optional seed. Errors are plain strings for
    /// the config validator to wrap with a field path.
    pub fn parse(name: &str, seed: Option<u64>) -> std::result::Result<Self, String> {
        let gate = match name {
            "identity" => NamedGate::Identity,
            "x90" => NamedGate::X90,
            "x180" => NamedGate::X180,
            "z180" => NamedGate::Z180,
            "h" => NamedGate::Hadamard,
            "cz" => NamedGate::Cz,
            "cnot" => NamedGate::Cnot,
            "haar-random" => match seed {
                Some(seed) => NamedGate::HaarRandom { seed },
                None => {
                    return Err("gate \"haar-random\" requires an object form with a seed, \
                         e.g. {\"name\": \"haar-random\", \"seed\": 7}"
                        .to_string())
                }
            },
            other => {
                return Err(format!(
                    "unknown gate name {other:?}; expected one of {}",
                    GATE_NAMES.join(", ")
                ))
            }
        };
        if seed.is_some() && !matches!(gate, NamedGate::HaarRandom { .. }) {
            return Err(format!("gate {name:?} does not take a seed"));
        }
        Ok(gate)
    }

    pub fn display_name(&self) -> String {
        match self {
            NamedGate::Identity => "identity".to_string(),
            NamedGate::X90 => "x90".to_string(),
            NamedGate::X180 => "x180".to_string(),
            NamedGate::Z180 => "z180".to_string(),
            NamedGate::Hadamard => "h".to_string(),
            NamedGate::Cz => "cz".to_string(),
            NamedGate::Cnot => "cnot".to_string(),
            NamedGate::HaarRandom { seed } => format!("haar-random(seed={seed})"),
        }
    }

    /// Exact qubit count the gate needs, or None when any count works.
    pub fn required_qubits(&self) -> Option<usize> {
        match self {
            NamedGate::Identity | NamedGate::HaarRandom { .. } => None,
            NamedGate::X90 | NamedGate::X180 | NamedGate::Z180 | NamedGate::Hadamard => Some(1),
            NamedGate::Cz | NamedGate::Cnot => Some(2),
        }
    }

    /// True for gates that are pure free evolution (tau = 0 is allowed).
    pub fn is_identity(&self) -> bool {
        matches!(self, NamedGate::Identity)
    }

    /// Constant-amplitude schedule of duration `tau` realizing the gate.
    pub fn schedule(&self, n: usize, tau: f64) -> Result<GateSchedule> {
        let pi = std::f64::consts::PI;
        match self {
            NamedGate::Identity => GateSchedule::identity(n, tau),
            NamedGate::X90 => GateSchedule::constant(1, sigma_x() * c(pi / (4.0 * tau)), tau),
            NamedGate::X180 => GateSchedule::constant(1, sigma_x() * c(pi / (2.0 * tau)), tau),
            NamedGate::Z180 => GateSchedule::constant(1, sigma_z() * c(pi / (2.0 * tau)), tau),
            NamedGate::Hadamard => {
                // H = exp(-i (pi/2) (n.sigma - I)) with n = (x + z)/sqrt(2);
                // the -I piece supplies the global phase of the textbook
                // matrix.
                let axis = (sigma_x() + sigma_z()) * c(1.0 / 2.0f64.sqrt());
                let generator = (axis - sigma_0()) * c(pi / (2.0 * tau));
                GateSchedule::constant(1, generator, tau)
            }
            NamedGate::Cz => {
                // CZ = exp(+i pi |11><11|)
                let mut h: CMatrix = Array2::zeros((4, 4));
                h[[3, 3]] = c(-pi / tau);
                GateSchedule::constant(2, h, tau)
            }
            NamedGate::Cnot => {
                // CNOT = exp(-i pi P) with the projector
                // P = |1><1| kron (I - sigma_x)/2
                let minus = (sigma_0() - sigma_x()) * c(0.5);
                let excited = {
                    let mut e: CMatrix = Array2::zeros((2, 2));
                    e[[1, 1]] = c(1.0);
                    e
                };
                let h = kron(&excited, &minus) * c(pi / tau);
                GateSchedule::constant(2, h, tau)
            }
            NamedGate::HaarRandom { seed } => {
                let u = HaarSampler::new(*seed, 1 << n).unitary();
                GateSchedule::for_unitary(n, &u, tau)
            }
        }
    }

    /// Textbook matrix for the fixed gates (None for haar-random).
    pub fn textbook_matrix(&self, n: usize) -> Option<CMatrix> {
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        match self {
            NamedGate::Identity => Some(identity(1 << n)),
            NamedGate::X90 => {
                let cos = c((std::f64::consts::PI / 4.0).cos());
                let msin = Complex64::new(0.0, -(std::f64::consts::PI / 4.0).sin());
                let mut m: CMatrix = Array2::zeros((2, 2));
                m[[0, 0]] = cos;
                m[[0, 1]] = msin;
                m[[1, 0]] = msin;
                m[[1, 1]] = cos;
                Some(m)
            }
            NamedGate::X180 => {
                let mut m: CMatrix = Array2::zeros((2, 2));
                m[[0, 1]] = Complex64::new(0.0, -1.0);
                m[[1, 0]] = Complex64::new(0.0, -1.0);
                Some(m)
            }
            NamedGate::Z180 => {
                let mut m: CMatrix = Array2::zeros((2, 2));
                m[[0, 0]] = Complex64::new(0.0, -1.0);
                m[[1, 1]] = Complex64::new(0.0, 1.0);
                Some(m)
            }
            NamedGate::Hadamard => {
                let mut m: CMatrix = Array2::zeros((2, 2));
                m[[0, 0]] = c(inv_sqrt2);
                m[[0, 1]] = c(inv_sqrt2);
                m[[1, 0]] = c(inv_sqrt2);
                m[[1, 1]] = c(-inv_sqrt2);
                Some(m)
            }
            NamedGate::Cz => {
                let mut m = identity(4);
                m[[3, 3]] = c(-1.0);
                Some(m)
            }
            NamedGate::Cnot => {
                let mut m: CMatrix = Array2::zeros((4, 4));
                m[[0, 0]] = c(1.0);
                m[[1, 1]] = c(1.0);
                m[[2, 3]] = c(1.0);
                m[[3, 2]] = c(1.0);
                Some(m)
            }
            NamedGate::HaarRandom { .. } => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lindblad_fidelity::engine::ideal_unitary;
    use lindblad_fidelity::linalg::{max_abs_diff, unitarity_defect};

    #[test]
    fn named_gates_match_textbook_matrices() {
        let cases = [
            (NamedGate::Identity, 1usize),
            (NamedGate::Identity, 3),
            (NamedGate::X90, 1),
            (NamedGate::X180, 1),
            (NamedGate::Z180, 1),
            (NamedGate::Hadamard, 1),
            (NamedGate::Cz, 2),
            (NamedGate::Cnot, 2),
        ];
        for (gate, n) in cases {
            let schedule = gate.schedule(n, 1.0).unwrap();
            let u = ideal_unitary(&schedule).unwrap();
            let textbook = gate.textbook_matrix(n).unwrap();
            assert!(
                max_abs_diff(&u, &textbook) < 1e-10,
                "{}: max diff {}",
                gate.display_name(),
                max_abs_diff(&u, &textbook)
            );
        }
    }

    #[test]
    fn haar_random_gate_is_unitary_and_seeded() {
        let a = NamedGate::HaarRandom { seed: 5 };
        let b = NamedGate::HaarRandom { seed: 5 };
        let ua = ideal_unitary(&a.schedule(2, 1.0).unwrap()).unwrap();
        let ub = ideal_unitary(&b.schedule(2, 1.0).unwrap()).unwrap();
        assert!(max_abs_diff(&ua, &ub) < 1e-12);
        assert!(unitarity_defect(&ua) < 1e-10);

        let other = NamedGate::HaarRandom { seed: 6 };
        let uo = ideal_unitary(&other.schedule(2, 1.0).unwrap()).unwrap();
        assert!(max_abs_diff(&ua, &uo) > 1e-3);
    }

    #[test]
    fn parse_rejects_unknown_and_misused_seed() {
        assert!(NamedGate::parse("t2star", None).is_err());
        assert!(NamedGate::parse("haar-random", None).is_err());
        assert!(NamedGate::parse("x90", Some(3)).is_err());
        assert_eq!(
            NamedGate::parse("haar-random", Some(3)).unwrap(),
            NamedGate::HaarRandom { seed: 3 }
        );
    }
}
