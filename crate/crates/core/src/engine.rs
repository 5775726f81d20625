// Copyright 2026 lindblad-fidelity contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense Lindblad master-equation propagation.
//!
//! The master equation
//!
//! ```text
//! drho/dt = -i [H(t), rho] + sum_k Gamma_k ( L_k rho L_k^dag
//!           - 1/2 {L_k^dag L_k, rho} )
//! ```
//!
//! (hbar = 1) is integrated exactly per piecewise-constant Hamiltonian
//! segment by exponentiating the vectorized generator. Column stacking is
//! used throughout: vec(A X B) = (B^T kron A) vec(X), so
//!
//! ```text
//! Liouvillian = -i (I kron H - H^T kron I)
//!   + sum_k Gamma_k ( conj(L_k) kron L_k
//!       - 1/2 I kron (L^dag L)_k - 1/2 (L^dag L)_k^T kron I )
//! ```
//!
//! Getting the Kronecker factor order wrong silently conjugates the
//! dynamics, which is why the convention is pinned here and cross-checked
//! against analytically solvable channels in the tests.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    adjoint, c, expm, hermiticity_defect, identity, kron, max_abs, outer, trace, unitarity_defect,
    unitary_generator, unvectorize, vectorize, CMatrix, CVector,
};
use crate::noise::{NoiseChannel, NoiseModel};
use crate::pauli::MAX_QUBITS;

/// Tolerance for the Hermiticity of schedule Hamiltonians (relative to the
/// largest entry for Hamiltonians with large norms).
pub const HAMILTONIAN_HERMITICITY_TOL: f64 = 1e-12;
/// |Tr rho - 1| tolerance on propagated states.
pub const TRACE_TOL: f64 = 1e-9;
/// Hermiticity tolerance on propagated states.
pub const HERMITICITY_TOL: f64 = 1e-9;
/// Smallest admissible eigenvalue of a propagated state.
pub const POSITIVITY_FLOOR: f64 = -1e-8;
/// Minimum number of quadrature steps for the perturbative correction.
pub const MIN_QUADRATURE_STEPS: usize = 16;

/// One piecewise-constant segment of a gate drive.
#[derive(Debug, Clone)]
pub struct Segment {
    pub hamiltonian: CMatrix,
    pub duration: f64,
}

/// Piecewise-constant Hamiltonian schedule defining a gate of duration tau.
///
/// A schedule with zero total duration denotes the identity gate.
#[derive(Debug, Clone)]
pub struct GateSchedule {
    n: usize,
    segments: Vec<Segment>,
}

impl GateSchedule {
    pub fn new(n: usize, segments: Vec<Segment>) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&n) {
            return Err(Error::QubitCount { n, max: MAX_QUBITS });
        }
        let d = 1usize << n;
        for seg in &segments {
            if seg.hamiltonian.nrows() != d || seg.hamiltonian.ncols() != d {
                return Err(Error::Dimension {
                    expected: d,
                    rows: seg.hamiltonian.nrows(),
                    cols: seg.hamiltonian.ncols(),
                });
            }
            let defect = hermiticity_defect(&seg.hamiltonian);
            if defect > HAMILTONIAN_HERMITICITY_TOL * max_abs(&seg.hamiltonian).max(1.0) {
                return Err(Error::NotHermitian { defect });
            }
            if seg.duration < 0.0 || !seg.duration.is_finite() {
                return Err(Error::BadDuration(seg.duration));
            }
        }
        Ok(GateSchedule { n, segments })
    }

    /// Free evolution (H = 0) for `tau`; the identity gate when tau = 0.
    pub fn identity(n: usize, tau: f64) -> Result<Self> {
        if tau == 0.0 {
            return GateSchedule::new(n, Vec::new());
        }
        let d = 1usize << n;
        GateSchedule::new(
            n,
            vec![Segment {
                hamiltonian: Array2::zeros((d, d)),
                duration: tau,
            }],
        )
    }

    /// Single constant-Hamiltonian segment.
    pub fn constant(n: usize, hamiltonian: CMatrix, tau: f64) -> Result<Self> {
        GateSchedule::new(
            n,
            vec![Segment {
                hamiltonian,
                duration: tau,
            }],
        )
    }

    /// Constant-drive schedule realizing a given unitary in time tau, i.e.
    /// `ideal_unitary` of the result reproduces `u`.
    pub fn for_unitary(n: usize, u: &CMatrix, tau: f64) -> Result<Self> {
        if tau <= 0.0 || !tau.is_finite() {
            return Err(Error::BadDuration(tau));
        }
        let generator = unitary_generator(u)?;
        GateSchedule::constant(n, generator * c(1.0 / tau), tau)
    }

    pub fn qubit_count(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }
}

/// d x d density matrix validated against trace, Hermiticity, and
/// positivity tolerances.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let d = matrix.nrows();
        if matrix.ncols() != d || d == 0 {
            return Err(Error::Dimension {
                expected: d.max(1),
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let trace_defect = (trace(&matrix) - c(1.0)).norm();
        let herm_defect = hermiticity_defect(&matrix);
        let min_eig = {
            let symmetrized = (&matrix + &adjoint(&matrix)) * c(0.5);
            crate::linalg::hermitian_eigenvalues(&symmetrized)?[0]
        };
        if trace_defect > TRACE_TOL || herm_defect > HERMITICITY_TOL || min_eig < POSITIVITY_FLOOR {
            return Err(Error::Invariant(format!(
                "|Tr-1| = {trace_defect:.3e} (tol {TRACE_TOL:.0e}), \
                 hermiticity defect = {herm_defect:.3e} (tol {HERMITICITY_TOL:.0e}), \
                 min eigenvalue = {min_eig:.3e} (floor {POSITIVITY_FLOOR:.0e})"
            )));
        }
        Ok(DensityMatrix { matrix })
    }

    /// |psi><psi| for a normalized state vector.
    pub fn from_pure(psi: &CVector) -> Result<Self> {
        let norm = psi.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized(norm));
        }
        DensityMatrix::new(outer(psi))
    }

    /// Computational basis state |index><index|.
    pub fn basis_state(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::Numerical(format!(
                "basis state index {index} out of range for dimension {dim}"
            )));
        }
        let mut m: CMatrix = Array2::zeros((dim, dim));
        m[[index, index]] = c(1.0);
        DensityMatrix::new(m)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }
}

/// A d^2 x d^2 superoperator acting on column-vectorized density matrices.
#[derive(Debug, Clone)]
pub struct Propagator {
    matrix: CMatrix,
    dim: usize,
}

impl Propagator {
    /// Wraps a superoperator matrix, verifying it preserves the trace:
    /// the trace functional vec(I)^dag must be a left identity.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let d2 = matrix.nrows();
        let dim = (d2 as f64).sqrt().round() as usize;
        if matrix.ncols() != d2 || dim * dim != d2 || dim == 0 {
            return Err(Error::Dimension {
                expected: d2,
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let defect = trace_preservation_defect(&matrix, dim);
        if defect > TRACE_TOL {
            return Err(Error::Invariant(format!(
                "propagator does not preserve trace: defect {defect:.3e} (tol {TRACE_TOL:.0e})"
            )));
        }
        Ok(Propagator { matrix, dim })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Apply to an arbitrary d x d matrix without invariant checks.
    pub fn apply_matrix(&self, x: &CMatrix) -> CMatrix {
        unvectorize(&self.matrix.dot(&vectorize(x)), self.dim)
    }

    /// Apply to a density matrix, validating the output invariants.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                rows: rho.dim(),
                cols: rho.dim(),
            });
        }
        DensityMatrix::new(self.apply_matrix(rho.matrix()))
    }
}

fn trace_preservation_defect(superop: &CMatrix, dim: usize) -> f64 {
    let mut worst = 0.0f64;
    for col in 0..dim * dim {
        let mut sum = Complex64::new(0.0, 0.0);
        for i in 0..dim {
            sum += superop[[i + dim * i, col]];
        }
        let expected = if col % dim == col / dim { 1.0 } else { 0.0 };
        worst = worst.max((sum - c(expected)).norm());
    }
    worst
}

/// Vectorized generator of the master equation for one constant segment.
pub fn build_liouvillian(hamiltonian: &CMatrix, model: &NoiseModel) -> Result<CMatrix> {
    let d = model.dim();
    if hamiltonian.nrows() != d || hamiltonian.ncols() != d {
        return Err(Error::Dimension {
            expected: d,
            rows: hamiltonian.nrows(),
            cols: hamiltonian.ncols(),
        });
    }
    let eye = identity(d);
    let minus_i = Complex64::new(0.0, -1.0);
    let ht = hamiltonian.t().into_owned();
    let mut liouvillian = (kron(&eye, hamiltonian) - kron(&ht, &eye)) * minus_i;

    for channel in model.channels() {
        if channel.is_null() {
            continue;
        }
        let jump = &channel.jump;
        let jump_conj = jump.mapv(|x| x.conj());
        let jdag_j = adjoint(jump).dot(jump);
        let jdag_j_t = jdag_j.t().into_owned();
        let dissipator =
            kron(&jump_conj, jump) - (kron(&eye, &jdag_j) + kron(&jdag_j_t, &eye)) * c(0.5);
        liouvillian = liouvillian + dissipator * c(channel.rate);
    }
    Ok(liouvillian)
}

/// Propagator for a full schedule: the ordered product of segment
/// exponentials exp(Liouvillian_s * duration_s).
pub fn propagator(schedule: &GateSchedule, model: &NoiseModel) -> Result<Propagator> {
    let d = schedule.dim();
    if model.dim() != d {
        return Err(Error::Dimension {
            expected: d,
            rows: model.dim(),
            cols: model.dim(),
        });
    }
    let mut total = identity(d * d);
    for seg in schedule.segments() {
        if seg.duration == 0.0 {
            continue;
        }
        let liouvillian = build_liouvillian(&seg.hamiltonian, model)?;
        let step = expm(&(liouvillian * c(seg.duration)))?;
        total = step.dot(&total);
    }
    Propagator::new(total)
}

/// Evolve a state through a schedule under a noise model.
pub fn propagate(
    rho0: &DensityMatrix,
    schedule: &GateSchedule,
    model: &NoiseModel,
) -> Result<DensityMatrix> {
    propagator(schedule, model)?.apply(rho0)
}

/// Ideal (noise-free) gate unitary: the time-ordered product of segment
/// exponentials exp(-i H_s duration_s).
pub fn ideal_unitary(schedule: &GateSchedule) -> Result<CMatrix> {
    let d = schedule.dim();
    let mut u = identity(d);
    for seg in schedule.segments() {
        if seg.duration == 0.0 {
            continue;
        }
        let step = expm(&(&seg.hamiltonian * Complex64::new(0.0, -seg.duration)))?;
        u = step.dot(&u);
    }
    let defect = unitarity_defect(&u);
    if defect > 1e-10 {
        return Err(Error::Numerical(format!(
            "ideal unitary lost unitarity: defect {defect:.3e}"
        )));
    }
    Ok(u)
}

/// Ideal evolution operator from t = 0 up to `t`, walking the segments.
fn unitary_up_to(schedule: &GateSchedule, t: f64) -> Result<CMatrix> {
    let d = schedule.dim();
    let mut u = identity(d);
    let mut elapsed = 0.0;
    for seg in schedule.segments() {
        if elapsed >= t {
            break;
        }
        let span = seg.duration.min(t - elapsed);
        if span > 0.0 {
            let step = expm(&(&seg.hamiltonian * Complex64::new(0.0, -span)))?;
            u = step.dot(&u);
        }
        elapsed += seg.duration;
    }
    Ok(u)
}

/// Dissipator D[L] rho = L rho L^dag - 1/2 {L^dag L, rho} (rate excluded).
pub fn dissipator(jump: &CMatrix, rho: &CMatrix) -> CMatrix {
    let jdag = adjoint(jump);
    let jdag_j = jdag.dot(jump);
    let sandwich = jump.dot(rho).dot(&jdag);
    let anti = jdag_j.dot(rho) + rho.dot(&jdag_j);
    sandwich - anti * c(0.5)
}

/// First-order perturbative correction to the gate output for one channel,
///
/// ```text
/// rho1(tau) = Gamma int_0^tau dt' U(t',tau) [ D[L] rho0(t') ] U(t',tau)^dag
/// ```
///
/// evaluated with composite Simpson quadrature over t'. The image of the
/// dissipator is traceless, so the result is traceless up to quadrature
/// error. This is an independent cross-check path for `propagate`: the
/// difference between the full propagation and (ideal + corrections) must
/// scale as (Gamma tau)^2.
pub fn first_order_correction(
    psi: &CVector,
    schedule: &GateSchedule,
    channel: &NoiseChannel,
    steps: usize,
) -> Result<CMatrix> {
    let d = schedule.dim();
    if channel.dim() != d || psi.len() != d {
        return Err(Error::Dimension {
            expected: d,
            rows: channel.dim(),
            cols: psi.len(),
        });
    }
    let norm = psi.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized(norm));
    }
    if steps < MIN_QUADRATURE_STEPS {
        return Err(Error::TooFewSteps {
            min: MIN_QUADRATURE_STEPS,
            got: steps,
        });
    }
    let steps = steps + steps % 2;

    let tau = schedule.total_duration();
    if tau == 0.0 || channel.rate == 0.0 {
        return Ok(Array2::zeros((d, d)));
    }

    let rho0 = outer(psi);
    let u_total = unitary_up_to(schedule, tau)?;
    let h = tau / steps as f64;
    let mut integral: CMatrix = Array2::zeros((d, d));
    for node in 0..=steps {
        let t = h * node as f64;
        let weight = if node == 0 || node == steps {
            1.0
        } else if node % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let u_t = unitary_up_to(schedule, t)?;
        // U(t, tau) = U(0, tau) U(0, t)^dag
        let u_rest = u_total.dot(&adjoint(&u_t));
        let rho_t = u_t.dot(&rho0).dot(&adjoint(&u_t));
        let kicked = dissipator(&channel.jump, &rho_t);
        let evolved = u_rest.dot(&kicked).dot(&adjoint(&u_rest));
        integral = integral + evolved * c(weight);
    }
    Ok(integral * c(channel.rate * h / 3.0))
}
