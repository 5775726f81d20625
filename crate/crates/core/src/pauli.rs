// Copyright 2026 lindblad-fidelity contributors
// SPDX-License-Identifier: Apache-2.0

//! N-qubit Pauli operator basis: construction, embedding, and traces.
//!
//! The basis of all 4^N tensor products of {I, X, Y, Z} spans the space of
//! d x d Hermitian matrices (d = 2^N) and is orthogonal under the
//! Hilbert-Schmidt inner product, Tr[f_i f_j] = d delta_ij. Everything
//! downstream (closed-form fidelity reductions, Haar-moment checks) is
//! built on these operators.

use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{c, kron, trace, CMatrix, CVector};

/// Largest supported qubit count. 4^N operators of size 2^N x 2^N are
/// materialized in tests and closed-form evaluations; beyond N = 6 the dense
/// representation stops being sensible.
pub const MAX_QUBITS: usize = 6;

/// Single-qubit Pauli label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> CMatrix {
        match self {
            Pauli::I => sigma_0(),
            Pauli::X => sigma_x(),
            Pauli::Y => sigma_y(),
            Pauli::Z => sigma_z(),
        }
    }

    fn from_char(ch: char) -> Option<Pauli> {
        match ch.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

pub fn sigma_0() -> CMatrix {
    Array2::from_diag_elem(2, c(1.0))
}

pub fn sigma_x() -> CMatrix {
    let mut m = Array2::zeros((2, 2));
    m[[0, 1]] = c(1.0);
    m[[1, 0]] = c(1.0);
    m
}

pub fn sigma_y() -> CMatrix {
    let mut m = Array2::zeros((2, 2));
    m[[0, 1]] = Complex64::new(0.0, -1.0);
    m[[1, 0]] = Complex64::new(0.0, 1.0);
    m
}

pub fn sigma_z() -> CMatrix {
    let mut m = Array2::zeros((2, 2));
    m[[0, 0]] = c(1.0);
    m[[1, 1]] = c(-1.0);
    m
}

/// Lowering operator, sigma_- |1> = |0> (with |0> = [1, 0]^T).
pub fn sigma_minus() -> CMatrix {
    let mut m = Array2::zeros((2, 2));
    m[[0, 1]] = c(1.0);
    m
}

/// Raising operator, sigma_+ = sigma_-^dag.
pub fn sigma_plus() -> CMatrix {
    let mut m = Array2::zeros((2, 2));
    m[[1, 0]] = c(1.0);
    m
}

/// Label for a tensor product of single-qubit Paulis.
///
/// Qubit 0 is the leftmost label and the most significant bit of a basis
/// state index, matching the left-to-right Kronecker products used
/// everywhere in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    labels: Vec<Pauli>,
}

impl PauliString {
    pub fn new(labels: Vec<Pauli>) -> Result<Self> {
        let n = labels.len();
        if !(1..=MAX_QUBITS).contains(&n) {
            return Err(Error::QubitCount { n, max: MAX_QUBITS });
        }
        Ok(PauliString { labels })
    }

    pub fn identity(n: usize) -> Result<Self> {
        PauliString::new(vec![Pauli::I; n])
    }

    pub fn qubit_count(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.labels.len()
    }

    pub fn labels(&self) -> &[Pauli] {
        &self.labels
    }

    pub fn is_identity(&self) -> bool {
        self.labels.iter().all(|&l| l == Pauli::I)
    }

    /// Position in the lexicographic basis order of `pauli_basis`.
    pub fn index(&self) -> usize {
        self.labels
            .iter()
            .fold(0usize, |acc, &l| acc * 4 + l as usize)
    }

    /// Dense matrix realization, Kronecker product taken left to right.
    pub fn materialize(&self) -> CMatrix {
        let mut out = Array2::from_elem((1, 1), c(1.0));
        for label in &self.labels {
            out = kron(&out, &label.matrix());
        }
        out
    }

    /// Expectation value <psi| f |psi> without materializing the matrix.
    ///
    /// A Pauli string maps each basis state to a single basis state with a
    /// phase, so the expectation costs O(d) instead of O(d^2).
    pub fn expectation(&self, psi: &CVector) -> Complex64 {
        let n = self.labels.len();
        let d = 1usize << n;
        debug_assert_eq!(psi.len(), d);

        let mut flip_mask = 0usize;
        for (k, &label) in self.labels.iter().enumerate() {
            if matches!(label, Pauli::X | Pauli::Y) {
                flip_mask |= 1 << (n - 1 - k);
            }
        }

        let mut acc = Complex64::new(0.0, 0.0);
        for x in 0..d {
            let mut phase = Complex64::new(1.0, 0.0);
            for (k, &label) in self.labels.iter().enumerate() {
                let bit = (x >> (n - 1 - k)) & 1;
                match label {
                    Pauli::I | Pauli::X => {}
                    Pauli::Y => {
                        // sigma_y |0> = i |1>, sigma_y |1> = -i |0>
                        phase *= if bit == 0 {
                            Complex64::new(0.0, 1.0)
                        } else {
                            Complex64::new(0.0, -1.0)
                        };
                    }
                    Pauli::Z => {
                        if bit == 1 {
                            phase = -phase;
                        }
                    }
                }
            }
            let target = x ^ flip_mask;
            acc += psi[target].conj() * phase * psi[x];
        }
        acc
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.labels {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let labels: Option<Vec<Pauli>> = s.chars().map(Pauli::from_char).collect();
        match labels {
            Some(labels) => PauliString::new(labels),
            None => Err(Error::Numerical(format!(
                "invalid Pauli string {s:?}: labels must be I, X, Y, Z"
            ))),
        }
    }
}

/// The full N-qubit Pauli basis in lexicographic order, identity first.
///
/// All 4^N strings with per-qubit order I < X < Y < Z; every element except
/// the first is traceless.
pub fn pauli_basis(n: usize) -> Result<Vec<PauliString>> {
    if !(1..=MAX_QUBITS).contains(&n) {
        return Err(Error::QubitCount { n, max: MAX_QUBITS });
    }
    let count = 4usize.pow(n as u32);
    let mut basis = Vec::with_capacity(count);
    for idx in 0..count {
        let mut labels = vec![Pauli::I; n];
        let mut rem = idx;
        for k in (0..n).rev() {
            labels[k] = Pauli::ALL[rem % 4];
            rem /= 4;
        }
        basis.push(PauliString { labels });
    }
    Ok(basis)
}

/// Embed a single-qubit operator at `target`, identity on all other qubits.
pub fn embed(op: &CMatrix, target: usize, n: usize) -> Result<CMatrix> {
    if !(1..=MAX_QUBITS).contains(&n) {
        return Err(Error::QubitCount { n, max: MAX_QUBITS });
    }
    if target >= n {
        return Err(Error::QubitIndex { index: target, n });
    }
    if op.nrows() != 2 || op.ncols() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            rows: op.nrows(),
            cols: op.ncols(),
        });
    }
    let mut out = Array2::from_elem((1, 1), c(1.0));
    for k in 0..n {
        if k == target {
            out = kron(&out, op);
        } else {
            out = kron(&out, &sigma_0());
        }
    }
    Ok(out)
}

/// Trace of an ordered product, Tr[A B C ...].
pub fn trace_product(ops: &[&CMatrix]) -> Result<Complex64> {
    let first = ops
        .first()
        .ok_or_else(|| Error::Numerical("trace_product needs at least one operator".to_string()))?;
    let dim = first.nrows();
    for op in ops {
        if op.nrows() != dim || op.ncols() != dim {
            return Err(Error::Dimension {
                expected: dim,
                rows: op.nrows(),
                cols: op.ncols(),
            });
        }
    }
    let mut product = (*first).clone();
    for op in &ops[1..] {
        product = product.dot(*op);
    }
    Ok(trace(&product))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{adjoint, hermiticity_defect, max_abs_diff, unitarity_defect};
    use ndarray::Array1;
    use proptest::prelude::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    const EXACT_TRACE_TOL: f64 = 1e-12;

    #[test]
    fn single_qubit_basis() {
        let basis = pauli_basis(1).unwrap();
        let labels: Vec<String> = basis.iter().map(|p| p.to_string()).collect();
        assert_eq!(labels, vec!["I", "X", "Y", "Z"]);
    }

    #[test]
    fn basis_orthogonality() {
        // Tr[f_i f_j] = d delta_ij
        for n in 1..=3usize {
            let basis = pauli_basis(n).unwrap();
            assert_eq!(basis.len(), 4usize.pow(n as u32));
            let d = (1usize << n) as f64;
            let mats: Vec<CMatrix> = basis.iter().map(|p| p.materialize()).collect();
            for (i, a) in mats.iter().enumerate() {
                for (j, b) in mats.iter().enumerate() {
                    let tr = trace_product(&[a, b]).unwrap();
                    let expected = if i == j { d } else { 0.0 };
                    assert!(
                        (tr.re - expected).abs() < EXACT_TRACE_TOL && tr.im.abs() < EXACT_TRACE_TOL,
                        "N={n}: Tr[f_{i} f_{j}] = {tr}"
                    );
                }
            }
        }
    }

    #[test]
    fn three_qubit_basis_tracelessness() {
        let basis = pauli_basis(3).unwrap();
        assert_eq!(basis.len(), 64);
        let traceless = basis
            .iter()
            .filter(|p| {
                let tr = p.materialize().diag().sum();
                tr.norm() < EXACT_TRACE_TOL
            })
            .count();
        assert_eq!(traceless, 63);
        assert!(basis[0].is_identity());
    }

    #[test]
    fn basis_capacity_guard() {
        assert!(matches!(pauli_basis(0), Err(Error::QubitCount { .. })));
        assert!(matches!(pauli_basis(7), Err(Error::QubitCount { .. })));
        assert!(pauli_basis(MAX_QUBITS).is_ok());
    }

    #[test]
    fn basis_index_matches_position() {
        for n in 1..=3 {
            for (i, p) in pauli_basis(n).unwrap().iter().enumerate() {
                assert_eq!(p.index(), i);
            }
        }
    }

    #[test]
    fn materialize_examples() {
        let z: PauliString = "Z".parse().unwrap();
        let m = z.materialize();
        assert_eq!(m[[0, 0]], c(1.0));
        assert_eq!(m[[1, 1]], c(-1.0));

        let iz: PauliString = "IZ".parse().unwrap();
        let m = iz.materialize();
        for (k, expect) in [1.0, -1.0, 1.0, -1.0].iter().enumerate() {
            assert_eq!(m[[k, k]], c(*expect));
        }

        let xx: PauliString = "XX".parse().unwrap();
        let m = xx.materialize();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i + j == 3 { 1.0 } else { 0.0 };
                assert_eq!(m[[i, j]], c(expect));
            }
        }
    }

    #[test]
    fn materialized_strings_hermitian_unitary() {
        for n in 1..=3 {
            for p in pauli_basis(n).unwrap() {
                let m = p.materialize();
                assert!(hermiticity_defect(&m) < 1e-15);
                assert!(unitarity_defect(&m) < 1e-15);
            }
        }
    }

    #[test]
    fn embed_examples() {
        let e = embed(&sigma_z(), 1, 2).unwrap();
        let iz: PauliString = "IZ".parse().unwrap();
        assert!(max_abs_diff(&e, &iz.materialize()) < 1e-15);

        let e = embed(&sigma_minus(), 0, 1).unwrap();
        assert!(max_abs_diff(&e, &sigma_minus()) < 1e-15);

        // Tr[(sm kron I)^dag (sm kron I)] = Tr[s+ s-] * 2^(N-1) = 2
        let e = embed(&sigma_minus(), 0, 2).unwrap();
        let tr = trace_product(&[&adjoint(&e), &e]).unwrap();
        assert!((tr.re - 2.0).abs() < EXACT_TRACE_TOL);
        assert!(tr.im.abs() < EXACT_TRACE_TOL);
    }

    #[test]
    fn embed_rejects_bad_index() {
        assert!(matches!(
            embed(&sigma_z(), 2, 2),
            Err(Error::QubitIndex { .. })
        ));
    }

    #[test]
    fn cancellation_identity() {
        // sum_i Tr[L s_i L^dag s_i] = 0 for L in {sigma_z, sigma_-}
        for l in [sigma_z(), sigma_minus()] {
            let ldag = adjoint(&l);
            let mut total = Complex64::new(0.0, 0.0);
            for p in Pauli::ALL {
                let s = p.matrix();
                total += trace_product(&[&l, &s, &ldag, &s]).unwrap();
            }
            assert!(total.norm() < EXACT_TRACE_TOL, "sum = {total}");
        }
    }

    #[test]
    fn sigma_plus_minus_trace() {
        let tr = trace_product(&[&sigma_plus(), &sigma_minus()]).unwrap();
        assert!((tr.re - 1.0).abs() < EXACT_TRACE_TOL);
    }

    #[test]
    fn trace_product_rejects_mismatched_dims() {
        let a = sigma_z();
        let b = embed(&sigma_z(), 0, 2).unwrap();
        assert!(matches!(
            trace_product(&[&a, &b]),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn expectation_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in 1..=3usize {
            let d = 1 << n;
            let mut psi: Array1<Complex64> = Array1::from_shape_fn(d, |_| {
                Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
            });
            let norm = psi.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            psi.mapv_inplace(|x| x / norm);

            for p in pauli_basis(n).unwrap() {
                let dense = p.materialize();
                let mut via_dense = Complex64::new(0.0, 0.0);
                for i in 0..d {
                    for j in 0..d {
                        via_dense += psi[i].conj() * dense[[i, j]] * psi[j];
                    }
                }
                let sparse = p.expectation(&psi);
                assert!(
                    (sparse - via_dense).norm() < 1e-12,
                    "{p}: {sparse} vs {via_dense}"
                );
            }
        }
    }

    proptest! {
        // Completeness: M = (1/d) sum_i Tr[f_i M] f_i for Hermitian M.
        #[test]
        fn basis_completeness(seed in 0u64..200, n in 1usize..=2) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d = 1usize << n;
            let a: CMatrix = Array2::from_shape_fn((d, d), |_| {
                Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
            });
            let m = (&a + &adjoint(&a)) * c(0.5);

            let mut rebuilt: CMatrix = Array2::zeros((d, d));
            for p in pauli_basis(n).unwrap() {
                let f = p.materialize();
                let coeff = trace_product(&[&f, &m]).unwrap();
                rebuilt = rebuilt + &f * (coeff / c(d as f64));
            }
            prop_assert!(max_abs_diff(&rebuilt, &m) < 1e-10);
        }
    }
}
