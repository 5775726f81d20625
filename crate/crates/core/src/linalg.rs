// Copyright 2026 lindblad-fidelity contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra for small Hilbert spaces.
//!
//! All routines operate on `ndarray` matrices of `Complex64`. The largest
//! matrices in this crate are d^2 x d^2 superoperators with d <= 64, so dense
//! O(n^3) algorithms are entirely adequate and nothing links against an
//! external LAPACK.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = Array2<Complex64>;
pub type CVector = Array1<Complex64>;

pub use ndarray::linalg::kron;

/// Real number as a `Complex64`.
#[inline]
pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(dim: usize) -> CMatrix {
    Array2::from_diag_elem(dim, c(1.0))
}

/// Conjugate transpose.
pub fn adjoint(a: &CMatrix) -> CMatrix {
    let mut out = a.t().into_owned();
    out.mapv_inplace(|x| x.conj());
    out
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().fold(0.0f64, |m, x| m.max(x.norm()))
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    debug_assert_eq!(a.dim(), b.dim());
    a.iter()
        .zip(b.iter())
        .fold(0.0f64, |m, (x, y)| m.max((x - y).norm()))
}

pub fn frobenius_norm(a: &CMatrix) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Max deviation from Hermiticity, max_ij |A_ij - conj(A_ji)|.
pub fn hermiticity_defect(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[[i, j]] - a[[j, i]].conj()).norm());
        }
    }
    worst
}

/// Max deviation from unitarity, max |U^dag U - I|.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    max_abs_diff(&adjoint(u).dot(u), &identity(u.nrows()))
}

pub fn trace(a: &CMatrix) -> Complex64 {
    a.diag().sum()
}

/// Column-stacking vectorization: vec(X)[i + d*j] = X[i, j].
///
/// Under this convention vec(A X B) = (B^T kron A) vec(X), which fixes the
/// ordering of every Kronecker factor in the Liouvillian assembly.
pub fn vectorize(x: &CMatrix) -> CVector {
    let d = x.nrows();
    let mut v = Array1::zeros(d * d);
    for j in 0..d {
        for i in 0..d {
            v[i + d * j] = x[[i, j]];
        }
    }
    v
}

pub fn unvectorize(v: &CVector, dim: usize) -> CMatrix {
    debug_assert_eq!(v.len(), dim * dim);
    let mut x = Array2::zeros((dim, dim));
    for j in 0..dim {
        for i in 0..dim {
            x[[i, j]] = v[i + dim * j];
        }
    }
    x
}

/// Outer product |psi><psi|.
pub fn outer(psi: &CVector) -> CMatrix {
    let d = psi.len();
    let mut rho = Array2::zeros((d, d));
    for i in 0..d {
        for j in 0..d {
            rho[[i, j]] = psi[i] * psi[j].conj();
        }
    }
    rho
}

fn one_norm(a: &CMatrix) -> f64 {
    let mut max_col = 0.0f64;
    for j in 0..a.ncols() {
        let s: f64 = a.column(j).iter().map(|x| x.norm()).sum();
        max_col = max_col.max(s);
    }
    max_col
}

/// Solve A X = B by Gaussian elimination with partial pivoting.
pub fn solve(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    let n = a.nrows();
    if a.ncols() != n || b.nrows() != n {
        return Err(Error::Dimension {
            expected: n,
            rows: b.nrows(),
            cols: b.ncols(),
        });
    }
    let m = b.ncols();
    let mut lu = a.clone();
    let mut x = b.clone();

    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_val = lu[[col, col]].norm();
        for row in (col + 1)..n {
            let v = lu[[row, col]].norm();
            if v > pivot_val {
                pivot_val = v;
                pivot_row = row;
            }
        }
        if pivot_val < 1e-300 {
            return Err(Error::Numerical(
                "singular matrix in linear solve".to_string(),
            ));
        }
        if pivot_row != col {
            for j in 0..n {
                lu.swap([col, j], [pivot_row, j]);
            }
            for j in 0..m {
                x.swap([col, j], [pivot_row, j]);
            }
        }
        let pivot = lu[[col, col]];
        for row in (col + 1)..n {
            let factor = lu[[row, col]] / pivot;
            if factor.norm() == 0.0 {
                continue;
            }
            for j in col..n {
                let v = lu[[col, j]];
                lu[[row, j]] -= factor * v;
            }
            for j in 0..m {
                let v = x[[col, j]];
                x[[row, j]] -= factor * v;
            }
        }
    }

    for col in (0..n).rev() {
        let pivot = lu[[col, col]];
        for j in 0..m {
            let mut sum = x[[col, j]];
            for k in (col + 1)..n {
                sum -= lu[[col, k]] * x[[k, j]];
            }
            x[[col, j]] = sum / pivot;
        }
    }
    Ok(x)
}

// Pade(13) numerator coefficients, Higham (2005), Table 10.4 regime.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

const THETA13: f64 = 5.371920351148152;

/// Matrix exponential by scaling-and-squaring with a Pade(13) approximant.
///
/// The approximant is accurate to unit roundoff for ||A/2^s|| below
/// `THETA13`; repeated squaring then undoes the scaling. This handles the
/// non-normal Liouvillians produced by `build_liouvillian`, for which an
/// eigendecomposition would be unreliable.
pub fn expm(a: &CMatrix) -> Result<CMatrix> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::Dimension {
            expected: n,
            rows: n,
            cols: a.ncols(),
        });
    }
    if n == 0 {
        return Ok(Array2::zeros((0, 0)));
    }

    let norm = one_norm(a);
    if !norm.is_finite() {
        return Err(Error::Numerical(
            "non-finite entries in matrix exponential".to_string(),
        ));
    }
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a * c(0.5f64.powi(squarings as i32));

    let eye = identity(n);
    let a2 = scaled.dot(&scaled);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);

    let w1 = &a6 * c(PADE13[13]) + &a4 * c(PADE13[11]) + &a2 * c(PADE13[9]);
    let w2 = w1.dot(&a6)
        + &a6 * c(PADE13[7])
        + &a4 * c(PADE13[5])
        + &a2 * c(PADE13[3])
        + &eye * c(PADE13[1]);
    let u = scaled.dot(&w2);

    let v1 = &a6 * c(PADE13[12]) + &a4 * c(PADE13[10]) + &a2 * c(PADE13[8]);
    let v = v1.dot(&a6)
        + &a6 * c(PADE13[6])
        + &a4 * c(PADE13[4])
        + &a2 * c(PADE13[2])
        + &eye * c(PADE13[0]);

    let mut result = solve(&(&v - &u), &(&v + &u))?;
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    Ok(result)
}

const JACOBI_MAX_SWEEPS: usize = 60;

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the matching eigenvectors as
/// columns of a unitary matrix.
pub fn hermitian_eigen(a: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::Dimension {
            expected: n,
            rows: n,
            cols: a.ncols(),
        });
    }
    let defect = hermiticity_defect(a);
    let scale = max_abs(a).max(1.0);
    if defect > 1e-10 * scale {
        return Err(Error::NotHermitian { defect });
    }

    let mut m = a.clone();
    let mut v = identity(n);
    let tol = 1e-14 * scale;

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[[p, q]].norm_sqr();
            }
        }
        if off.sqrt() <= tol * (n as f64) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[[p, q]];
                let r = apq.norm();
                if r <= tol {
                    continue;
                }
                let phase = apq / r;
                let app = m[[p, p]].re;
                let aqq = m[[q, q]].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let cos = 1.0 / (t * t + 1.0).sqrt();
                let sin = t * cos;

                // G differs from the identity in the (p,q) block:
                //   [ cos            sin          ]
                //   [-sin conj(ph)   cos conj(ph) ]
                // and the update is M <- G^dag M G, V <- V G.
                let g_pp = c(cos);
                let g_pq = c(sin);
                let g_qp = -c(sin) * phase.conj();
                let g_qq = c(cos) * phase.conj();

                for k in 0..n {
                    let mkp = m[[k, p]];
                    let mkq = m[[k, q]];
                    m[[k, p]] = mkp * g_pp + mkq * g_qp;
                    m[[k, q]] = mkp * g_pq + mkq * g_qq;
                }
                for k in 0..n {
                    let mpk = m[[p, k]];
                    let mqk = m[[q, k]];
                    m[[p, k]] = g_pp.conj() * mpk + g_qp.conj() * mqk;
                    m[[q, k]] = g_pq.conj() * mpk + g_qq.conj() * mqk;
                }
                for k in 0..n {
                    let vkp = v[[k, p]];
                    let vkq = v[[k, q]];
                    v[[k, p]] = vkp * g_pp + vkq * g_qp;
                    v[[k, q]] = vkp * g_pq + vkq * g_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let values: Vec<f64> = (0..n).map(|i| m[[i, i]].re).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());

    let sorted_values: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let mut vectors = Array2::zeros((n, n));
    for (new_col, &old_col) in order.iter().enumerate() {
        for k in 0..n {
            vectors[[k, new_col]] = v[[k, old_col]];
        }
    }
    Ok((sorted_values, vectors))
}

pub fn hermitian_eigenvalues(a: &CMatrix) -> Result<Vec<f64>> {
    hermitian_eigen(a).map(|(vals, _)| vals)
}

/// Hermitian generator H of a unitary, such that exp(-iH) = U.
///
/// U is normal, so Re(U) = (U + U^dag)/2 and Im(U) = (U - U^dag)/2i are
/// commuting Hermitian matrices with a common eigenbasis; diagonalizing a
/// generic real combination of the two diagonalizes U itself, and the phases
/// of the resulting eigenvalues give H. Degenerate combinations are retried
/// with a different mixing weight.
pub fn unitary_generator(u: &CMatrix) -> Result<CMatrix> {
    let n = u.nrows();
    if u.ncols() != n {
        return Err(Error::Dimension {
            expected: n,
            rows: n,
            cols: u.ncols(),
        });
    }
    let defect = unitarity_defect(u);
    if defect > 1e-9 {
        return Err(Error::Numerical(format!(
            "unitary_generator: input is not unitary (defect {defect:.3e})"
        )));
    }

    let udag = adjoint(u);
    let re = (u + &udag) * c(0.5);
    let im = (u - &udag) * Complex64::new(0.0, -0.5);

    for gamma in [0.6180339887498949, 0.3302889638915843, 1.2360679774997896] {
        let mixed = &re + &im * c(gamma);
        let (_, vecs) = hermitian_eigen(&mixed)?;
        let diag = adjoint(&vecs).dot(u).dot(&vecs);
        let mut off = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off = off.max(diag[[i, j]].norm());
                }
            }
        }
        if off > 1e-9 {
            continue;
        }
        let mut h = Array2::zeros((n, n));
        for k in 0..n {
            let phase = diag[[k, k]].arg();
            for i in 0..n {
                for j in 0..n {
                    h[[i, j]] += vecs[[i, k]] * c(-phase) * vecs[[j, k]].conj();
                }
            }
        }
        // Symmetrize away rotation-level roundoff.
        let hd = adjoint(&h);
        return Ok((&h + &hd) * c(0.5));
    }
    Err(Error::Numerical(
        "unitary_generator: could not find a non-degenerate eigenbasis".to_string(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn random_complex_matrix(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        Array2::from_shape_fn((n, n), |_| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        })
    }

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        let a = random_complex_matrix(n, rng);
        (&a + &adjoint(&a)) * c(0.5)
    }

    #[test]
    fn expm_zero_is_identity() {
        let z = Array2::zeros((4, 4));
        assert!(max_abs_diff(&expm(&z).unwrap(), &identity(4)) < 1e-14);
    }

    #[test]
    fn expm_diagonal() {
        let mut a: CMatrix = Array2::zeros((2, 2));
        a[[0, 0]] = c(1.0);
        a[[1, 1]] = Complex64::new(-0.5, 2.0);
        let e = expm(&a).unwrap();
        assert!((e[[0, 0]] - c(1.0f64.exp())).norm() < 1e-13);
        assert!((e[[1, 1]] - Complex64::new(-0.5, 2.0).exp()).norm() < 1e-13);
        assert!(e[[0, 1]].norm() < 1e-14 && e[[1, 0]].norm() < 1e-14);
    }

    #[test]
    fn expm_pauli_x_rotation() {
        // exp(-i (pi/2) sx / 2) = [[cos, -i sin], [-i sin, cos]] at pi/4
        let theta: f64 = std::f64::consts::FRAC_PI_2;
        let mut a: CMatrix = Array2::zeros((2, 2));
        a[[0, 1]] = Complex64::new(0.0, -theta / 2.0);
        a[[1, 0]] = Complex64::new(0.0, -theta / 2.0);
        let e = expm(&a).unwrap();
        let cth = (theta / 2.0).cos();
        let sth = (theta / 2.0).sin();
        assert!((e[[0, 0]] - c(cth)).norm() < 1e-13);
        assert!((e[[0, 1]] - Complex64::new(0.0, -sth)).norm() < 1e-13);
    }

    #[test]
    fn expm_large_norm_requires_scaling() {
        let mut a: CMatrix = Array2::zeros((2, 2));
        a[[0, 0]] = c(40.0);
        a[[1, 1]] = c(-40.0);
        let e = expm(&a).unwrap();
        assert!((e[[0, 0]].re - 40.0f64.exp()).abs() / 40.0f64.exp() < 1e-12);
        assert!((e[[1, 1]].re - (-40.0f64).exp()).abs() < 1e-17);
    }

    #[test]
    fn expm_unitary_for_antihermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h = random_hermitian(6, &mut rng);
        let u = expm(&(&h * Complex64::new(0.0, -1.0))).unwrap();
        assert!(unitarity_defect(&u) < 1e-12);
    }

    #[test]
    fn expm_additivity_for_commuting() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let h = random_hermitian(4, &mut rng);
        let once = expm(&(&h * c(1.0))).unwrap();
        let half = expm(&(&h * c(0.5))).unwrap();
        assert!(max_abs_diff(&once, &half.dot(&half)) < 1e-12);
    }

    #[test]
    fn solve_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let a = random_complex_matrix(8, &mut rng);
        let b = random_complex_matrix(8, &mut rng);
        let x = solve(&a, &b).unwrap();
        assert!(max_abs_diff(&a.dot(&x), &b) < 1e-10);
    }

    #[test]
    fn solve_rejects_singular() {
        let a: CMatrix = Array2::zeros((3, 3));
        let b = identity(3);
        assert!(solve(&a, &b).is_err());
    }

    #[test]
    fn jacobi_reconstructs_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for n in [2usize, 5, 8, 16] {
            let a = random_hermitian(n, &mut rng);
            let (vals, vecs) = hermitian_eigen(&a).unwrap();
            assert!(unitarity_defect(&vecs) < 1e-11);
            let mut lam: CMatrix = Array2::zeros((n, n));
            for i in 0..n {
                lam[[i, i]] = c(vals[i]);
            }
            let rebuilt = vecs.dot(&lam).dot(&adjoint(&vecs));
            assert!(max_abs_diff(&rebuilt, &a) < 1e-11);
            for w in vals.windows(2) {
                assert!(w[0] <= w[1]);
            }
        }
    }

    #[test]
    fn jacobi_known_spectrum() {
        // sigma_x has eigenvalues -1, +1
        let mut sx: CMatrix = Array2::zeros((2, 2));
        sx[[0, 1]] = c(1.0);
        sx[[1, 0]] = c(1.0);
        let vals = hermitian_eigenvalues(&sx).unwrap();
        assert_abs_diff_eq!(vals[0], -1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(vals[1], 1.0, epsilon = 1e-13);
    }

    #[test]
    fn generator_reproduces_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for n in [2usize, 4, 8] {
            let h = random_hermitian(n, &mut rng);
            let u = expm(&(&h * Complex64::new(0.0, -1.0))).unwrap();
            let g = unitary_generator(&u).unwrap();
            assert!(hermiticity_defect(&g) < 1e-12);
            let rebuilt = expm(&(&g * Complex64::new(0.0, -1.0))).unwrap();
            assert!(max_abs_diff(&rebuilt, &u) < 1e-10);
        }
    }

    #[test]
    fn vectorize_roundtrip_and_convention() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let x = random_complex_matrix(3, &mut rng);
        let v = vectorize(&x);
        // column stacking: first d entries are the first column
        assert_eq!(v[1], x[[1, 0]]);
        assert_eq!(v[3], x[[0, 1]]);
        assert!(max_abs_diff(&unvectorize(&v, 3), &x) < 1e-15);
    }

    #[test]
    fn vec_of_sandwich_is_kron_action() {
        // vec(A X B) = (B^T kron A) vec(X)
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let a = random_complex_matrix(3, &mut rng);
        let b = random_complex_matrix(3, &mut rng);
        let x = random_complex_matrix(3, &mut rng);
        let lhs = vectorize(&a.dot(&x).dot(&b));
        let rhs = kron(&b.t().into_owned(), &a).dot(&vectorize(&x));
        let diff = lhs
            .iter()
            .zip(rhs.iter())
            .fold(0.0f64, |m, (p, q)| m.max((p - q).norm()));
        assert!(diff < 1e-12);
    }
}
