//! Cyclic Jacobi eigensolver for small complex Hermitian matrices.
//!
//! Each rotation zeroes one off-diagonal pair `(p, q)`. The complex pivot
//! `a_pq = |a_pq| e^{i alpha}` is handled by conjugating the classic real
//! symmetric rotation with `diag(1, e^{-i alpha})`, which yields the unitary
//! `[[c, s e^{i alpha}], [-s e^{-i alpha}, c]]` on columns `p, q`.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ZERO};
use crate::error::{Error, Result};

/// Inputs further than this from Hermitian are rejected.
pub const HERMITIAN_INPUT_TOL: f64 = 1e-8;

/// Convergence threshold on the off-diagonal Frobenius mass.
const OFF_DIAGONAL_TOL: f64 = 1e-14;

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition `A = V diag(values) V^dagger` with values sorted descending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        let n = self.vectors.dim();
        (0..n).map(|i| self.vectors[(i, k)]).collect()
    }

    /// Rebuilds `V f(Lambda) V^dagger`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.vectors.dim();
        let mut out = ComplexMatrix::zeros(n);
        for k in 0..n {
            let w = f(self.values[k]);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = self.vectors[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vik * self.vectors[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|x| x)
    }
}

/// Full eigen-decomposition of a Hermitian matrix.
pub fn eig_hermitian(a: &ComplexMatrix) -> Result<HermitianEigen> {
    let deviation = a.hermiticity_error();
    if deviation > HERMITIAN_INPUT_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(jacobi(a.hermitian_part(), true))
}

/// Eigenvalues only (descending). Skips eigenvector accumulation.
pub fn eigvals_hermitian(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let deviation = a.hermiticity_error();
    if deviation > HERMITIAN_INPUT_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(jacobi(a.hermitian_part(), false).values)
}

/// Eigenvalues of a matrix already known to be Hermitian (hot paths inside
/// optimizers, where the matrix is built by Hermiticity-preserving maps).
pub(crate) fn eigvals_trusted(a: &ComplexMatrix) -> Vec<f64> {
    jacobi(a.hermitian_part(), false).values
}

pub(crate) fn eig_trusted(a: &ComplexMatrix) -> HermitianEigen {
    jacobi(a.hermitian_part(), true)
}

fn off_diagonal_mass(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi(mut a: ComplexMatrix, want_vectors: bool) -> HermitianEigen {
    let n = a.dim();
    let mut v = ComplexMatrix::identity(if want_vectors { n } else { 0 });
    let scale = a.frobenius_norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_mass(&a) < OFF_DIAGONAL_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g < 1e-300 {
                    continue;
                }
                let phase = apq / g;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * g);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J = [[c, s e], [-s conj(e), c]] acting on columns p, q.
                let jpq = phase * s;
                let jqp = -phase.conj() * s;

                // A <- A J
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c + akq * jqp;
                    a[(k, q)] = akp * jpq + akq * c;
                }
                // A <- J^dagger A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c + aqk * jqp.conj();
                    a[(q, k)] = apk * jpq.conj() + aqk * c;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

                if want_vectors {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * c + vkq * jqp;
                        v[(k, q)] = vkp * jpq + vkq * c;
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = if want_vectors {
        let mut sorted = ComplexMatrix::zeros(n);
        for (col, &src) in order.iter().enumerate() {
            for r in 0..n {
                sorted[(r, col)] = v[(r, src)];
            }
        }
        sorted
    } else {
        ComplexMatrix::zeros(0)
    };
    HermitianEigen { values, vectors }
}
