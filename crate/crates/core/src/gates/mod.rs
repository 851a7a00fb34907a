//! Two-qubit gate catalog, reference states and Haar-random sampling.
//!
//! Wire convention: in every 4x4 matrix the first tensor factor is wire A and
//! the second is wire B, so catalog `CNOT` is controlled on A.

mod catalog;
pub mod matfile;
pub mod rng;

use num_complex::Complex64;

pub use catalog::{catalog_lookup, catalog_names, TABLE_GATES};
pub use matfile::{gate_from_file, parse_matrix, MatrixFile};
pub use rng::Rng;

use crate::error::{Error, Result};
use crate::qmath::matrix::{ComplexMatrix, ZERO};
use crate::qmath::DensityMatrix;

/// Unitaries are accepted from the catalog only at this residual.
pub const CATALOG_UNITARY_TOL: f64 = 1e-10;
/// Residual accepted for user-supplied matrices.
pub const FILE_UNITARY_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct Gate {
    name: String,
    matrix: ComplexMatrix,
}

impl Gate {
    /// Validates a 4x4 unitary on wires (A, B) at tolerance `tol`.
    pub fn new(name: impl Into<String>, matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        if matrix.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: matrix.dim(),
            });
        }
        let residual = matrix.unitarity_residual();
        if residual > tol {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self {
            name: name.into(),
            matrix,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Same gate with the roles of wires A and B exchanged: `SWAP U SWAP`.
    pub fn swapped(&self) -> Self {
        let s = swap_matrix();
        Self {
            name: self.name.clone(),
            matrix: &(&s * &self.matrix) * &s,
        }
    }

    /// `(a (x) b) U (c (x) d)` for single-qubit unitaries.
    pub fn dressed(
        &self,
        a: &ComplexMatrix,
        b: &ComplexMatrix,
        c: &ComplexMatrix,
        d: &ComplexMatrix,
    ) -> Self {
        let left = a.kron(b);
        let right = c.kron(d);
        Self {
            name: self.name.clone(),
            matrix: &(&left * &self.matrix) * &right,
        }
    }
}

pub fn swap_matrix() -> ComplexMatrix {
    let mut s = ComplexMatrix::zeros(4);
    for (i, j) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        s[(i, j)] = Complex64::new(1.0, 0.0);
    }
    s
}

/// `|Psi+> = (|00> + |11>)/sqrt2` on (Q, A).
pub fn bell_state() -> DensityMatrix {
    let mut m = ComplexMatrix::zeros(4);
    for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
        m[(i, j)] = Complex64::new(0.5, 0.0);
    }
    DensityMatrix::new_unchecked(m, &[2, 2], &["Q", "A"])
}

/// `rho_cc = (|00><00| + |11><11|)/2` on (Q, A).
pub fn classically_correlated() -> DensityMatrix {
    DensityMatrix::new_unchecked(
        ComplexMatrix::from_real_diag(&[0.5, 0.0, 0.0, 0.5]),
        &[2, 2],
        &["Q", "A"],
    )
}

/// Haar-random 4x4 unitary: Ginibre matrix, Gram-Schmidt QR, then each column
/// of Q multiplied by the phase of the matching diagonal entry of R.
pub fn haar_random(rng: &mut Rng) -> Gate {
    const N: usize = 4;
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut z = ComplexMatrix::zeros(N);
    for i in 0..N {
        for j in 0..N {
            let (re, im) = rng.normal_pair();
            z[(i, j)] = Complex64::new(re * scale, im * scale);
        }
    }
    let (q, r) = gram_schmidt_qr(&z);
    let mut u = q;
    for j in 0..N {
        let rjj = r[(j, j)];
        let phase = rjj / rjj.norm();
        for i in 0..N {
            u[(i, j)] *= phase;
        }
    }
    Gate {
        name: "haar".into(),
        matrix: u,
    }
}

/// Modified Gram-Schmidt with one re-orthogonalisation pass.
fn gram_schmidt_qr(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.dim();
    let mut q = a.clone();
    let mut r = ComplexMatrix::zeros(n);
    for j in 0..n {
        for _pass in 0..2 {
            for k in 0..j {
                let proj: Complex64 = (0..n).map(|i| q[(i, k)].conj() * q[(i, j)]).sum();
                r[(k, j)] += proj;
                for i in 0..n {
                    let qik = q[(i, k)];
                    q[(i, j)] -= proj * qik;
                }
            }
        }
        let norm = (0..n).map(|i| q[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        r[(j, j)] = Complex64::new(norm, 0.0);
        for i in 0..n {
            q[(i, j)] /= norm;
        }
        for k in (j + 1)..n {
            r[(k, j)] = ZERO;
        }
    }
    (q, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_samples_are_unitary_and_deterministic() {
        let mut rng = Rng::new(42);
        for _ in 0..200 {
            let g = haar_random(&mut rng);
            assert!(g.matrix().unitarity_residual() < 1e-12);
        }
        let a = haar_random(&mut Rng::substream(42, 0));
        let b = haar_random(&mut Rng::substream(42, 0));
        assert_eq!(a.matrix(), b.matrix());
    }

    #[test]
    fn qr_reconstructs_input() {
        let mut rng = Rng::new(5);
        let mut z = ComplexMatrix::zeros(4);
        for i in 0..4 {
            for j in 0..4 {
                let (a, b) = rng.normal_pair();
                z[(i, j)] = Complex64::new(a, b);
            }
        }
        let (q, r) = gram_schmidt_qr(&z);
        assert!((&q * &r).max_abs_diff(&z) < 1e-12);
        assert!(q.unitarity_residual() < 1e-13);
    }

    #[test]
    fn reference_states() {
        let b = bell_state();
        assert!((b.matrix().trace().re - 1.0).abs() < 1e-15);
        let q = b.partial_trace(&["Q"]).unwrap();
        assert!(q.matrix().max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-15);
        let mi = crate::qmath::mutual_information(&classically_correlated(), &["Q"], &["A"]).unwrap();
        assert!((mi - 1.0).abs() < 1e-14);
    }

    #[test]
    fn swapped_twice_is_identity_map() {
        let g = catalog_lookup("CNOT").unwrap();
        assert_eq!(g.swapped().swapped().matrix(), g.matrix());
        assert_ne!(g.swapped().matrix(), g.matrix());
    }
}
