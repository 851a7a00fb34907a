//! Entropic functionals. All logarithms are base 2.

use super::eig::{eig_hermitian, eigvals_hermitian, eigvals_trusted};
use super::matrix::ComplexMatrix;
use super::state::{DensityMatrix, PSD_TOL};
use crate::error::{Error, Result};

/// Eigenvalues of `sigma` below this, carrying `rho`-weight above
/// [`SUPPORT_WEIGHT_TOL`], make the relative entropy infinite.
pub const SUPPORT_EIG_TOL: f64 = 1e-12;
pub const SUPPORT_WEIGHT_TOL: f64 = 1e-10;

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// `-sum p log p` over a spectrum, clamping the numerical-drift band
/// `(-PSD_TOL, 0)` to zero. More negative entries are an error.
pub fn entropy_of_spectrum(values: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &v in values {
        if v < -PSD_TOL {
            return Err(Error::NotPositive { min_eigenvalue: v });
        }
        s -= xlog2x(v.max(0.0));
    }
    Ok(s.max(0.0))
}

/// Entropy of a raw positive semidefinite matrix.
pub fn entropy_of_matrix(m: &ComplexMatrix) -> Result<f64> {
    entropy_of_spectrum(&eigvals_hermitian(m)?)
}

/// Entropy of a matrix known to be a state; negative drift is clamped silently.
pub(crate) fn entropy_trusted(m: &ComplexMatrix) -> f64 {
    if m.dim() == 2 {
        return entropy_qubit(m);
    }
    -eigvals_trusted(m).into_iter().map(|v| xlog2x(v.max(0.0))).sum::<f64>()
}

/// Closed-form entropy of a 2x2 state.
pub(crate) fn entropy_qubit(m: &ComplexMatrix) -> f64 {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let t = a + d;
    let disc = ((a - d) * (a - d) + 4.0 * b.norm_sqr()).sqrt();
    let l1 = 0.5 * (t + disc);
    let l2 = 0.5 * (t - disc);
    -(xlog2x(l1.max(0.0)) + xlog2x(l2.max(0.0)))
}

/// von Neumann entropy `S(rho) = -tr rho log rho` in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_of_matrix(rho.matrix()).expect("density matrix invariants guarantee a PSD spectrum")
}

/// `I(A:B) = S(A) + S(B) - S(AB)` for a bipartition of the labels of `rho`.
pub fn mutual_information<S: AsRef<str>>(rho: &DensityMatrix, part_a: &[S], part_b: &[S]) -> Result<f64> {
    if part_a.is_empty() || part_b.is_empty() {
        return Err(Error::InvalidPartition("both parts must be nonempty".into()));
    }
    for a in part_a {
        if part_b.iter().any(|b| b.as_ref() == a.as_ref()) {
            return Err(Error::InvalidPartition(format!(
                "label `{}` appears in both parts",
                a.as_ref()
            )));
        }
    }
    for l in rho.labels() {
        let covered = part_a.iter().chain(part_b).any(|p| p.as_ref() == l);
        if !covered {
            return Err(Error::InvalidPartition(format!("label `{l}` is not covered")));
        }
    }
    let s_a = von_neumann_entropy(&rho.partial_trace(part_a)?);
    let s_b = von_neumann_entropy(&rho.partial_trace(part_b)?);
    let s_ab = von_neumann_entropy(rho);
    Ok(s_a + s_b - s_ab)
}

/// Quantum relative entropy `D(rho || sigma) = tr(rho log rho - rho log sigma)`
/// in bits. Returns `f64::INFINITY` when the support of `rho` is not contained
/// in the support of `sigma`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    relative_entropy_matrices(rho.matrix(), sigma.matrix())
}

pub(crate) fn relative_entropy_matrices(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: sigma.dim(),
        });
    }
    let er = eig_hermitian(rho)?;
    let es = eig_hermitian(sigma)?;
    let n = rho.dim();
    let neg_entropy: f64 = er.values.iter().map(|&v| xlog2x(v.max(0.0))).sum();
    let mut cross = 0.0;
    for j in 0..n {
        let mu = es.values[j];
        // <s_j| rho |s_j>
        let weight: f64 = (0..n)
            .map(|i| {
                let overlap: num_complex::Complex64 =
                    (0..n).map(|k| es.vectors[(k, j)].conj() * er.vectors[(k, i)]).sum();
                er.values[i].max(0.0) * overlap.norm_sqr()
            })
            .sum();
        if mu < SUPPORT_EIG_TOL {
            if weight > SUPPORT_WEIGHT_TOL {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        cross += weight * mu.log2();
    }
    Ok((neg_entropy - cross).max(0.0))
}

/// `||rho - sigma||_1`, the sum of absolute eigenvalues of the difference.
pub fn trace_norm_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    trace_norm_of_difference(rho.matrix(), sigma.matrix())
}

pub(crate) fn trace_norm_of_difference(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(eigvals_hermitian(&(a - b))?.iter().map(|v| v.abs()).sum())
}

/// Binary entropy `h(x) = -x log x - (1-x) log(1-x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            value: x,
            domain: "[0, 1]",
        });
    }
    Ok(-(xlog2x(x) + xlog2x(1.0 - x)))
}

/// Binary entropy with the argument clamped into `[0, 1]`.
pub(crate) fn binary_entropy_clamped(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    -(xlog2x(x) + xlog2x(1.0 - x))
}

/// `H(y) = (1 + y) h(y / (1 + y))` for `y >= 0`.
pub fn h_big(y: f64) -> Result<f64> {
    if !(y.is_finite() && y >= 0.0) {
        return Err(Error::Domain {
            value: y,
            domain: "[0, inf)",
        });
    }
    Ok((1.0 + y) * binary_entropy(y / (1.0 + y))?)
}

/// `eta(x) = 2 sqrt(x (1 - x))` on `[0, 1]`.
pub fn eta(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            value: x,
            domain: "[0, 1]",
        });
    }
    Ok(2.0 * (x * (1.0 - x)).sqrt())
}
