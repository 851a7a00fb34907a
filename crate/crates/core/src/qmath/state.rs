use num_complex::Complex64;

use super::eig::eigvals_hermitian;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const PSD_TOL: f64 = 1e-9;
pub const NORM_TOL: f64 = 1e-10;

/// A normalised state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::BadNorm { norm });
        }
        Ok(Self { amplitudes })
    }

    /// Normalises any nonzero vector.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::BadNorm { norm });
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok(Self { amplitudes })
    }

    /// Single-qubit pure state at polar angle `theta` and azimuth `phi`.
    pub fn qubit(theta: f64, phi: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Self {
            amplitudes: vec![Complex64::new(c, 0.0), Complex64::from_polar(s, phi)],
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes)
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix with labelled subsystems.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    dims: Vec<usize>,
    labels: Vec<String>,
}

impl DensityMatrix {
    pub fn new<S: AsRef<str>>(mat: ComplexMatrix, dims: &[usize], labels: &[S]) -> Result<Self> {
        let rho = Self::with_layout(mat, dims, labels)?;
        let deviation = rho.mat.hermiticity_error();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = rho.mat.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::BadTrace { trace });
        }
        let min_eigenvalue = *eigvals_hermitian(&rho.mat)?.last().unwrap_or(&0.0);
        if min_eigenvalue < -PSD_TOL {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(rho)
    }

    /// Skips the spectral checks; for states produced by trace- and
    /// positivity-preserving maps applied to valid states.
    pub(crate) fn new_unchecked<S: AsRef<str>>(
        mat: ComplexMatrix,
        dims: &[usize],
        labels: &[S],
    ) -> Self {
        Self::with_layout(mat, dims, labels).expect("layout checked by caller")
    }

    fn with_layout<S: AsRef<str>>(mat: ComplexMatrix, dims: &[usize], labels: &[S]) -> Result<Self> {
        let product: usize = dims.iter().product();
        if product != mat.dim() || dims.is_empty() {
            return Err(Error::BadDims {
                dims: dims.to_vec(),
                dim: mat.dim(),
            });
        }
        if labels.len() != dims.len() {
            return Err(Error::InvalidPartition(format!(
                "{} labels for {} subsystems",
                labels.len(),
                dims.len()
            )));
        }
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_owned()).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidPartition(format!("duplicate label `{l}`")));
            }
        }
        Ok(Self {
            mat,
            dims: dims.to_vec(),
            labels,
        })
    }

    pub fn from_pure<S: AsRef<str>>(psi: &PureState, dims: &[usize], labels: &[S]) -> Result<Self> {
        Self::new(psi.projector(), dims, labels)
    }

    /// Maximally mixed state on one subsystem.
    pub fn maximally_mixed(dim: usize, label: &str) -> Self {
        let mat = ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64);
        Self::new_unchecked(mat, &[dim], &[label])
    }

    /// Single-qubit state `(I + r . sigma) / 2` for a Bloch vector `|r| <= 1`.
    pub fn qubit_from_bloch(r: [f64; 3], label: &str) -> Result<Self> {
        let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        if norm > 1.0 + 1e-12 {
            return Err(Error::Domain {
                value: norm,
                domain: "Bloch radius in [0, 1]",
            });
        }
        Ok(Self::new_unchecked(bloch_matrix(r), &[2], &[label]))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    /// Bloch vector of a single-qubit state.
    pub fn bloch_vector(&self) -> Option<[f64; 3]> {
        (self.dim() == 2).then(|| {
            let m = &self.mat;
            [2.0 * m[(0, 1)].re, -2.0 * m[(0, 1)].im, (m[(0, 0)] - m[(1, 1)]).re]
        })
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        Self::with_layout(self.mat.kron(&other.mat), &dims, &labels)
    }

    /// `U rho U^dagger` for a unitary on the full space.
    pub fn evolve(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.dim(),
            });
        }
        Ok(Self {
            mat: self.mat.conjugate_by(u),
            dims: self.dims.clone(),
            labels: self.labels.clone(),
        })
    }

    fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    }

    fn mask<S: AsRef<str>>(&self, subset: &[S]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.dims.len()];
        for s in subset {
            mask[self.index_of(s.as_ref())?] = true;
        }
        Ok(mask)
    }

    /// Reduced state on the listed subsystems, kept in their original order.
    pub fn partial_trace<S: AsRef<str>>(&self, keep: &[S]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::InvalidPartition("nothing to keep".into()));
        }
        let mask = self.mask(keep)?;
        let mat = partial_trace_matrix(&self.mat, &self.dims, &mask);
        let dims: Vec<usize> = self.dims.iter().zip(&mask).filter(|(_, &k)| k).map(|(&d, _)| d).collect();
        let labels: Vec<&String> = self.labels.iter().zip(&mask).filter(|(_, &k)| k).map(|(l, _)| l).collect();
        Ok(Self::new_unchecked(mat, &dims, &labels))
    }

    /// Partial transpose over the listed subsystems. The result is Hermitian
    /// with unit trace but not necessarily positive, so it is returned as a
    /// bare matrix.
    pub fn partial_transpose<S: AsRef<str>>(&self, subsystems: &[S]) -> Result<ComplexMatrix> {
        let mask = self.mask(subsystems)?;
        Ok(partial_transpose_matrix(&self.mat, &self.dims, &mask))
    }
}

/// `(I + x X + y Y + z Z) / 2`
pub fn bloch_matrix(r: [f64; 3]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2);
    m[(0, 0)] = Complex64::new(0.5 * (1.0 + r[2]), 0.0);
    m[(1, 1)] = Complex64::new(0.5 * (1.0 - r[2]), 0.0);
    m[(0, 1)] = Complex64::new(0.5 * r[0], -0.5 * r[1]);
    m[(1, 0)] = Complex64::new(0.5 * r[0], 0.5 * r[1]);
    m
}

fn digits(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = index % dims[k];
        index /= dims[k];
    }
    out
}

fn compose(digits: &[usize], dims: &[usize], select: impl Fn(usize) -> bool) -> usize {
    let mut idx = 0;
    for k in 0..dims.len() {
        if select(k) {
            idx = idx * dims[k] + digits[k];
        }
    }
    idx
}

/// Traces out every subsystem whose `keep` flag is false.
pub fn partial_trace_matrix(mat: &ComplexMatrix, dims: &[usize], keep: &[bool]) -> ComplexMatrix {
    let n = mat.dim();
    let kept_dim: usize = dims.iter().zip(keep).filter(|(_, &k)| k).map(|(&d, _)| d).product();
    let split: Vec<(usize, usize)> = (0..n)
        .map(|i| {
            let d = digits(i, dims);
            (compose(&d, dims, |k| keep[k]), compose(&d, dims, |k| !keep[k]))
        })
        .collect();
    let mut out = ComplexMatrix::zeros(kept_dim);
    for r in 0..n {
        let (kr, tr) = split[r];
        for c in 0..n {
            let (kc, tc) = split[c];
            if tr == tc {
                out[(kr, kc)] += mat[(r, c)];
            }
        }
    }
    out
}

/// Transposes the row and column digits of every flagged subsystem.
pub fn partial_transpose_matrix(mat: &ComplexMatrix, dims: &[usize], flip: &[bool]) -> ComplexMatrix {
    let n = mat.dim();
    let dig: Vec<Vec<usize>> = (0..n).map(|i| digits(i, dims)).collect();
    let mut out = ComplexMatrix::zeros(n);
    let mut rd = vec![0; dims.len()];
    let mut cd = vec![0; dims.len()];
    for r in 0..n {
        for c in 0..n {
            for k in 0..dims.len() {
                if flip[k] {
                    rd[k] = dig[c][k];
                    cd[k] = dig[r][k];
                } else {
                    rd[k] = dig[r][k];
                    cd[k] = dig[c][k];
                }
            }
            let r2 = compose(&rd, dims, |_| true);
            let c2 = compose(&cd, dims, |_| true);
            out[(r2, c2)] = mat[(r, c)];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::matrix::{ONE, ZERO};

    fn bell() -> DensityMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = PureState::new(vec![
            Complex64::new(h, 0.0),
            ZERO,
            ZERO,
            Complex64::new(h, 0.0),
        ])
        .unwrap();
        DensityMatrix::from_pure(&psi, &[2, 2], &["Q", "A"]).unwrap()
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let q = bell().partial_trace(&["Q"]).unwrap();
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(q.matrix().max_abs_diff(&half) < 1e-15);
        assert_eq!(q.labels(), ["Q"]);
    }

    #[test]
    fn product_state_marginal() {
        let rq = DensityMatrix::qubit_from_bloch([0.3, -0.2, 0.5], "Q").unwrap();
        let sa = DensityMatrix::qubit_from_bloch([0.0, 0.6, -0.1], "A").unwrap();
        let joint = rq.tensor(&sa).unwrap();
        let back = joint.partial_trace(&["Q"]).unwrap();
        assert!(back.matrix().max_abs_diff(rq.matrix()) < 1e-15);
        let back_a = joint.partial_trace(&["A"]).unwrap();
        assert!(back_a.matrix().max_abs_diff(sa.matrix()) < 1e-15);
    }

    #[test]
    fn ghz_marginal_is_classically_correlated() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![ZERO; 8];
        amps[0] = Complex64::new(h, 0.0);
        amps[7] = Complex64::new(h, 0.0);
        let ghz = DensityMatrix::from_pure(&PureState::new(amps).unwrap(), &[2, 2, 2], &["Q", "A", "B"]).unwrap();
        let qa = ghz.partial_trace(&["Q", "A"]).unwrap();
        let rho_cc = ComplexMatrix::from_real_diag(&[0.5, 0.0, 0.0, 0.5]);
        assert!(qa.matrix().max_abs_diff(&rho_cc) < 1e-15);
    }

    #[test]
    fn partial_trace_errors() {
        assert!(matches!(bell().partial_trace(&["Z"]), Err(Error::UnknownLabel(_))));
        let none: [&str; 0] = [];
        assert!(matches!(bell().partial_trace(&none), Err(Error::InvalidPartition(_))));
    }

    #[test]
    fn rejects_invalid_states() {
        let m = ComplexMatrix::from_real_diag(&[0.7, 0.7]);
        assert!(matches!(DensityMatrix::new(m, &[2], &["A"]), Err(Error::BadTrace { .. })));
        let m = ComplexMatrix::from_real_diag(&[1.5, -0.5]);
        assert!(matches!(DensityMatrix::new(m, &[2], &["A"]), Err(Error::NotPositive { .. })));
        let m = ComplexMatrix::from_rows([[ONE, ZERO], [ZERO, ZERO]]);
        assert!(matches!(DensityMatrix::new(m, &[3], &["A"]), Err(Error::BadDims { .. })));
    }

    #[test]
    fn bloch_vector_round_trip() {
        let r = [0.1, -0.4, 0.7];
        let rho = DensityMatrix::qubit_from_bloch(r, "B").unwrap();
        let back = rho.bloch_vector().unwrap();
        for k in 0..3 {
            assert!((back[k] - r[k]).abs() < 1e-15);
        }
    }
}
