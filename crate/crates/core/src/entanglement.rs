//! Two-qubit entanglement measures: concurrence and entanglement of formation
//! in closed form, the PPT test, trace distance to the separable set and the
//! relative entropy of entanglement, together with brute-force upper-bound
//! oracles for the first two.
//!
//! For two qubits PPT and separability coincide, so every routine here that
//! needs the separable set works with the PPT set.

use std::f64::consts::LN_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gates::Rng;
use crate::optimize::{angles_to_bloch, nelder_mead, project_to_ball, NelderMeadOptions};
use crate::qmath::eig::{eig_trusted, eigvals_trusted};
use crate::qmath::entropy::{binary_entropy_clamped, relative_entropy_matrices};
use crate::qmath::matrix::{ComplexMatrix, ZERO};
use crate::qmath::state::bloch_matrix;
use crate::qmath::DensityMatrix;

/// Smallest partial-transpose eigenvalue still counted as PPT.
pub const PPT_TOL: f64 = 1e-9;

fn two_qubit_matrix(rho: &DensityMatrix) -> Result<&ComplexMatrix> {
    if rho.dims() != [2, 2] {
        return Err(Error::InvalidPartition(format!(
            "expected a two-qubit state with dims [2, 2], got {:?}",
            rho.dims()
        )));
    }
    Ok(rho.matrix())
}

fn two_qubit_state(m: ComplexMatrix, like: &DensityMatrix) -> DensityMatrix {
    DensityMatrix::new_unchecked(m, &[2, 2], like.labels())
}

/// Partial transpose of the second qubit of a 4x4 matrix.
pub(crate) fn transpose_second(m: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(4);
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    out[(2 * a + b, 2 * c + d)] = m[(2 * a + d, 2 * c + b)];
                }
            }
        }
    }
    out
}

/// `(Y (x) Y) m* (Y (x) Y)`.
#[cfg(test)]
fn spin_flip(m: &ComplexMatrix) -> ComplexMatrix {
    const S: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];
    let mut out = ComplexMatrix::zeros(4);
    for i in 0..4 {
        for j in 0..4 {
            out[(i, j)] = m[(3 - i, 3 - j)].conj() * (S[i] * S[j]);
        }
    }
    out
}

/// Eigenvalues of `rho` below this are treated as outside its support.
const SUPPORT_TOL: f64 = 1e-12;

/// The `mu_i` are the singular values of `tau_ij = v_i^T (Y (x) Y) v_j` over
/// the weighted eigenvectors `v_i` of `rho`. Restricting to the numerical
/// support keeps low-rank states exact instead of leaving `sqrt(eps)` noise
/// in the trailing values.
pub(crate) fn concurrence_matrix(m: &ComplexMatrix) -> f64 {
    const S: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];
    let eig = eig_trusted(m);
    let vs: Vec<[Complex64; 4]> = (0..4)
        .filter(|&i| eig.values[i] > SUPPORT_TOL)
        .map(|i| {
            let w = eig.values[i].sqrt();
            std::array::from_fn(|k| eig.vectors[(k, i)] * w)
        })
        .collect();
    let r = vs.len();
    if r == 0 {
        return 0.0;
    }
    let mut tau = ComplexMatrix::zeros(r);
    for i in 0..r {
        for j in 0..r {
            tau[(i, j)] = (0..4).map(|k| vs[i][k] * vs[j][3 - k] * S[k]).sum();
        }
    }
    let gram = &tau.dagger() * &tau;
    let mut mu: Vec<f64> = eigvals_trusted(&gram).into_iter().map(|x| x.max(0.0).sqrt()).collect();
    mu.resize(4, 0.0);
    (mu[0] - mu[1] - mu[2] - mu[3]).max(0.0)
}

/// Entanglement of formation as a function of the concurrence.
pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    binary_entropy_clamped(0.5 * (1.0 + (1.0 - c * c).sqrt()))
}

pub(crate) fn eof_matrix(m: &ComplexMatrix) -> f64 {
    eof_from_concurrence(concurrence_matrix(m))
}

/// Wootters concurrence `max(0, mu1 - mu2 - mu3 - mu4)`.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    Ok(concurrence_matrix(two_qubit_matrix(rho)?))
}

/// Entanglement of formation in bits, from the concurrence.
pub fn eof_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    Ok(eof_matrix(two_qubit_matrix(rho)?))
}

const ENSEMBLE_SIZE: usize = 8;
const CLIMB_STEPS: usize = 400;

/// Average pure-state entanglement of the ensemble `w_j = sum_i u[j][i] v_i`.
fn ensemble_average(vs: &[[Complex64; 4]; 4], u: &[Complex64]) -> f64 {
    let mut total = 0.0;
    for j in 0..ENSEMBLE_SIZE {
        let mut w = [ZERO; 4];
        for (i, v) in vs.iter().enumerate() {
            let c = u[4 * j + i];
            for k in 0..4 {
                w[k] += c * v[k];
            }
        }
        let p: f64 = w.iter().map(|z| z.norm_sqr()).sum();
        if p < 1e-15 {
            continue;
        }
        let c = 2.0 * (w[0] * w[3] - w[1] * w[2]).norm() / p;
        total += p * eof_from_concurrence(c);
    }
    total
}

/// Orthonormalises the four columns of an `ENSEMBLE_SIZE x 4` matrix.
fn orthonormal_columns(u: &mut [Complex64]) {
    for col in 0..4 {
        for prev in 0..col {
            let proj: Complex64 = (0..ENSEMBLE_SIZE)
                .map(|r| u[4 * r + prev].conj() * u[4 * r + col])
                .sum();
            for r in 0..ENSEMBLE_SIZE {
                let p = u[4 * r + prev];
                u[4 * r + col] -= proj * p;
            }
        }
        let norm = (0..ENSEMBLE_SIZE).map(|r| u[4 * r + col].norm_sqr()).sum::<f64>().sqrt();
        for r in 0..ENSEMBLE_SIZE {
            u[4 * r + col] /= norm;
        }
    }
}

fn gaussian_block(rng: &mut Rng) -> Vec<Complex64> {
    (0..4 * ENSEMBLE_SIZE)
        .map(|_| {
            let (a, b) = rng.normal_pair();
            Complex64::new(a, b)
        })
        .collect()
}

/// Upper bound on the entanglement of formation from a randomized search over
/// ensemble decompositions with up to eight members.
///
/// Decompositions are parametrised by isometries acting on the weighted
/// eigenvectors of `rho`. Restart 0 is the eigen-decomposition itself, later
/// ones start from random isometries, and each is refined by hill climbing.
/// Each restart draws from its own forked stream, so the result is
/// non-increasing in `restarts` for a fixed generator state.
pub fn eof_ensemble_oracle(rho: &DensityMatrix, restarts: usize, rng: &mut Rng) -> Result<f64> {
    let m = two_qubit_matrix(rho)?;
    let eig = eig_trusted(m);
    let mut vs = [[ZERO; 4]; 4];
    for (i, v) in vs.iter_mut().enumerate() {
        let w = eig.values[i].max(0.0).sqrt();
        for k in 0..4 {
            v[k] = eig.vectors[(k, i)] * w;
        }
    }

    let mut best = f64::INFINITY;
    for r in 0..restarts.max(1) {
        let mut local = rng.fork();
        let mut u = if r == 0 {
            let mut u = vec![ZERO; 4 * ENSEMBLE_SIZE];
            for i in 0..4 {
                u[4 * i + i] = Complex64::new(1.0, 0.0);
            }
            u
        } else {
            let mut u = gaussian_block(&mut local);
            orthonormal_columns(&mut u);
            u
        };
        let mut value = ensemble_average(&vs, &u);
        let mut step = 0.3;
        for _ in 0..CLIMB_STEPS {
            let kick = gaussian_block(&mut local);
            let mut trial: Vec<Complex64> = u.iter().zip(&kick).map(|(a, k)| a + k * step).collect();
            orthonormal_columns(&mut trial);
            let v = ensemble_average(&vs, &trial);
            if v < value {
                value = v;
                u = trial;
                step = (step * 1.2).min(1.0);
            } else {
                step = (step * 0.95).max(1e-4);
            }
        }
        best = best.min(value);
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PptCheck {
    pub ppt: bool,
    /// Smallest eigenvalue of the partial transpose.
    pub min_eigenvalue: f64,
}

pub(crate) fn min_pt_eigenvalue(m: &ComplexMatrix) -> f64 {
    eigvals_trusted(&transpose_second(m))[3]
}

/// Peres-Horodecki test, transposing the second factor of a bipartite state.
pub fn is_ppt(rho: &DensityMatrix) -> Result<PptCheck> {
    if rho.dims().len() != 2 {
        return Err(Error::InvalidPartition(format!(
            "expected a bipartite state, got dims {:?}",
            rho.dims()
        )));
    }
    let pt = crate::qmath::state::partial_transpose_matrix(rho.matrix(), rho.dims(), &[false, true]);
    let min_eigenvalue = *eigvals_trusted(&pt).last().unwrap_or(&0.0);
    Ok(PptCheck {
        ppt: min_eigenvalue >= -PPT_TOL,
        min_eigenvalue,
    })
}

/// Euclidean projection of a Hermitian matrix onto unit-trace PSD matrices.
fn project_to_states(m: &ComplexMatrix) -> ComplexMatrix {
    let eig = eig_trusted(m);
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (k, &v) in eig.values.iter().enumerate() {
        cum += v;
        let t = (cum - 1.0) / (k + 1) as f64;
        if v - t > 0.0 {
            theta = t;
        }
    }
    eig.reconstruct_with(|x| (x - theta).max(0.0))
}

/// Euclidean projection onto unit-trace matrices with PSD partial transpose.
fn project_to_ppt(m: &ComplexMatrix) -> ComplexMatrix {
    transpose_second(&project_to_states(&transpose_second(m)))
}

/// Nearest state to `m`, mixed with white noise just enough to make it PPT.
fn certify_ppt(m: &ComplexMatrix) -> ComplexMatrix {
    let s = project_to_states(m);
    let neg = -min_pt_eigenvalue(&s);
    if neg <= 0.0 {
        return s;
    }
    let t = (neg / (neg + 0.25) * (1.0 + 1e-12)).min(1.0);
    let mut out = s.scale_real(1.0 - t);
    out.add_scaled(t * 0.25, &ComplexMatrix::identity(4));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeparabilityMethod {
    /// Trace distance minimised directly over the PPT set.
    Direct,
    /// Pinsker bound from the relative entropy of entanglement.
    Pinsker,
}

#[derive(Debug, Clone)]
pub struct SeparabilityResult {
    /// Trace-norm distance, always an upper bound on the true minimum.
    pub distance: f64,
    /// The feasible separable state achieving `distance`.
    pub witness_state: DensityMatrix,
    pub method: SeparabilityMethod,
    pub converged: bool,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct SeparabilityOptions {
    pub max_iter: usize,
    /// Stop once the best value improved by less than `stall_tol` over this
    /// many iterations.
    pub stall_window: usize,
    pub stall_tol: f64,
    /// Alternating-projection rounds per subgradient step.
    pub projection_rounds: usize,
}

impl Default for SeparabilityOptions {
    fn default() -> Self {
        Self {
            max_iter: 5000,
            stall_window: 50,
            stall_tol: 1e-7,
            projection_rounds: 4,
        }
    }
}

pub(crate) struct DistanceOutcome {
    pub distance: f64,
    pub witness: ComplexMatrix,
    pub converged: bool,
    pub iterations: usize,
}

/// Projected subgradient descent of `||rho - sigma||_1` over the PPT set.
/// Every iterate is made feasible, so the best value seen is certified.
pub(crate) fn distance_matrix(rho: &ComplexMatrix, opts: &SeparabilityOptions) -> DistanceOutcome {
    if min_pt_eigenvalue(rho) >= -PPT_TOL {
        return DistanceOutcome {
            distance: 0.0,
            witness: rho.clone(),
            converged: true,
            iterations: 0,
        };
    }
    let mut sigma = certify_ppt(rho);
    let mut best = f64::INFINITY;
    let mut best_sigma = sigma.clone();
    let mut history = Vec::with_capacity(opts.max_iter.min(8192));
    let mut step0 = 0.0;
    let mut converged = false;
    let mut iterations = 0;
    for k in 1..=opts.max_iter {
        iterations = k;
        let eig = eig_trusted(&(rho - &sigma));
        let value: f64 = eig.values.iter().map(|v| v.abs()).sum();
        if value < best {
            best = value;
            best_sigma = sigma.clone();
        }
        history.push(best);
        if k > opts.stall_window && history[k - 1 - opts.stall_window] - best < opts.stall_tol {
            converged = true;
            break;
        }
        if k == 1 {
            step0 = 0.25 * value;
        }
        let step = step0 / (k as f64).sqrt();
        let mut trial = sigma.clone();
        trial.add_scaled(step, &eig.reconstruct_with(f64::signum));
        for _ in 0..opts.projection_rounds {
            trial = project_to_ppt(&project_to_states(&trial));
        }
        sigma = certify_ppt(&trial);
    }
    DistanceOutcome {
        distance: best,
        witness: best_sigma,
        converged,
        iterations,
    }
}

/// Trace distance to the separable set with default solver settings.
pub fn distance_to_separable(rho: &DensityMatrix) -> Result<SeparabilityResult> {
    distance_to_separable_with(rho, &SeparabilityOptions::default())
}

/// Trace distance to the separable set. PPT inputs return exactly zero with
/// the input itself as witness.
pub fn distance_to_separable_with(rho: &DensityMatrix, opts: &SeparabilityOptions) -> Result<SeparabilityResult> {
    let out = distance_matrix(two_qubit_matrix(rho)?, opts);
    Ok(SeparabilityResult {
        distance: out.distance,
        witness_state: two_qubit_state(out.witness, rho),
        method: SeparabilityMethod::Direct,
        converged: out.converged,
        iterations: out.iterations,
    })
}

const ORACLE_COMPONENTS: usize = 16;
const ORACLE_GRADIENT_STEPS: usize = 1500;
const ORACLE_CLIMB_STEPS: usize = 3000;

/// Product-state mixture `sum_j w_j a_j (x) b_j`.
fn mixture(params: &[[f64; 7]]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(4);
    for p in params {
        if p[6] == 0.0 {
            continue;
        }
        let a = bloch_matrix([p[0], p[1], p[2]]);
        let b = bloch_matrix([p[3], p[4], p[5]]);
        out.add_scaled(p[6], &a.kron(&b));
    }
    out
}

fn trace_norm_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    eigvals_trusted(&(a - b)).iter().map(|v| v.abs()).sum()
}

/// `tr(d m)` for Hermitian `d`, `m`.
fn trace_product(d: &ComplexMatrix, m: &ComplexMatrix) -> f64 {
    let mut s = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            s += (d[(i, j)] * m[(j, i)]).re;
        }
    }
    s
}

/// Euclidean projection onto the probability simplex.
fn project_simplex(w: &mut [f64]) {
    let mut u = w.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (k, v) in u.iter().enumerate() {
        cum += v;
        let t = (cum - 1.0) / (k + 1) as f64;
        if v - t > 0.0 {
            theta = t;
        }
    }
    for x in w.iter_mut() {
        *x = (*x - theta).max(0.0);
    }
}

fn normalize_mixture(params: &mut [[f64; 7]]) {
    let mut w: Vec<f64> = params.iter().map(|p| p[6]).collect();
    project_simplex(&mut w);
    for (p, x) in params.iter_mut().zip(w) {
        let a = project_to_ball(&p[0..3]);
        let b = project_to_ball(&p[3..6]);
        p[0..3].copy_from_slice(&a);
        p[3..6].copy_from_slice(&b);
        p[6] = x;
    }
}

/// Gradient of `||sigma - rho||_F^2` with respect to every mixture parameter.
fn hs_gradient(rho: &ComplexMatrix, params: &[[f64; 7]]) -> Vec<[f64; 7]> {
    let d = &mixture(params) - rho;
    let paulis = [
        crate::qmath::matrix::pauli_x(),
        crate::qmath::matrix::pauli_y(),
        crate::qmath::matrix::pauli_z(),
    ];
    params
        .iter()
        .map(|p| {
            let a = bloch_matrix([p[0], p[1], p[2]]);
            let b = bloch_matrix([p[3], p[4], p[5]]);
            let mut g = [0.0; 7];
            for k in 0..3 {
                let half = paulis[k].scale_real(0.5);
                g[k] = 2.0 * p[6] * trace_product(&d, &half.kron(&b));
                g[3 + k] = 2.0 * p[6] * trace_product(&d, &a.kron(&half));
            }
            g[6] = 2.0 * trace_product(&d, &a.kron(&b));
            g
        })
        .collect()
}

/// Upper bound on the trace distance to the separable set: the best of
/// `samples` runs over mixtures of sixteen product states. Each run starts
/// from random pure products, descends the Hilbert-Schmidt distance by
/// projected gradient, then hill-climbs the trace distance itself.
pub fn separable_sampling_oracle(rho: &DensityMatrix, samples: usize, rng: &mut Rng) -> Result<f64> {
    let m = two_qubit_matrix(rho)?;
    let hs = |s: &ComplexMatrix| (m - s).frobenius_norm().powi(2);
    let mut best = f64::INFINITY;
    for _ in 0..samples.max(1) {
        let mut local = rng.fork();
        let mut params: Vec<[f64; 7]> = (0..ORACLE_COMPONENTS)
            .map(|_| {
                let a = local.unit_vector();
                let b = local.unit_vector();
                [a[0], a[1], a[2], b[0], b[1], b[2], 1.0 / ORACLE_COMPONENTS as f64]
            })
            .collect();

        let mut value = hs(&mixture(&params));
        let mut lr = 1.0;
        for _ in 0..ORACLE_GRADIENT_STEPS {
            let g = hs_gradient(m, &params);
            loop {
                let mut trial = params.clone();
                for (p, gp) in trial.iter_mut().zip(&g) {
                    for (x, d) in p.iter_mut().zip(gp) {
                        *x -= lr * d;
                    }
                }
                normalize_mixture(&mut trial);
                let v = hs(&mixture(&trial));
                if v <= value {
                    value = v;
                    params = trial;
                    lr = (lr * 1.5).min(10.0);
                    break;
                }
                lr *= 0.5;
                if lr < 1e-12 {
                    break;
                }
            }
        }

        let mut value = trace_norm_diff(m, &mixture(&params));
        let mut steps = [0.05; 3];
        for _ in 0..ORACLE_CLIMB_STEPS {
            let j = (local.next_u64() % ORACLE_COMPONENTS as u64) as usize;
            let group = (local.next_u64() % 3) as usize;
            let mut trial = params.clone();
            match group {
                0 | 1 => {
                    for k in 3 * group..3 * group + 3 {
                        trial[j][k] += steps[group] * local.normal();
                    }
                }
                _ => trial[j][6] += steps[2] * local.normal(),
            }
            normalize_mixture(&mut trial);
            let v = trace_norm_diff(m, &mixture(&trial));
            if v < value {
                value = v;
                params = trial;
                steps[group] = (steps[group] * 1.3).min(1.0);
            } else {
                steps[group] = (steps[group] * 0.97).max(1e-5);
            }
        }
        best = best.min(value);
    }
    Ok(best)
}

#[derive(Debug, Clone)]
pub struct RelativeEntropyResult {
    /// Upper bound on the relative entropy of entanglement, in bits.
    pub value: f64,
    /// Separable state achieving `value`.
    pub sigma: DensityMatrix,
    pub iterations: usize,
    /// Frank-Wolfe gap fell below tolerance.
    pub converged: bool,
}

const LMO_SEEDS: usize = 2000;
const LMO_REFINED: usize = 4;
const FW_GAP_TOL: f64 = 1e-7;

/// Gradient of `sigma -> -tr rho log2 sigma`, via divided differences of
/// the logarithm in the eigenbasis of `sigma`.
fn log_gradient(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> ComplexMatrix {
    let eig = eig_trusted(sigma);
    let v = &eig.vectors;
    let rho_e = &(&v.dagger() * rho) * v;
    let s: Vec<f64> = eig.values.iter().map(|x| x.max(1e-300)).collect();
    let mut g = ComplexMatrix::zeros(4);
    for i in 0..4 {
        for j in 0..4 {
            let (a, b) = (s[i], s[j]);
            let dd = if (a - b).abs() <= 1e-12 * a.max(b) {
                1.0 / a
            } else {
                (a.ln() - b.ln()) / (a - b)
            };
            g[(i, j)] = rho_e[(i, j)] * (-dd / LN_2);
        }
    }
    &(v * &g) * &v.dagger()
}

fn product_vector(a: [f64; 3], b: [f64; 3]) -> [Complex64; 4] {
    let ket = |r: [f64; 3]| -> [Complex64; 2] {
        let theta = r[2].clamp(-1.0, 1.0).acos();
        let phi = r[1].atan2(r[0]);
        [
            Complex64::new((theta / 2.0).cos(), 0.0),
            Complex64::from_polar((theta / 2.0).sin(), phi),
        ]
    };
    let (x, y) = (ket(a), ket(b));
    [x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]]
}

fn quadratic_form(g: &ComplexMatrix, v: &[Complex64; 4]) -> f64 {
    let mut s = ZERO;
    for i in 0..4 {
        for j in 0..4 {
            s += v[i].conj() * g[(i, j)] * v[j];
        }
    }
    s.re
}

/// Minimises `<ab|G|ab>` over product pure states.
fn product_lmo(g: &ComplexMatrix, rng: &mut Rng) -> [Complex64; 4] {
    let mut seeds: Vec<(f64, [f64; 3], [f64; 3])> = (0..LMO_SEEDS)
        .map(|_| {
            let (a, b) = (rng.unit_vector(), rng.unit_vector());
            (quadratic_form(g, &product_vector(a, b)), a, b)
        })
        .collect();
    seeds.sort_by(|x, y| x.0.total_cmp(&y.0));
    let opts = NelderMeadOptions {
        initial_step: 0.1,
        max_iter: 400,
        ..Default::default()
    };
    let angles = |r: [f64; 3]| [r[2].clamp(-1.0, 1.0).acos(), r[1].atan2(r[0])];
    let mut best = (f64::INFINITY, [ZERO; 4]);
    for &(_, a, b) in seeds.iter().take(LMO_REFINED) {
        let (ta, tb) = (angles(a), angles(b));
        let vec_of = |x: &[f64]| product_vector(angles_to_bloch(&x[0..2]), angles_to_bloch(&x[2..4]));
        let m = nelder_mead(|x| quadratic_form(g, &vec_of(x)), &[ta[0], ta[1], tb[0], tb[1]], &opts);
        if m.value < best.0 {
            best = (m.value, vec_of(&m.x));
        }
    }
    best.1
}

fn rel_entropy_or_inf(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> f64 {
    relative_entropy_matrices(rho, sigma).unwrap_or(f64::INFINITY)
}

/// Golden-section search of `f` on `[0, 1]`.
fn golden_section(mut f: impl FnMut(f64) -> f64, iters: usize) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let (mut lo, mut hi) = (0.0, 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iters {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Upper bound on the relative entropy of entanglement by conditional
/// gradient (Frank-Wolfe) over mixtures of product states, starting from the
/// maximally mixed state. The objective never increases between iterations.
pub fn rel_entropy_of_entanglement(rho: &DensityMatrix, iters: usize, rng: &mut Rng) -> Result<RelativeEntropyResult> {
    let m = two_qubit_matrix(rho)?;
    if min_pt_eigenvalue(m) >= -PPT_TOL {
        return Ok(RelativeEntropyResult {
            value: 0.0,
            sigma: rho.clone(),
            iterations: 0,
            converged: true,
        });
    }
    let mut sigma = ComplexMatrix::identity(4).scale_real(0.25);
    let mut value = rel_entropy_or_inf(m, &sigma);
    let mut converged = false;
    let mut iterations = 0;
    for k in 1..=iters {
        iterations = k;
        let g = log_gradient(m, &sigma);
        let v = product_lmo(&g, rng);
        let vertex = ComplexMatrix::outer(&v);
        let gap: f64 = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .map(|(i, j)| (g[(i, j)] * (sigma[(j, i)] - vertex[(j, i)])).re)
            .sum();
        if gap < FW_GAP_TOL {
            converged = true;
            break;
        }
        let blend = |t: f64| {
            let mut s = sigma.scale_real(1.0 - t);
            s.add_scaled(t, &vertex);
            s
        };
        let (t, f) = golden_section(|t| rel_entropy_or_inf(m, &blend(t)), 40);
        if f < value {
            value = f;
            sigma = blend(t);
        }
    }
    Ok(RelativeEntropyResult {
        value,
        sigma: two_qubit_state(sigma, rho),
        iterations,
        converged,
    })
}

/// Frank-Wolfe iterations used by the Pinsker route.
pub const PINSKER_ITERS: usize = 300;

/// Distance to the separable set bounded through Pinsker's inequality:
/// `sqrt(2 ln 2 * E_R)`, with the relative-entropy minimiser as witness.
pub fn pinsker_separability(rho: &DensityMatrix, rng: &mut Rng) -> Result<SeparabilityResult> {
    let er = rel_entropy_of_entanglement(rho, PINSKER_ITERS, rng)?;
    Ok(SeparabilityResult {
        distance: (2.0 * LN_2 * er.value.max(0.0)).sqrt(),
        witness_state: er.sigma,
        method: SeparabilityMethod::Pinsker,
        converged: er.converged,
        iterations: er.iterations,
    })
}

/// Over-estimate of the trace distance to the separable set via Pinsker.
pub fn pinsker_lambda2(rho: &DensityMatrix, rng: &mut Rng) -> Result<f64> {
    Ok(pinsker_separability(rho, rng)?.distance)
}
