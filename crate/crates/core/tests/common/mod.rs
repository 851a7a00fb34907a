//! Independent random generators for the integration tests, built on `rand`
//! so they share no code with the library sampler.
#![allow(dead_code)]

use nlqc::qmath::{ComplexMatrix, DensityMatrix};
use nlqc::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn cnormal(rng: &mut StdRng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `G G^dagger / tr` with a `dim x rank` complex Gaussian `G`.
pub fn random_density(rng: &mut StdRng, dim: usize, rank: usize) -> ComplexMatrix {
    let mut g = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..rank {
            g[(i, j)] = cnormal(rng);
        }
    }
    let m = &g * &g.dagger();
    let t = m.trace().re;
    m.scale_real(1.0 / t)
}

pub fn two_qubit(m: ComplexMatrix) -> DensityMatrix {
    DensityMatrix::new(m, &[2, 2], &["Q", "A"]).unwrap()
}

pub fn random_two_qubit(rng: &mut StdRng) -> DensityMatrix {
    let rank = rng.random_range(1..=4);
    two_qubit(random_density(rng, 4, rank))
}

/// Haar unitary by Householder QR of a Ginibre matrix with the diagonal of R
/// made positive.
pub fn householder_haar(rng: &mut StdRng, n: usize) -> ComplexMatrix {
    let mut a = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = cnormal(rng);
        }
    }
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n {
        let x: Vec<Complex64> = (k..n).map(|i| a[(i, k)]).collect();
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { Complex64::new(1.0, 0.0) };
        let mut v = x.clone();
        v[0] += phase * norm;
        let vn = v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        // H = I - 2 v v^dagger / |v|^2 applied to rows k.. of a, and accumulated in q.
        for j in 0..n {
            let dot: Complex64 = (k..n).map(|i| v[i - k].conj() * a[(i, j)]).sum();
            for i in k..n {
                a[(i, j)] -= v[i - k] * dot * (2.0 / vn);
            }
        }
        for i in 0..n {
            let dot: Complex64 = (k..n).map(|j| q[(i, j)] * v[j - k]).sum();
            for j in k..n {
                q[(i, j)] -= dot * v[j - k].conj() * (2.0 / vn);
            }
        }
    }
    // a is now R; rescale so that diag(R) is real positive.
    for j in 0..n {
        let r = a[(j, j)];
        let ph = if r.norm() > 0.0 { r / r.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= ph;
        }
    }
    q
}

/// Random single-qubit channel: a unitary followed by amplitude damping and
/// depolarising noise, as Kraus operators.
pub fn random_qubit_channel(rng: &mut StdRng) -> Vec<ComplexMatrix> {
    let u = householder_haar(rng, 2);
    let gamma: f64 = rng.random();
    let p: f64 = rng.random::<f64>() * 0.75;
    let c = |re: f64| Complex64::new(re, 0.0);
    let z = Complex64::new(0.0, 0.0);
    let damp = [
        ComplexMatrix::from_rows([[c(1.0), z], [z, c((1.0 - gamma).sqrt())]]),
        ComplexMatrix::from_rows([[z, c(gamma.sqrt())], [z, z]]),
    ];
    let paulis = [
        ComplexMatrix::identity(2),
        nlqc::qmath::matrix::pauli_x(),
        nlqc::qmath::matrix::pauli_y(),
        nlqc::qmath::matrix::pauli_z(),
    ];
    let weights = [1.0 - p, p / 3.0, p / 3.0, p / 3.0];
    let mut out = Vec::new();
    for (s, w) in paulis.iter().zip(weights) {
        for d in &damp {
            out.push((&(s * d) * &u).scale_real(w.sqrt()));
        }
    }
    out
}

/// Applies `I (x) K` Kraus operators to a two-qubit matrix.
pub fn apply_on_second(m: &ComplexMatrix, kraus: &[ComplexMatrix]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(4);
    let id = ComplexMatrix::identity(2);
    for k in kraus {
        let big = id.kron(k);
        out = &out + &(&(&big * m) * &big.dagger());
    }
    out
}
