//! Counter-based 64-bit generator with a SplitMix64 finalizer.
//!
//! Output `k` (1-based) of a stream with seed `s` is
//! `mix64(s + k * 0x9E3779B97F4A7C15)` (wrapping arithmetic), where
//!
//! ```text
//! mix64(z):
//!     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//!     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//!     return z ^ (z >> 31)
//! ```
//!
//! Per-sample substreams use the seed `mix64(s ^ mix64(i * 0x9E3779B97F4A7C15 + 0xD1B54A32D192ED03))`.
//! Uniform doubles take the top 53 bits; Gaussian pairs come from one
//! Box-Muller transform `(r cos t, r sin t)` with `u1 = 1 - uniform()`,
//! `u2 = uniform()`.

use std::f64::consts::TAU;

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const SUBSTREAM_SALT: u64 = 0xD1B5_4A32_D192_ED03;

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the substream for `index` under a campaign seed.
pub fn substream_seed(seed: u64, index: u64) -> u64 {
    mix64(seed ^ mix64(index.wrapping_mul(GAMMA).wrapping_add(SUBSTREAM_SALT)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rng {
    seed: u64,
    counter: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self { seed, counter: 0 }
    }

    pub fn substream(seed: u64, index: u64) -> Self {
        Self::new(substream_seed(seed, index))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent child stream, advancing this one by a single draw.
    pub fn fork(&mut self) -> Self {
        Self::new(self.next_u64())
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(self.seed.wrapping_add(self.counter.wrapping_mul(GAMMA)))
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Two independent standard normals.
    pub fn normal_pair(&mut self) -> (f64, f64) {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (TAU * u2).sin_cos();
        (r * c, r * s)
    }

    pub fn normal(&mut self) -> f64 {
        self.normal_pair().0
    }

    /// Uniform point on the unit sphere in R^3.
    pub fn unit_vector(&mut self) -> [f64; 3] {
        loop {
            let (a, b) = self.normal_pair();
            let c = self.normal();
            let n = (a * a + b * b + c * c).sqrt();
            if n > 1e-12 {
                return [a / n, b / n, c / n];
            }
        }
    }

    /// Uniform point in the closed unit ball in R^3.
    pub fn in_ball(&mut self) -> [f64; 3] {
        let d = self.unit_vector();
        let r = self.uniform().cbrt();
        [d[0] * r, d[1] * r, d[2] * r]
    }
}
