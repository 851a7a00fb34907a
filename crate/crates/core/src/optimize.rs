//! Derivative-free local search (Nelder-Mead) and multistart drivers over
//! single-qubit state space: the Bloch ball (mixed states) and the Bloch
//! sphere (pure states).

use crate::gates::Rng;

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    /// Simplex diameter below which the search may stop.
    pub xtol: f64,
    /// Spread of simplex values below which the search may stop.
    pub ftol: f64,
    pub max_iter: usize,
    pub initial_step: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            xtol: 1e-7,
            ftol: 1e-9,
            max_iter: 2000,
            initial_step: 0.25,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LocalMin {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Minimises `f` from `x0` with the standard reflection / expansion /
/// contraction / shrink moves.
pub fn nelder_mead(mut f: impl FnMut(&[f64]) -> f64, x0: &[f64], opts: &NelderMeadOptions) -> LocalMin {
    let n = x0.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += opts.initial_step;
        simplex.push(p);
    }
    let mut values: Vec<f64> = simplex.iter().map(|p| f(p)).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iter {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let spread = values[n] - values[0];
        let diameter = simplex[1..]
            .iter()
            .map(|p| p.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread.abs() <= opts.ftol && diameter <= opts.xtol {
            converged = true;
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; n];
        for p in &simplex[..n] {
            for (c, v) in centroid.iter_mut().zip(p) {
                *c += v / n as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = along(1.0);
        let fr = f(&reflected);
        if fr < values[0] {
            let expanded = along(2.0);
            let fe = f(&expanded);
            if fe < fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
            continue;
        }
        let (contracted, fc) = if fr < values[n] {
            let p = along(0.5);
            let v = f(&p);
            (p, v)
        } else {
            let p = along(-0.5);
            let v = f(&p);
            (p, v)
        };
        if fc < values[n].min(fr) {
            simplex[n] = contracted;
            values[n] = fc;
            continue;
        }
        for i in 1..=n {
            let shrunk: Vec<f64> = simplex[0]
                .iter()
                .zip(&simplex[i])
                .map(|(b, p)| b + 0.5 * (p - b))
                .collect();
            values[i] = f(&shrunk);
            simplex[i] = shrunk;
        }
    }

    let best = (0..=n).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap();
    LocalMin {
        x: simplex[best].clone(),
        value: values[best],
        iterations,
        converged,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

impl Sense {
    fn sign(self) -> f64 {
        match self {
            Sense::Maximize => -1.0,
            Sense::Minimize => 1.0,
        }
    }

    fn better(self, a: f64, b: f64) -> bool {
        match self {
            Sense::Maximize => a > b,
            Sense::Minimize => a < b,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Total number of starts, fixed starts first.
    pub restarts: usize,
    pub local: NelderMeadOptions,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            restarts: 32,
            local: NelderMeadOptions::default(),
        }
    }
}

impl SearchOptions {
    pub fn with_restarts(restarts: usize) -> Self {
        Self {
            restarts,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub value: f64,
    /// Optimal Bloch vector.
    pub bloch: [f64; 3],
    pub restarts: usize,
    pub iterations: usize,
    /// Number of starts that hit the iteration cap.
    pub stagnated: usize,
    /// Index of the start that produced the optimum.
    pub best_start: usize,
}

impl SearchResult {
    pub fn converged(&self) -> bool {
        self.stagnated == 0
    }
}

/// The six Pauli eigenstates followed by the maximally mixed point.
pub const FIXED_BALL_STARTS: [[f64; 3]; 7] = [
    [1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0],
    [0.0, 1.0, 0.0],
    [0.0, -1.0, 0.0],
    [0.0, 0.0, 1.0],
    [0.0, 0.0, -1.0],
    [0.0, 0.0, 0.0],
];

/// Radial projection of `R^3` onto the closed unit ball.
pub fn project_to_ball(x: &[f64]) -> [f64; 3] {
    let n = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    if n <= 1.0 {
        [x[0], x[1], x[2]]
    } else {
        [x[0] / n, x[1] / n, x[2] / n]
    }
}

fn ball_start(i: usize, rng: &mut Rng) -> [f64; 3] {
    FIXED_BALL_STARTS.get(i).copied().unwrap_or_else(|| rng.in_ball())
}

/// Multistart search of `f` over Bloch vectors in the closed unit ball.
///
/// Points outside the ball are evaluated at their radial projection plus a
/// penalty proportional to the overshoot, which keeps simplices near the
/// boundary without changing the optimum.
pub fn search_ball(
    f: impl FnMut([f64; 3]) -> f64,
    sense: Sense,
    opts: &SearchOptions,
    rng: &mut Rng,
) -> SearchResult {
    let starts: Vec<[f64; 3]> = (0..opts.restarts.max(1)).map(|i| ball_start(i, rng)).collect();
    search_ball_from(f, sense, &starts, &opts.local)
}

/// Ball search from explicit starting points.
pub fn search_ball_from(
    mut f: impl FnMut([f64; 3]) -> f64,
    sense: Sense,
    starts: &[[f64; 3]],
    local: &NelderMeadOptions,
) -> SearchResult {
    let sign = sense.sign();
    search_from(
        |x: &[f64]| {
            let r = project_to_ball(x);
            let overshoot = ((x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt() - 1.0).max(0.0);
            sign * f(r) + overshoot
        },
        &starts.iter().map(|s| s.to_vec()).collect::<Vec<_>>(),
        sense,
        local,
        |x| project_to_ball(x).to_vec(),
        project_to_ball,
    )
}

/// Polar/azimuth angles of a unit Bloch vector.
pub fn bloch_to_angles(r: [f64; 3]) -> [f64; 2] {
    let theta = r[2].clamp(-1.0, 1.0).acos();
    let phi = r[1].atan2(r[0]);
    [theta, phi]
}

pub fn angles_to_bloch(a: &[f64]) -> [f64; 3] {
    let (st, ct) = a[0].sin_cos();
    let (sp, cp) = a[1].sin_cos();
    [st * cp, st * sp, ct]
}

/// Multistart search of `f` over pure states (the Bloch sphere), using
/// spherical angles as coordinates.
pub fn search_sphere(
    mut f: impl FnMut([f64; 3]) -> f64,
    sense: Sense,
    opts: &SearchOptions,
    rng: &mut Rng,
) -> SearchResult {
    let sign = sense.sign();
    let starts: Vec<Vec<f64>> = (0..opts.restarts.max(1))
        .map(|i| {
            let r = FIXED_BALL_STARTS[..6].get(i).copied().unwrap_or_else(|| rng.unit_vector());
            bloch_to_angles(r).to_vec()
        })
        .collect();
    search_from(
        |a: &[f64]| sign * f(angles_to_bloch(a)),
        &starts,
        sense,
        &opts.local,
        |x| x.to_vec(),
        angles_to_bloch,
    )
}

fn search_from(
    mut objective: impl FnMut(&[f64]) -> f64,
    starts: &[Vec<f64>],
    sense: Sense,
    local: &NelderMeadOptions,
    canonical: impl Fn(&[f64]) -> Vec<f64>,
    to_bloch: impl Fn(&[f64]) -> [f64; 3],
) -> SearchResult {
    let sign = sense.sign();
    let mut best: Option<SearchResult> = None;
    let mut iterations = 0;
    let mut stagnated = 0;
    for (i, s) in starts.iter().enumerate() {
        let m = nelder_mead(&mut objective, s, local);
        iterations += m.iterations;
        if !m.converged {
            stagnated += 1;
        }
        let x = canonical(&m.x);
        let bloch = to_bloch(&x);
        let value = sign * objective(&x);
        let improves = best.as_ref().is_none_or(|b| sense.better(value, b.value));
        if improves {
            best = Some(SearchResult {
                value,
                bloch,
                restarts: starts.len(),
                iterations: 0,
                stagnated: 0,
                best_start: i,
            });
        }
    }
    let mut out = best.expect("at least one start");
    out.iterations = iterations;
    out.stagnated = stagnated;
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nelder_mead_finds_quadratic_minimum() {
        let m = nelder_mead(
            |x| (x[0] - 1.0).powi(2) + 10.0 * (x[1] + 2.0).powi(2),
            &[0.0, 0.0],
            &NelderMeadOptions::default(),
        );
        assert!(m.converged);
        assert!((m.x[0] - 1.0).abs() < 1e-6 && (m.x[1] + 2.0).abs() < 1e-6);
    }

    #[test]
    fn nelder_mead_rosenbrock() {
        let opts = NelderMeadOptions {
            max_iter: 5000,
            ..Default::default()
        };
        let m = nelder_mead(
            |x| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2),
            &[-1.2, 1.0],
            &opts,
        );
        assert!(m.value < 1e-10, "{m:?}");
    }

    #[test]
    fn ball_search_reaches_boundary_optimum() {
        let mut rng = Rng::new(1);
        let target = [0.6, -0.48, 0.64]; // unit vector
        let r = search_ball(
            |r| r[0] * target[0] + r[1] * target[1] + r[2] * target[2],
            Sense::Maximize,
            &SearchOptions::with_restarts(8),
            &mut rng,
        );
        assert!((r.value - 1.0).abs() < 1e-8, "{r:?}");
        let inside = search_ball(
            |r| (r[0] - 0.1).powi(2) + (r[1] - 0.2).powi(2) + r[2].powi(2),
            Sense::Minimize,
            &SearchOptions::with_restarts(3),
            &mut rng,
        );
        assert!(inside.value < 1e-12);
        assert!((inside.bloch[1] - 0.2).abs() < 1e-6);
    }

    #[test]
    fn sphere_search_stays_pure() {
        let mut rng = Rng::new(2);
        let r = search_sphere(|r| -r[1], Sense::Minimize, &SearchOptions::with_restarts(8), &mut rng);
        let norm: f64 = r.bloch.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
        assert!((r.value + 1.0).abs() < 1e-9);
    }

    #[test]
    fn max_is_never_below_min_on_shared_starts() {
        let f = |r: [f64; 3]| (3.0 * r[0]).sin() * r[1] + r[2] * r[2];
        let opts = SearchOptions::with_restarts(10);
        let hi = search_ball(f, Sense::Maximize, &opts, &mut Rng::new(9));
        let lo = search_ball(f, Sense::Minimize, &opts, &mut Rng::new(9));
        assert!(hi.value >= lo.value);
    }
}
