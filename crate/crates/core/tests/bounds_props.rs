mod common;

use nlqc::bounds::{
    cc_bound, cc_lambda, cc_lambdas, ce_bound, noisy_cc_bound, noisy_ce_bound, Reference,
};
use nlqc::gates::{bell_state, catalog_lookup, classically_correlated, haar_random, Gate, Rng};
use nlqc::optimize::{SearchOptions, Sense};
use nlqc::qmath::{mutual_information, ComplexMatrix, DensityMatrix};
use proptest::prelude::*;

use common::householder_haar;

/// `I(Q:A)` by explicit evolution of the three-qubit state.
fn mi_direct(u: &ComplexMatrix, p: &DensityMatrix, r: [f64; 3]) -> f64 {
    let phi = DensityMatrix::qubit_from_bloch(r, "B").unwrap();
    let big = ComplexMatrix::identity(2).kron(u);
    let qa = p.tensor(&phi).unwrap().evolve(&big).unwrap().partial_trace(&["Q", "A"]).unwrap();
    mutual_information(&qa, &["Q"], &["A"]).unwrap()
}

fn clamp_ball(r: [f64; 3]) -> [f64; 3] {
    let n = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    if n > 1.0 {
        r.map(|x| x / n)
    } else {
        r
    }
}

/// Exhaustive 21^3 grid over the cube, kept to the ball, then a compass
/// search from the best grid point.
fn grid_oracle(f: impl Fn([f64; 3]) -> f64, maximize: bool) -> f64 {
    let s = if maximize { 1.0 } else { -1.0 };
    let mut best = ([0.0; 3], f64::NEG_INFINITY);
    for i in 0..21 {
        for j in 0..21 {
            for k in 0..21 {
                let r = [i, j, k].map(|t| -1.0 + 0.1 * t as f64);
                if r.iter().map(|x| x * x).sum::<f64>() > 1.0 + 1e-12 {
                    continue;
                }
                let v = s * f(r);
                if v > best.1 {
                    best = (r, v);
                }
            }
        }
    }
    let mut step = 0.05;
    while step > 1e-7 {
        let mut moved = false;
        for axis in 0..3 {
            for dir in [-1.0, 1.0] {
                let mut r = best.0;
                r[axis] += dir * step;
                let r = clamp_ball(r);
                let v = s * f(r);
                if v > best.1 + 1e-15 {
                    best = (r, v);
                    moved = true;
                }
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    s * best.1
}

#[test]
fn multistart_matches_grid_search() {
    let mut r = common::rng(77);
    let opts = SearchOptions::default();
    for n in 0..20 {
        let gate = Gate::new("haar", householder_haar(&mut r, 4), 1e-10).unwrap();
        let p = if n % 2 == 0 { bell_state() } else { classically_correlated() };
        let f = |x| mi_direct(gate.matrix(), &p, x);
        for (sense, maximize) in [(Sense::Maximize, true), (Sense::Minimize, false)] {
            let got = cc_lambda(&gate, &p, sense, &opts, &mut Rng::new(n)).unwrap().value;
            let grid = grid_oracle(f, maximize);
            assert!((got - grid).abs() <= 5e-3, "sample {n} {sense:?}: multistart {got} grid {grid}");
        }
    }
}

fn random_local(r: &mut rand::rngs::StdRng) -> ComplexMatrix {
    householder_haar(r, 2)
}

#[test]
fn bounds_invariant_under_local_dressing() {
    let cnot = catalog_lookup("CNOT").unwrap();
    let opts = SearchOptions::default();
    let refs = [Reference::Bell];
    let base_cc = cc_bound(&cnot, &refs, false, &opts, &mut Rng::new(1)).unwrap().bound;
    let base_ce = ce_bound(&cnot, &opts, &mut Rng::new(1)).bound;
    let mut r = common::rng(88);
    for k in 0..20 {
        let (a, b, c, d) = (random_local(&mut r), random_local(&mut r), random_local(&mut r), random_local(&mut r));
        let g = cnot.dressed(&a, &b, &c, &d);
        let cc = cc_bound(&g, &refs, false, &opts, &mut Rng::new(k)).unwrap().bound;
        let ce = ce_bound(&g, &opts, &mut Rng::new(k)).bound;
        assert!((cc - base_cc).abs() <= 2e-2, "dressing {k}: cc {cc} vs {base_cc}");
        assert!((ce - base_ce).abs() <= 2e-2, "dressing {k}: ce {ce} vs {base_ce}");
    }
}

#[test]
fn haar_cc_never_exceeds_one_half() {
    let opts = SearchOptions::with_restarts(8);
    for i in 0..40 {
        let mut rng = Rng::substream(9, i);
        let g = haar_random(&mut rng);
        let r = cc_bound(&g, &Reference::defaults(), true, &opts, &mut rng).unwrap();
        assert!(r.bound <= 0.5 + 1e-4, "sample {i}: {}", r.bound);
        assert!(r.bound > 1e-4, "sample {i}: {}", r.bound);
    }
}

#[test]
fn ce_values_for_fixed_gates() {
    let opts = SearchOptions::default();
    for (name, want) in [("CNOT", 1.0), ("RXX", 1.0), ("B", 0.601)] {
        let r = ce_bound(&catalog_lookup(name).unwrap(), &opts, &mut Rng::new(3));
        assert!((r.bound - want).abs() < 5e-3, "{name}: {}", r.bound);
    }
    for name in ["iSWAP", "CS", "SWAP", "Identity"] {
        let r = ce_bound(&catalog_lookup(name).unwrap(), &opts, &mut Rng::new(3));
        assert!(r.bound <= 1e-3 || r.flag.is_some(), "{name}: {}", r.bound);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn max_never_below_min(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let g = haar_random(&mut rng);
        for p in [bell_state(), classically_correlated()] {
            let (hi, lo) = cc_lambdas(&g, &p, &SearchOptions::with_restarts(4), &mut rng).unwrap();
            prop_assert!(hi.value >= lo.value - 1e-9);
        }
    }

    #[test]
    fn noiseless_limits(l1 in 0.0f64..2.0, l2 in 0.0f64..1.0) {
        let cc = noisy_cc_bound(l1.max(l2), l2, 0.0, 1).unwrap();
        prop_assert!((cc - 0.5 * (l1.max(l2) - l2)).abs() <= 1e-12);
        let raw = l1 - 2.0 * l2.powf(0.25);
        let ce = noisy_ce_bound(l1, l2, 0.0).unwrap();
        prop_assert!((ce - raw.max(0.0)).abs() <= 1e-12);
    }
}
