//! Lower bounds on the entanglement of formation of any resource state that
//! implements a two-qubit gate as a non-local computation.
//!
//! Two techniques are provided. Controllable correlation (cc) compares the
//! largest and smallest mutual information `I(Q:A)` that the control input
//! on wire B can leave behind, starting from a correlated reference on QA.
//! Controllable entanglement (ce) compares the largest entanglement of
//! formation reachable from a Bell reference with the smallest trace
//! distance to the separable set.
//!
//! The marginal on QA is affine in the Bloch vector `r` of the input on B:
//! `rho_QA(r) = (M0 + x Mx + y My + z Mz) / 2` with
//! `Mk = tr_B[(I (x) U)(P (x) sigma_k)(I (x) U)^dagger]`. The four terms are
//! computed once per (gate, reference) and every objective evaluation is a
//! 4x4 linear combination.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::entanglement::{distance_matrix, eof_matrix, min_pt_eigenvalue, SeparabilityOptions, PPT_TOL};
use crate::error::{Error, Result};
use crate::gates::{bell_state, classically_correlated, Gate, Rng};
use crate::optimize::{search_ball, search_ball_from, search_sphere, SearchOptions, SearchResult, Sense};
use crate::qmath::entropy::{binary_entropy, entropy_qubit, entropy_trusted, eta, h_big};
use crate::qmath::matrix::{pauli_x, pauli_y, pauli_z, ComplexMatrix};
use crate::qmath::state::partial_trace_matrix;
use crate::qmath::DensityMatrix;

/// Reference states whose cc values differ by at most this are reported as a tie.
pub const TIE_TOL: f64 = 1e-3;
/// `lambda1 - lambda2` below this is reported as no controllable correlation.
pub const DEGENERATE_TOL: f64 = 1e-6;
/// ce bounds at or below this count as the technique failing.
pub const CE_POSITIVE_TOL: f64 = 1e-6;
/// Largest ce `lambda2` for which parallel repetition is accepted.
pub const CE_REPEAT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Technique {
    Cc,
    Ce,
}

impl fmt::Display for Technique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Technique::Cc => "cc",
            Technique::Ce => "ce",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    AsGiven,
    /// Wires exchanged, `SWAP U SWAP`.
    Swapped,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::AsGiven => "as-given",
            Orientation::Swapped => "swapped",
        })
    }
}

/// Which reference state a reported bound came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceTag {
    Bell,
    Cc,
    /// Both standard references reach the bound within [`TIE_TOL`].
    CcOrBell,
    Custom,
}

impl fmt::Display for ReferenceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReferenceTag::Bell => "Psi+",
            ReferenceTag::Cc => "rho_cc",
            ReferenceTag::CcOrBell => "rho_cc or Psi+",
            ReferenceTag::Custom => "custom",
        })
    }
}

#[derive(Debug, Clone)]
pub enum Reference {
    Bell,
    Classical,
    Custom(DensityMatrix),
}

impl Reference {
    /// `{Psi+, rho_cc}`.
    pub fn defaults() -> Vec<Reference> {
        vec![Reference::Bell, Reference::Classical]
    }

    /// A user-supplied two-qubit state on (Q, A).
    pub fn custom(rho: DensityMatrix) -> Result<Self> {
        if rho.dims() != [2, 2] {
            return Err(Error::InvalidPartition(format!(
                "reference must be a two-qubit state, got dims {:?}",
                rho.dims()
            )));
        }
        Ok(Reference::Custom(rho))
    }

    pub fn state(&self) -> DensityMatrix {
        match self {
            Reference::Bell => bell_state(),
            Reference::Classical => classically_correlated(),
            Reference::Custom(rho) => rho.clone(),
        }
    }

    pub fn tag(&self) -> ReferenceTag {
        match self {
            Reference::Bell => ReferenceTag::Bell,
            Reference::Classical => ReferenceTag::Cc,
            Reference::Custom(_) => ReferenceTag::Custom,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundFlag {
    NotControllablyCorrelated,
    NotControllablyEntangled,
}

impl fmt::Display for BoundFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundFlag::NotControllablyCorrelated => "not controllably correlated (at searched references)",
            BoundFlag::NotControllablyEntangled => "not controllably entangled",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerMeta {
    /// Local searches started, summed over both optimisations.
    pub restarts: usize,
    pub iterations: usize,
    /// Every local search and inner solver met its tolerance.
    pub converged: bool,
}

impl OptimizerMeta {
    fn combine(a: &SearchResult, b: &SearchResult, inner_converged: bool) -> Self {
        Self {
            restarts: a.restarts + b.restarts,
            iterations: a.iterations + b.iterations,
            converged: a.converged() && b.converged() && inner_converged,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub gate_name: String,
    pub technique: Technique,
    pub reference: ReferenceTag,
    pub orientation: Orientation,
    /// cc: mutual information in bits. ce: entanglement of formation in bits.
    pub lambda1: f64,
    /// cc: mutual information in bits. ce: trace distance to the separable set.
    pub lambda2: f64,
    /// Lower bound on the resource entanglement of formation, in bits.
    pub bound: f64,
    /// Bloch vector of the input on B achieving `lambda1`.
    pub phi1: [f64; 3],
    /// Bloch vector of the input on B achieving `lambda2`.
    pub phi2: [f64; 3],
    pub flag: Option<BoundFlag>,
    pub optimizer: OptimizerMeta,
}

impl BoundReport {
    pub fn phi1_witness(&self) -> DensityMatrix {
        bloch_state(self.phi1)
    }

    pub fn phi2_witness(&self) -> DensityMatrix {
        bloch_state(self.phi2)
    }
}

fn bloch_state(r: [f64; 3]) -> DensityMatrix {
    DensityMatrix::new_unchecked(crate::qmath::state::bloch_matrix(r), &[2], &["B"])
}

/// The affine map from the Bloch vector on B to the QA marginal.
#[derive(Debug, Clone)]
pub struct MarginalMap {
    terms: [ComplexMatrix; 4],
}

impl MarginalMap {
    /// `u` acts on (A, B); `reference` is a state on (Q, A).
    pub fn new(u: &ComplexMatrix, reference: &ComplexMatrix) -> Self {
        let big = ComplexMatrix::identity(2).kron(u);
        let basis = [ComplexMatrix::identity(2), pauli_x(), pauli_y(), pauli_z()];
        let terms = basis.map(|s| {
            let evolved = reference.kron(&s).conjugate_by(&big);
            partial_trace_matrix(&evolved, &[2, 2, 2], &[true, true, false])
        });
        Self { terms }
    }

    pub fn at(&self, r: [f64; 3]) -> ComplexMatrix {
        let mut out = self.terms[0].scale_real(0.5);
        for k in 0..3 {
            out.add_scaled(0.5 * r[k], &self.terms[k + 1]);
        }
        out
    }
}

/// `I(Q:A)` of a 4x4 state on (Q, A), clamped at zero.
pub(crate) fn qa_mutual_information(m: &ComplexMatrix) -> f64 {
    let mut q = ComplexMatrix::zeros(2);
    let mut a = ComplexMatrix::zeros(2);
    for x in 0..2 {
        for y in 0..2 {
            for k in 0..2 {
                q[(x, y)] += m[(2 * x + k, 2 * y + k)];
                a[(x, y)] += m[(2 * k + x, 2 * k + y)];
            }
        }
    }
    (entropy_qubit(&q) + entropy_qubit(&a) - entropy_trusted(m)).max(0.0)
}

/// Extremum of an objective over the input on B, with its Bloch vector.
#[derive(Debug, Clone)]
pub struct LambdaResult {
    pub value: f64,
    pub bloch: [f64; 3],
    pub search: SearchResult,
}

impl LambdaResult {
    pub fn witness(&self) -> DensityMatrix {
        bloch_state(self.bloch)
    }
}

fn check_reference(reference: &DensityMatrix) -> Result<()> {
    if reference.dims() != [2, 2] {
        return Err(Error::InvalidPartition(format!(
            "reference must be a two-qubit state, got dims {:?}",
            reference.dims()
        )));
    }
    Ok(())
}

/// Extremal `I(Q:A)` of `U_AB (P_QA (x) phi_B) U_AB^dagger` over mixed `phi`.
pub fn cc_lambda(
    gate: &Gate,
    reference: &DensityMatrix,
    sense: Sense,
    opts: &SearchOptions,
    rng: &mut Rng,
) -> Result<LambdaResult> {
    check_reference(reference)?;
    let map = MarginalMap::new(gate.matrix(), reference.matrix());
    Ok(lambda_on_map(&map, sense, opts, rng))
}

fn lambda_on_map(map: &MarginalMap, sense: Sense, opts: &SearchOptions, rng: &mut Rng) -> LambdaResult {
    let search = search_ball(|r| qa_mutual_information(&map.at(r)), sense, opts, rng);
    LambdaResult {
        value: search.value,
        bloch: search.bloch,
        search,
    }
}

/// Both cc extrema for one (gate, reference); the two searches share their
/// starting points.
pub fn cc_lambdas(
    gate: &Gate,
    reference: &DensityMatrix,
    opts: &SearchOptions,
    rng: &mut Rng,
) -> Result<(LambdaResult, LambdaResult)> {
    check_reference(reference)?;
    let map = MarginalMap::new(gate.matrix(), reference.matrix());
    let mut shared = rng.fork();
    let hi = lambda_on_map(&map, Sense::Maximize, opts, &mut shared.clone());
    let lo = lambda_on_map(&map, Sense::Minimize, opts, &mut shared);
    Ok((hi, lo))
}

struct CcCandidate {
    orientation: Orientation,
    tag: ReferenceTag,
    hi: LambdaResult,
    lo: LambdaResult,
}

impl CcCandidate {
    fn gap(&self) -> f64 {
        self.hi.value - self.lo.value
    }
}

/// Best cc bound over the given references and, optionally, both wire
/// orientations. Candidates are visited in a fixed order and the first
/// maximal one wins.
pub fn cc_bound(
    gate: &Gate,
    refs: &[Reference],
    both_orientations: bool,
    opts: &SearchOptions,
    rng: &mut Rng,
) -> Result<BoundReport> {
    if refs.is_empty() {
        return Err(Error::Config("at least one reference state is required".into()));
    }
    let mut orientations = vec![(Orientation::AsGiven, gate.clone())];
    if both_orientations {
        orientations.push((Orientation::Swapped, gate.swapped()));
    }
    let mut candidates = Vec::new();
    for (orientation, g) in &orientations {
        for reference in refs {
            let (hi, lo) = cc_lambdas(g, &reference.state(), opts, rng)?;
            candidates.push(CcCandidate {
                orientation: *orientation,
                tag: reference.tag(),
                hi,
                lo,
            });
        }
    }
    let mut best = 0;
    for (i, c) in candidates.iter().enumerate() {
        if c.gap() > candidates[best].gap() {
            best = i;
        }
    }
    let winner = &candidates[best];
    let mut tag = winner.tag;
    let rival = match tag {
        ReferenceTag::Bell => Some(ReferenceTag::Cc),
        ReferenceTag::Cc => Some(ReferenceTag::Bell),
        _ => None,
    };
    if let Some(rival) = rival {
        let rival_gap = candidates
            .iter()
            .filter(|c| c.tag == rival)
            .map(CcCandidate::gap)
            .fold(f64::NEG_INFINITY, f64::max);
        if (winner.gap() - rival_gap).abs() <= 2.0 * TIE_TOL {
            tag = ReferenceTag::CcOrBell;
        }
    }

    let gap = winner.gap();
    let (bound, flag) = if gap < DEGENERATE_TOL {
        (0.0, Some(BoundFlag::NotControllablyCorrelated))
    } else {
        (0.5 * gap, None)
    };
    Ok(BoundReport {
        gate_name: gate.name().to_owned(),
        technique: Technique::Cc,
        reference: tag,
        orientation: winner.orientation,
        lambda1: winner.hi.value,
        lambda2: winner.lo.value,
        bound,
        phi1: winner.hi.bloch,
        phi2: winner.lo.bloch,
        flag,
        optimizer: OptimizerMeta::combine(&winner.hi.search, &winner.lo.search, true),
    })
}

/// Largest entanglement of formation of the QA marginal from a Bell
/// reference, over pure inputs on B.
pub fn ce_lambda1(gate: &Gate, opts: &SearchOptions, rng: &mut Rng) -> LambdaResult {
    let map = MarginalMap::new(gate.matrix(), bell_state().matrix());
    let search = search_sphere(|r| eof_matrix(&map.at(r)), Sense::Maximize, opts, rng);
    LambdaResult {
        value: search.value,
        bloch: search.bloch,
        search,
    }
}

#[derive(Debug, Clone)]
pub struct Lambda2Result {
    /// Certified upper bound on the smallest trace distance to the separable set.
    pub value: f64,
    pub bloch: [f64; 3],
    pub search: SearchResult,
    /// The inner distance solver met its stall criterion at the reported point.
    pub inner_converged: bool,
}

/// Inner solver settings while the outer search is still moving.
const CE_SCOUT: SeparabilityOptions = SeparabilityOptions {
    max_iter: 400,
    stall_window: 30,
    stall_tol: 1e-6,
    projection_rounds: 4,
};

/// Starts for the concave PPT-margin search.
const PPT_MARGIN_STARTS: usize = 7;

/// Smallest trace distance from the QA marginal (Bell reference) to the
/// separable set, over the full Bloch ball on B.
///
/// First the smallest eigenvalue of the partial transpose is maximised; it
/// is concave in `r`, so a few starts suffice and a non-negative optimum
/// gives exactly zero. Otherwise the distance, which is convex in `r`, is
/// minimised from that point and from the centre with a quick inner solver,
/// and the best point is re-solved at full precision. Every value used is a
/// certified upper bound.
pub fn ce_lambda2(gate: &Gate, opts: &SearchOptions, rng: &mut Rng) -> Lambda2Result {
    let map = MarginalMap::new(gate.matrix(), bell_state().matrix());
    let margin_opts = SearchOptions {
        restarts: opts.restarts.min(PPT_MARGIN_STARTS),
        local: opts.local,
    };
    let margin = search_ball(|r| min_pt_eigenvalue(&map.at(r)), Sense::Maximize, &margin_opts, rng);
    if margin.value >= -PPT_TOL {
        return Lambda2Result {
            value: 0.0,
            bloch: margin.bloch,
            search: margin,
            inner_converged: true,
        };
    }

    let starts = [margin.bloch, [0.0; 3]];
    let scout = search_ball_from(
        |r| distance_matrix(&map.at(r), &CE_SCOUT).distance,
        Sense::Minimize,
        &starts,
        &opts.local,
    );
    let full = distance_matrix(&map.at(scout.bloch), &SeparabilityOptions::default());
    let mut search = scout;
    search.restarts += margin.restarts;
    search.iterations += margin.iterations;
    search.stagnated += margin.stagnated;
    Lambda2Result {
        value: full.distance.min(search.value),
        bloch: search.bloch,
        search,
        inner_converged: full.converged,
    }
}

/// ce bound `max(0, lambda1 - 2 lambda2^(1/4))`, flagged when the technique
/// does not apply (`lambda2 > 1` or no positive bound).
pub fn ce_bound(gate: &Gate, opts: &SearchOptions, rng: &mut Rng) -> BoundReport {
    let l1 = ce_lambda1(gate, opts, rng);
    let l2 = ce_lambda2(gate, opts, rng);
    let raw = l1.value - 2.0 * l2.value.powf(0.25);
    let (bound, flag) = if l2.value > 1.0 || raw <= CE_POSITIVE_TOL {
        (0.0, Some(BoundFlag::NotControllablyEntangled))
    } else {
        (raw, None)
    };
    BoundReport {
        gate_name: gate.name().to_owned(),
        technique: Technique::Ce,
        reference: ReferenceTag::Bell,
        orientation: Orientation::AsGiven,
        lambda1: l1.value,
        lambda2: l2.value,
        bound,
        phi1: l1.bloch,
        phi2: l2.bloch,
        flag,
        optimizer: OptimizerMeta::combine(&l1.search, &l2.search, l2.inner_converged),
    }
}

/// `Delta(x, n_A) = 3 n_A sqrt(x) + 2 (1 + sqrt(x)) h(sqrt(x) / (1 + sqrt(x)))`.
pub fn delta_correction(x: f64, n_a: u32) -> Result<f64> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::Domain {
            value: x,
            domain: "[0, inf)",
        });
    }
    let s = x.sqrt();
    Ok(3.0 * f64::from(n_a) * s + 2.0 * (1.0 + s) * binary_entropy(s / (1.0 + s))?)
}

/// Diamond-norm error of an approximate implementation, and the number of
/// qubits on wire A.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseTerms {
    pub epsilon: f64,
    pub n_a: u32,
}

impl NoiseTerms {
    pub fn new(epsilon: f64, n_a: u32) -> Result<Self> {
        if !(0.0..=2.0).contains(&epsilon) {
            return Err(Error::Domain {
                value: epsilon,
                domain: "[0, 2]",
            });
        }
        Ok(Self { epsilon, n_a })
    }

    pub fn cc_bound(&self, lambda1: f64, lambda2: f64) -> Result<f64> {
        noisy_cc_bound(lambda1, lambda2, self.epsilon, self.n_a)
    }
}

/// `max(0, (lambda1 - lambda2)/2 - Delta(2 sqrt(eps), n_A))`, for `eps < 1/4`.
pub fn noisy_cc_bound(lambda1: f64, lambda2: f64, eps: f64, n_a: u32) -> Result<f64> {
    if !(0.0..0.25).contains(&eps) {
        return Err(Error::Domain {
            value: eps,
            domain: "[0, 1/4)",
        });
    }
    let delta = delta_correction(2.0 * eps.sqrt(), n_a)?;
    Ok((0.5 * (lambda1 - lambda2) - delta).max(0.0))
}

/// `max(0, lambda1 - 2 lambda2^(1/4) - 2^(9/8) gamma^(1/16))`.
pub fn noisy_ce_bound(lambda1: f64, lambda2: f64, gamma: f64) -> Result<f64> {
    if lambda2 > 1.0 {
        return Err(Error::NotApplicable(format!(
            "lambda2 = {lambda2} exceeds 1, the gate is not controllably entangled"
        )));
    }
    if lambda2.is_nan() || lambda2 < 0.0 {
        return Err(Error::Domain {
            value: lambda2,
            domain: "[0, 1]",
        });
    }
    if !(gamma.is_finite() && gamma >= 0.0) {
        return Err(Error::Domain {
            value: gamma,
            domain: "[0, inf)",
        });
    }
    Ok((lambda1 - 2.0 * lambda2.powf(0.25) - 2f64.powf(9.0 / 8.0) * gamma.powf(1.0 / 16.0)).max(0.0))
}

/// Bound for `n` parallel copies of the gate: `n` times the single-copy
/// bound. Refused for ce unless `lambda2` vanishes.
pub fn parallel_repetition(report: &BoundReport, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::Config("repetition count must be at least 1".into()));
    }
    if report.technique == Technique::Ce && report.lambda2 > CE_REPEAT_TOL {
        return Err(Error::NotApplicable(format!(
            "ce parallel repetition needs lambda2 = 0, measured {:.3e}",
            report.lambda2
        )));
    }
    Ok(f64::from(n) * report.bound)
}

/// `n ((lambda1 - lambda2)/2 - Delta(eps, n_A))` for `n` copies of a unitary
/// within `eps` of the gate, clamped at zero.
pub fn noisy_unitary_repetition(report: &BoundReport, n: u32, eps: f64, n_a: u32) -> Result<f64> {
    if report.technique != Technique::Cc {
        return Err(Error::NotApplicable(
            "the noisy-unitary repetition bound uses controllable correlation".into(),
        ));
    }
    if n == 0 {
        return Err(Error::Config("repetition count must be at least 1".into()));
    }
    let delta = delta_correction(eps, n_a)?;
    Ok(f64::from(n) * (0.5 * (report.lambda1 - report.lambda2) - delta).max(0.0))
}

/// `(g1, g2)` with `g1 = n_Q (eta(eps) + eta(sqrt(eps')))`,
/// `g2 = H(eta(eps)) + H(eta(sqrt(eps')))` and `eps' = eps + lambda2`.
pub fn dimension_error_terms(eps: f64, lambda2: f64, n_q: u32) -> Result<(f64, f64)> {
    let shifted = eps + lambda2;
    if !(eps >= 0.0 && lambda2 >= 0.0 && shifted <= 1.0) {
        return Err(Error::Domain {
            value: shifted,
            domain: "eps >= 0, lambda2 >= 0, eps + lambda2 <= 1",
        });
    }
    let a = eta(eps)?;
    let b = eta(shifted.sqrt())?;
    Ok((f64::from(n_q) * (a + b), h_big(a)? + h_big(b)?))
}
