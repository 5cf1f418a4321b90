//! Bespoke constructions: the magic-state Choi–Jamiołkowski channel, the
//! error-per-gate bounds, Bell-state certificates, the over-unit
//! impossibility checks, and a numeric separable-ball probe.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dense::{min_eigenvalue, DenseMatrix};
use crate::error::{Error, Result};
use crate::gates::{csign, local_clifford, pipeline, AdversaryMap, CliffordGate1Q, NoiseModel};
use crate::pauli::{born_probability, partial_transpose, product, Axis, BlochOp, Outcome, PauliCoeffs2Q};
use crate::separability::{cube_separable, min_pauli_probability, vertex_product, LhvCertificate, NUM_PAIRS};
use crate::state_spaces::vertex_from_index;
use crate::thresholds::{bisect, xz_state};

/// Tolerance on the CJ marginal and on magic-basis identities.
pub const CJ_TOL: f64 = 1e-10;
/// A minimum PT eigenvalue below this counts as non-PPT.
pub const NPT_TOL: f64 = 1e-8;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `|T⟩` and `|T̄⟩`, the pure states along `±(1,1,1)/√3`.
#[derive(Debug, Clone)]
pub struct MagicBasis {
    pub t: [Complex64; 2],
    pub t_bar: [Complex64; 2],
}

impl MagicBasis {
    pub fn new() -> Self {
        let theta = (1.0 / 3f64.sqrt()).acos();
        let (ch, sh) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let phase = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        Self {
            t: [c(ch, 0.0), phase * sh],
            t_bar: [-phase.conj() * sh, c(ch, 0.0)],
        }
    }

    /// `w = (√3 + 1)/2`, the weight in `½(I+X+Y+Z) = w·T − (w−1)·T̄`.
    pub fn w() -> f64 {
        (3f64.sqrt() + 1.0) / 2.0
    }

    pub fn t_dense(&self) -> DenseMatrix {
        DenseMatrix::projector(&self.t)
    }

    pub fn t_bar_dense(&self) -> DenseMatrix {
        DenseMatrix::projector(&self.t_bar)
    }
}

impl Default for MagicBasis {
    fn default() -> Self {
        Self::new()
    }
}

fn kron_kets(kets: &[&[Complex64]]) -> Vec<Complex64> {
    kets.iter().fold(vec![c(1.0, 0.0)], |acc, k| {
        acc.iter().flat_map(|a| k.iter().map(move |b| a * b)).collect()
    })
}

/// A 16×16 CJ state on qubits `(A1, A2, B1, B2)`; inputs are `A1, B1`.
#[derive(Debug, Clone)]
pub struct CjState {
    pub rho: DenseMatrix,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub epsilon: f64,
}

/// Builds the two-term magic-state CJ state, deriving `δ` from the marginal constraint.
pub fn build_cj(alpha: f64, epsilon: f64) -> Result<CjState> {
    if !(alpha > 0.0 && alpha <= 1.0) || !(0.0..0.5).contains(&epsilon) {
        return Err(Error::InvalidParameter(format!(
            "need alpha in (0,1] and epsilon in [0,1/2), got ({alpha}, {epsilon})"
        )));
    }
    let delta_sq = (0.5 - (0.5 + epsilon) * alpha * alpha) / (0.5 - epsilon);
    if !(-1e-15..=1.0).contains(&delta_sq) {
        return Err(Error::InvalidParameter(format!(
            "derived delta^2 = {delta_sq} outside [0,1] for alpha={alpha}, epsilon={epsilon}"
        )));
    }
    build_cj_with_delta(alpha, delta_sq.max(0.0).sqrt(), epsilon)
}

/// Builds the CJ state with an explicit `δ`, rejecting it unless the `(A1, B1)` marginal is `I/4`.
pub fn build_cj_with_delta(alpha: f64, delta: f64, epsilon: f64) -> Result<CjState> {
    let mb = MagicBasis::new();
    let beta = (1.0 - alpha * alpha).max(0.0).sqrt();
    let gamma = (1.0 - delta * delta).max(0.0).sqrt();
    let zero = [c(1.0, 0.0), c(0.0, 0.0)];
    let one = [c(0.0, 0.0), c(1.0, 0.0)];
    let (t, tb) = (&mb.t[..], &mb.t_bar[..]);
    let mut rho = DenseMatrix::zeros(16);
    for b1 in [&zero[..], &one[..]] {
        let first: Vec<Complex64> = kron_kets(&[t, t, b1, t])
            .iter()
            .zip(kron_kets(&[tb, tb, b1, tb]))
            .map(|(x, y)| x * alpha + y * beta)
            .collect();
        let second: Vec<Complex64> = kron_kets(&[tb, t, b1, tb])
            .iter()
            .zip(kron_kets(&[t, tb, b1, t]))
            .map(|(x, y)| x * gamma + y * delta)
            .collect();
        rho = rho
            .add(&DenseMatrix::projector(&first).scale(0.5 * (0.5 + epsilon)))
            .add(&DenseMatrix::projector(&second).scale(0.5 * (0.5 - epsilon)));
    }
    let cj = CjState { rho, alpha, beta, gamma, delta, epsilon };
    let dev = cj.marginal_deviation();
    if dev > CJ_TOL {
        return Err(Error::InvalidParameter(format!(
            "marginal on (A1,B1) differs from I/4 by {dev:.3e}; not trace preserving"
        )));
    }
    Ok(cj)
}

impl CjState {
    /// Reduced state on `(A1, B1)`.
    pub fn input_marginal(&self) -> DenseMatrix {
        self.rho.partial_trace(&[1, 3])
    }

    pub fn marginal_deviation(&self) -> f64 {
        self.input_marginal().max_abs_diff(&DenseMatrix::identity(4).scale(0.25))
    }

    /// Minimum eigenvalue after partial transpose on the given qubits.
    pub fn min_pt_eigenvalue(&self, qubits: &[usize]) -> Result<f64> {
        min_eigenvalue(&self.rho.partial_transpose(qubits))
    }
}

/// `out = 4·Tr_in[(ρ_inᵀ ⊗ I)·cj]` with inputs `(A1, B1)` and outputs `(A2, B2)`.
pub fn cj_apply_dense(cj: &DenseMatrix, input: &DenseMatrix) -> DenseMatrix {
    let idx = |a1: usize, a2: usize, b1: usize, b2: usize| 8 * a1 + 4 * a2 + 2 * b1 + b2;
    let mut out = DenseMatrix::zeros(4);
    for a2 in 0..2 {
        for b2 in 0..2 {
            for a2p in 0..2 {
                for b2p in 0..2 {
                    let mut acc = c(0.0, 0.0);
                    for a1 in 0..2 {
                        for b1 in 0..2 {
                            for a1p in 0..2 {
                                for b1p in 0..2 {
                                    // ρᵀ[(a1,b1),(a1',b1')] = ρ[(a1',b1'),(a1,b1)]
                                    let r = input[(2 * a1p + b1p, 2 * a1 + b1)];
                                    acc += r * cj[(idx(a1p, a2, b1p, b2), idx(a1, a2p, b1, b2p))];
                                }
                            }
                        }
                    }
                    out[(2 * a2 + b2, 2 * a2p + b2p)] = acc * 4.0;
                }
            }
        }
    }
    out
}

pub fn cj_apply(cj: &CjState, input: &PauliCoeffs2Q) -> PauliCoeffs2Q {
    let out = cj_apply_dense(&cj.rho, &input.to_dense());
    PauliCoeffs2Q::from_dense(&out).expect("4x4 output")
}

/// `(|T⟩ + |T̄⟩)/√2` as a Bloch operator.
pub fn t_plus_t_bar() -> BlochOp {
    let mb = MagicBasis::new();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let ket = [(mb.t[0] + mb.t_bar[0]) * s, (mb.t[1] + mb.t_bar[1]) * s];
    BlochOp::from_dense(&DenseMatrix::projector(&ket)).expect("2x2 state")
}

#[derive(Debug, Clone)]
pub struct Lemma8Report {
    pub alpha: f64,
    pub epsilon: f64,
    /// Vertex input pairs `(u, v)` whose output is not cube-separable.
    pub infeasible_pairs: Vec<(usize, usize)>,
    /// Minimum PT eigenvalue of the output for the `(|T⟩+|T̄⟩)/√2 ⊗ |0⟩` input.
    pub witness_min_pt: f64,
    pub marginal_deviation: f64,
    /// Largest distance from the A2 output Bloch vector to the T state, over vertex inputs.
    pub a2_distance_to_t: f64,
    /// CJ minimum PT eigenvalue across the input:output split.
    pub cj_pt_in_out: f64,
    /// CJ minimum PT eigenvalue across the A:B split.
    pub cj_pt_a_b: f64,
}

impl Lemma8Report {
    pub fn feasible_count(&self) -> usize {
        NUM_PAIRS - self.infeasible_pairs.len()
    }

    pub fn all_vertices_feasible(&self) -> bool {
        self.infeasible_pairs.is_empty()
    }

    pub fn entangles_product_input(&self) -> bool {
        self.witness_min_pt < -NPT_TOL
    }

    pub fn trace_preserving(&self) -> bool {
        self.marginal_deviation <= CJ_TOL
    }

    pub fn cj_entangled_both_splits(&self) -> bool {
        self.cj_pt_in_out < -NPT_TOL && self.cj_pt_a_b < -NPT_TOL
    }

    pub fn passes(&self) -> bool {
        self.epsilon > 0.0
            && self.all_vertices_feasible()
            && self.entangles_product_input()
            && self.trace_preserving()
            && self.cj_entangled_both_splits()
    }
}

impl fmt::Display for Lemma8Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alpha: {}", self.alpha)?;
        writeln!(f, "epsilon: {}", self.epsilon)?;
        writeln!(f, "feasible_vertex_outputs: {}/{}", self.feasible_count(), NUM_PAIRS)?;
        let list: Vec<String> = self
            .infeasible_pairs
            .iter()
            .map(|(u, v)| format!("{}x{}", crate::state_spaces::vertex_bits(*u), crate::state_spaces::vertex_bits(*v)))
            .collect();
        writeln!(f, "infeasible_pairs: {}", list.join(" "))?;
        writeln!(f, "witness_min_pt_eigenvalue: {:.6e}", self.witness_min_pt)?;
        writeln!(f, "marginal_deviation: {:.3e}", self.marginal_deviation)?;
        writeln!(f, "a2_distance_to_t: {:.6e}", self.a2_distance_to_t)?;
        writeln!(f, "cj_pt_in_out: {:.6e}", self.cj_pt_in_out)?;
        write!(f, "cj_pt_a_b: {:.6e}", self.cj_pt_a_b)
    }
}

pub fn lemma8_report(alpha: f64, epsilon: f64) -> Result<Lemma8Report> {
    let cj = build_cj(alpha, epsilon)?;
    let verdicts: Result<Vec<(usize, bool, f64)>> = (0..NUM_PAIRS)
        .into_par_iter()
        .map(|k| {
            let out = cj_apply(&cj, &vertex_product(k, 1.0));
            let t = 1.0 / 3f64.sqrt();
            let a2 = out.first_marginal().bloch;
            let dist = a2.iter().map(|x| (x - t).powi(2)).sum::<f64>().sqrt();
            Ok((k, cube_separable(&out, 1.0)?.is_feasible(), dist))
        })
        .collect();
    let verdicts = verdicts?;
    let infeasible_pairs = verdicts.iter().filter(|v| !v.1).map(|v| (v.0 / 8, v.0 % 8)).collect();
    let a2_distance_to_t = verdicts.iter().map(|v| v.2).fold(0.0, f64::max);
    let input = product(&t_plus_t_bar(), &BlochOp::new([0.0, 0.0, 1.0]));
    let witness = cj_apply(&cj, &input);
    Ok(Lemma8Report {
        alpha,
        epsilon,
        infeasible_pairs,
        witness_min_pt: min_eigenvalue(&partial_transpose(&witness).to_dense())?,
        marginal_deviation: cj.marginal_deviation(),
        a2_distance_to_t,
        cj_pt_in_out: cj.min_pt_eigenvalue(&[1, 3])?,
        cj_pt_a_b: cj.min_pt_eigenvalue(&[2, 3])?,
    })
}

pub const LEMMA8_ALPHAS: [f64; 8] = [0.9, 0.95, 0.99, 0.995, 0.998, 0.999, 0.9995, 0.9999];
pub const LEMMA8_EPSILONS: [f64; 6] = [1e-2, 1e-3, 5e-4, 1e-4, 1e-5, 1e-6];

#[derive(Debug, Clone)]
pub struct Lemma8Search {
    /// First passing parameter pair in search order, if any.
    pub found: Option<Lemma8Report>,
    /// Every evaluated candidate, in search order.
    pub tried: Vec<Lemma8Report>,
}

impl Lemma8Search {
    /// The candidate with the most feasible vertex outputs.
    pub fn best(&self) -> Option<&Lemma8Report> {
        self.tried.iter().max_by_key(|r| r.feasible_count())
    }
}

/// Scans `(alpha, epsilon)` over a fixed grid for a pair passing every CJ check.
pub fn lemma8_search() -> Result<Lemma8Search> {
    let candidates: Vec<(f64, f64)> = LEMMA8_ALPHAS
        .iter()
        .flat_map(|&a| LEMMA8_EPSILONS.iter().map(move |&e| (a, e)))
        .filter(|&(a, e)| build_cj(a, e).is_ok())
        .collect();
    let tried: Result<Vec<Lemma8Report>> = candidates.par_iter().map(|&(a, e)| lemma8_report(a, e)).collect();
    let tried = tried?;
    let found = tried.iter().find(|r| r.passes()).cloned();
    Ok(Lemma8Search { found, tried })
}

/// CSIGN followed by the adversarial map with probability `λ`.
pub fn error_per_gate(a: &PauliCoeffs2Q, n: &NoiseModel) -> Result<PauliCoeffs2Q> {
    let NoiseModel::ErrorPerGate(lambda, map) = *n else {
        return Err(Error::InvalidParameter("expected an error-per-gate noise model".into()));
    };
    n.validate()?;
    let ideal = csign(a);
    let hit = match map {
        AdversaryMap::ZFirst => local_clifford(&ideal, 0, CliffordGate1Q::Z),
    };
    Ok(ideal.scale(1.0 - lambda).add(&hit.scale(lambda)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpgBounds {
    pub lower: f64,
    pub upper: f64,
    /// `‖½(I+X+Y+Z) − (w·T − (w−1)·T̄)‖`.
    pub w_identity_residual: f64,
    /// `w² + (w−1)²`, which should be 2.
    pub w_square_sum: f64,
    /// Most negative Born probability of the noiseless CSIGN on vertex inputs.
    pub noiseless_min_probability: f64,
    /// Cube-separable outputs of the λ = 1/2 construction among the 64 vertex inputs.
    pub upper_feasible: usize,
    pub upper_certificates: Vec<LhvCertificate>,
}

/// Recomputes the 20% lower bound and checks the 50% construction on all vertex inputs.
pub fn error_per_gate_bounds() -> Result<EpgBounds> {
    let mb = MagicBasis::new();
    let w = MagicBasis::w();
    let vertex = BlochOp::new([1.0, 1.0, 1.0]).to_dense();
    let expansion = mb.t_dense().scale(w).sub(&mb.t_bar_dense().scale(w - 1.0));
    let residual = vertex.max_abs_diff(&expansion);
    let square_sum = w * w + (w - 1.0) * (w - 1.0);
    if residual > 1e-12 || (square_sum - 2.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter("magic-basis identity failed".into()));
    }
    // any vertex-pair probability is at most w² + (w−1)² = 2 under an adversarial channel
    let max_prob = 2.0;
    let ones = vertex_from_index(0);
    let neg = (0..NUM_PAIRS)
        .map(|k| min_pauli_probability(&csign(&vertex_product(k, 1.0))))
        .fold(f64::INFINITY, f64::min)
        .min(min_pauli_probability(&csign(&product(&ones, &ones))));
    // (1−λ)·neg + λ·max ≥ 0
    let lower = -neg / (max_prob - neg);

    let n = NoiseModel::ErrorPerGate(0.5, AdversaryMap::ZFirst);
    let mut certs = Vec::new();
    for k in 0..NUM_PAIRS {
        let out = error_per_gate(&vertex_product(k, 1.0), &n)?;
        if let crate::separability::Separability::Feasible(c) = cube_separable(&out, 1.0)? {
            certs.push(c);
        }
    }
    Ok(EpgBounds {
        lower,
        upper: 0.5,
        w_identity_residual: residual,
        w_square_sum: square_sum,
        noiseless_min_probability: neg,
        upper_feasible: certs.len(),
        upper_certificates: certs,
    })
}

#[derive(Debug, Clone)]
pub struct BellCertificate {
    pub name: &'static str,
    pub target: PauliCoeffs2Q,
    pub certificate: LhvCertificate,
}

/// Uniform certificates for the four Bell states; signs follow one-sided Paulis.
pub fn bell_cube_certificates() -> Vec<BellCertificate> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let ket = |amps: [f64; 4]| -> Vec<Complex64> { amps.iter().map(|&a| c(a * s, 0.0)).collect() };
    // sign pattern (sx, sy, sz): constraint u_k = s_k · v_k
    let states: [(&str, [f64; 4], [f64; 3]); 4] = [
        ("phi+", [1.0, 0.0, 0.0, 1.0], [1.0, -1.0, 1.0]),
        ("psi+", [0.0, 1.0, 1.0, 0.0], [1.0, 1.0, -1.0]),
        ("phi-", [1.0, 0.0, 0.0, -1.0], [-1.0, 1.0, 1.0]),
        ("psi-", [0.0, 1.0, -1.0, 0.0], [-1.0, -1.0, -1.0]),
    ];
    states
        .iter()
        .map(|&(name, amps, signs)| {
            let target = PauliCoeffs2Q::from_dense(&DenseMatrix::projector(&ket(amps))).expect("4x4");
            let certificate = LhvCertificate::uniform(1.0, |u, v| (0..3).all(|k| u[k] == signs[k] * v[k]));
            BellCertificate { name, target, certificate }
        })
        .collect()
}

/// The certificate for `|00⟩ + |11⟩`.
pub fn bell_cube_certificate() -> LhvCertificate {
    bell_cube_certificates().swap_remove(0).certificate
}

#[derive(Debug, Clone, PartialEq)]
pub struct Appendix2Report {
    /// Born probability of `(+, −)` on `X ⊗ X` for inputs `(1,1,1)` and `(1,1,−1)`.
    pub stated_probability: f64,
    pub samples: usize,
    /// Over-unit Bloch vectors for which some direction `V` gives `1 + v·V < 0`.
    pub over_unit_witnessed: usize,
    /// Vectors in the unit ball for which a witness was (wrongly) found.
    pub in_ball_witnessed: usize,
}

fn random_unit(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (0.1..=1.0).contains(&n) {
            return v.map(|x| x / n);
        }
    }
}

fn has_witness(v: &[f64; 3], directions: &[[f64; 3]]) -> bool {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let antipode = v.map(|x| -x / norm);
    directions
        .iter()
        .chain(std::iter::once(&antipode))
        .any(|d| 1.0 + v.iter().zip(d).map(|(a, b)| a * b).sum::<f64>() < 0.0)
}

pub fn appendix2_checks(samples: usize, seed: u64) -> Appendix2Report {
    let u = BlochOp::new([1.0, 1.0, 1.0]);
    let v = BlochOp::new([1.0, 1.0, -1.0]);
    let out = csign(&product(&u, &v));
    let stated = born_probability(&out, Axis::X, Outcome::Plus, Axis::X, Outcome::Minus);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let directions: Vec<[f64; 3]> = (0..64).map(|_| random_unit(&mut rng)).collect();
    let mut over = 0;
    let mut inside = 0;
    for _ in 0..samples {
        let n = random_unit(&mut rng);
        let big = rng.random_range(1.0f64..1.5).max(1.0 + 1e-9);
        if has_witness(&n.map(|x| x * big), &directions) {
            over += 1;
        }
        let small = rng.random_range(0.0..=1.0);
        if has_witness(&n.map(|x| x * small), &directions) {
            inside += 1;
        }
    }
    Appendix2Report {
        stated_probability: stated,
        samples,
        over_unit_witnessed: over,
        in_ball_witnessed: inside,
    }
}

/// Largest spectral change under `θ → θ + π` over random grid points and noise.
pub fn appendix3_symmetry_deviation(samples: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let t = rng.random_range(0.0..std::f64::consts::TAU);
        let f = rng.random_range(0.0..std::f64::consts::TAU);
        let r = rng.random_range(0.5..2.0);
        let n = if rng.random_bool(0.5) {
            NoiseModel::JointDepol(rng.random_range(0.0..1.0))
        } else {
            NoiseModel::LocalDepol(rng.random_range(0.0..1.0))
        };
        let a = pipeline(&xz_state(t), &xz_state(f), r, &n)?;
        let b = pipeline(&xz_state(t + std::f64::consts::PI), &xz_state(f), r, &n)?;
        for (x, y) in [(a, b), (partial_transpose(&a), partial_transpose(&b))] {
            let ex = crate::dense::eigenvalues_hermitian(&x.to_dense())?;
            let ey = crate::dense::eigenvalues_hermitian(&y.to_dense())?;
            for (p, q) in ex.iter().zip(&ey) {
                worst = worst.max((p - q).abs());
            }
        }
    }
    Ok(worst)
}

/// Largest `t ≤ t_max` with `center + t·direction` cube-separable.
pub fn radius_along(center: &PauliCoeffs2Q, direction: &PauliCoeffs2Q, t_max: f64) -> Result<f64> {
    let infeasible = |t: f64| -> Result<bool> { Ok(!cube_separable(&center.add(&direction.scale(t)), 1.0)?.is_feasible()) };
    if infeasible(0.0)? {
        return Ok(0.0);
    }
    if !infeasible(t_max)? {
        return Ok(t_max);
    }
    match bisect(0.0, t_max, 1e-7, infeasible) {
        Ok(t) => Ok(t),
        Err(Error::NotBracketed { .. }) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// Random traceless coefficient direction with unit Frobenius norm.
pub fn random_direction(rng: &mut ChaCha8Rng) -> PauliCoeffs2Q {
    let mut flat: [f64; 16] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
    flat[0] = 0.0;
    let n = flat.iter().map(|x| x * x).sum::<f64>().sqrt();
    PauliCoeffs2Q::from_flat(&flat.map(|x| x / n))
}

/// Minimum over random directions of the separable step size around `u ⊗ v`.
pub fn separable_ball_radius(u: &BlochOp, v: &BlochOp, directions: usize, seed: u64) -> Result<f64> {
    if u.bloch.iter().chain(&v.bloch).any(|x| x.abs() >= 1.0 - 1e-12) {
        return Err(Error::OnCubeFace);
    }
    let center = product(u, v);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dirs: Vec<PauliCoeffs2Q> = (0..directions).map(|_| random_direction(&mut rng)).collect();
    let radii: Result<Vec<f64>> = dirs.par_iter().map(|d| radius_along(&center, d, 4.0)).collect();
    Ok(radii?.into_iter().fold(f64::INFINITY, f64::min))
}

/// The magic state `√(1/3)(1,1,1)` scaled by `s`.
pub fn t_direction(s: f64) -> BlochOp {
    let t = s / 3f64.sqrt();
    BlochOp::new([t, t, t])
}
