//! Cube separability as membership in the polytope spanned by the 64 products
//! of cube vertices, quantum separability via positivity and PPT, and
//! explicit local-hidden-variable certificates.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::Zero;

use crate::dense::min_eigenvalue;
use crate::error::{Error, Result};
use crate::gates::{pipeline, NoiseModel};
use crate::lp::{phase_one, rationalize, LpScalar};
use crate::pauli::{all_pair_probabilities, partial_transpose, product, BlochOp, PauliCoeffs2Q};
use crate::state_spaces::{rescale2, vertex_bits, vertex_from_index, vertex_index_from_bits};

/// Equality-residual tolerance for LP feasibility and certificate checks.
pub const FEAS_TOL: f64 = 1e-9;
/// Phase-one optima in `(FEAS_TOL, DEGENERACY_TOL]` are re-solved exactly.
pub const DEGENERACY_TOL: f64 = 1e-7;
/// Denominator bound used when rationalizing inputs for the exact solve.
pub const RATIONAL_DEN: i64 = 1_000_000;
/// Slack on Born probabilities and eigenvalues.
pub const POSITIVITY_TOL: f64 = 1e-9;

pub const NUM_PAIRS: usize = 64;

/// Index of the vertex pair `(u, v)`.
pub fn pair_index(u: usize, v: usize) -> usize {
    8 * u + v
}

/// `product(R·u, R·v)` for the pair with index `k`.
pub fn vertex_product(k: usize, r: f64) -> PauliCoeffs2Q {
    let (u, v) = (vertex_from_index(k / 8), vertex_from_index(k % 8));
    rescale2(&product(&u, &v), r).expect("positive scale")
}

/// Weights over the 64 vertex products.
#[derive(Debug, Clone, PartialEq)]
pub struct LhvCertificate {
    pub weights: Vec<f64>,
    pub r: f64,
    pub tolerance_used: f64,
}

impl LhvCertificate {
    pub fn zero(r: f64) -> Self {
        Self {
            weights: vec![0.0; NUM_PAIRS],
            r,
            tolerance_used: FEAS_TOL,
        }
    }

    /// Single unit weight on the pair `(u, v)`.
    pub fn vertex_pair(u: usize, v: usize, r: f64) -> Self {
        let mut c = Self::zero(r);
        c.weights[pair_index(u, v)] = 1.0;
        c
    }

    /// Uniform weight over every pair accepted by `pred`.
    pub fn uniform(r: f64, pred: impl Fn(&[f64; 3], &[f64; 3]) -> bool) -> Self {
        let mut c = Self::zero(r);
        let hits: Vec<usize> = (0..NUM_PAIRS)
            .filter(|&k| pred(&vertex_from_index(k / 8).bloch, &vertex_from_index(k % 8).bloch))
            .collect();
        for &k in &hits {
            c.weights[k] = 1.0 / hits.len() as f64;
        }
        c
    }

    /// Linear combination of certificates; coefficients may be negative.
    pub fn combine(parts: &[(f64, &LhvCertificate)]) -> Self {
        let r = parts.first().map_or(1.0, |(_, c)| c.r);
        let mut out = Self::zero(r);
        for (w, c) in parts {
            for (o, x) in out.weights.iter_mut().zip(&c.weights) {
                *o += w * x;
            }
        }
        out
    }

    /// The operator `Σ_k w_k product(R·u_k, R·v_k)`.
    pub fn mixture(&self) -> PauliCoeffs2Q {
        let mut acc = PauliCoeffs2Q::zero();
        for (k, &w) in self.weights.iter().enumerate() {
            if w != 0.0 {
                acc = acc.add(&vertex_product(k, self.r).scale(w));
            }
        }
        acc
    }

    pub fn support(&self) -> Vec<(usize, usize, f64)> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != 0.0)
            .map(|(k, &w)| (k / 8, k % 8, w))
            .collect()
    }

    /// Header lines `# tolerance` and `# R`, then 64 lines `u_bits v_bits weight`.
    /// A set bit means the component is `-1`; bits are in `(x, y, z)` order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# tolerance {:e}", self.tolerance_used);
        let _ = writeln!(s, "# R {}", self.r);
        for (k, w) in self.weights.iter().enumerate() {
            let _ = writeln!(s, "{} {} {}", vertex_bits(k / 8), vertex_bits(k % 8), w);
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut tol = None;
        let mut r = None;
        let mut weights = vec![0.0; NUM_PAIRS];
        let mut seen = [false; NUM_PAIRS];
        for (n, line) in text.lines().enumerate() {
            let line_no = n + 1;
            let err = |msg: &str| Error::Parse { line: line_no, msg: msg.to_string() };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let mut it = rest.split_whitespace();
                match (it.next(), it.next()) {
                    (Some("tolerance"), Some(v)) => tol = Some(v.parse::<f64>().map_err(|_| err("bad tolerance"))?),
                    (Some("R"), Some(v)) => r = Some(v.parse::<f64>().map_err(|_| err("bad R"))?),
                    _ => {}
                }
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(err("expected `u_bits v_bits weight`"));
            }
            let u = vertex_index_from_bits(fields[0]).ok_or_else(|| err("bad vertex bits"))?;
            let v = vertex_index_from_bits(fields[1]).ok_or_else(|| err("bad vertex bits"))?;
            let w: f64 = fields[2].parse().map_err(|_| err("bad weight"))?;
            let k = pair_index(u, v);
            if seen[k] {
                return Err(err("duplicate vertex pair"));
            }
            seen[k] = true;
            weights[k] = w;
        }
        let r = r.ok_or(Error::Parse { line: 0, msg: "missing `# R` header".into() })?;
        Ok(Self {
            weights,
            r,
            tolerance_used: tol.unwrap_or(FEAS_TOL),
        })
    }
}

/// A linear functional nonnegative on every vertex product but negative on the target.
#[derive(Debug, Clone, PartialEq)]
pub struct BellFunctional {
    pub dual: [[f64; 4]; 4],
    pub violation: f64,
}

impl BellFunctional {
    pub fn value(&self, a: &PauliCoeffs2Q) -> f64 {
        let mut s = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                s += self.dual[i][j] * a.get(i, j);
            }
        }
        s
    }

    /// Smallest value over the 64 products of `r`-scaled vertices.
    pub fn min_over_vertices(&self, r: f64) -> f64 {
        (0..NUM_PAIRS).map(|k| self.value(&vertex_product(k, r))).fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Separability {
    Feasible(LhvCertificate),
    Infeasible(BellFunctional),
}

impl Separability {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Separability::Feasible(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpMode {
    /// Floating point first, exact rationals near degeneracy or on failed verification.
    Auto,
    ExactOnly,
}

pub fn cube_separable(a: &PauliCoeffs2Q, r: f64) -> Result<Separability> {
    cube_separable_with(a, r, LpMode::Auto)
}

pub fn cube_separable_with(a: &PauliCoeffs2Q, r: f64, mode: LpMode) -> Result<Separability> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidParameter(format!("rescaling factor must be positive, got {r}")));
    }
    if mode == LpMode::Auto {
        if let Some(verdict) = solve_float(a, r) {
            return Ok(verdict);
        }
    }
    solve_exact(a, r)
}

/// Constraint matrix (16 × 64) and right-hand side, rows sign-flipped so `b ≥ 0`.
fn build_system<S: LpScalar>(target: &[S; 16], columns: &[[S; 16]]) -> (Vec<Vec<S>>, Vec<S>, Vec<bool>) {
    let mut rows = Vec::with_capacity(16);
    let mut rhs = Vec::with_capacity(16);
    let mut flipped = Vec::with_capacity(16);
    for c in 0..16 {
        let neg = target[c] < S::zero();
        let row: Vec<S> = columns
            .iter()
            .map(|col| if neg { -col[c].clone() } else { col[c].clone() })
            .collect();
        rows.push(row);
        rhs.push(if neg { -target[c].clone() } else { target[c].clone() });
        flipped.push(neg);
    }
    (rows, rhs, flipped)
}

/// `B = -D y`, scaled to unit max-norm.
fn functional_from_multipliers(y: &[f64], flipped: &[bool]) -> [[f64; 4]; 4] {
    let raw: Vec<f64> = y.iter().zip(flipped).map(|(v, &f)| if f { *v } else { -v }).collect();
    let scale = raw.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    std::array::from_fn(|i| std::array::from_fn(|j| raw[4 * i + j] / scale))
}

fn float_columns(r: f64) -> Vec<[f64; 16]> {
    (0..NUM_PAIRS).map(|k| vertex_product(k, r).flat()).collect()
}

fn checked_certificate(a: &PauliCoeffs2Q, r: f64, x: &[f64], tol: f64) -> Option<LhvCertificate> {
    if x.iter().any(|&w| w < -tol || !w.is_finite()) {
        return None;
    }
    let cert = LhvCertificate {
        weights: x.iter().map(|&w| w.max(0.0)).collect(),
        r,
        tolerance_used: tol,
    };
    verify_certificate(&cert, a, r, tol).then_some(cert)
}

fn checked_functional(a: &PauliCoeffs2Q, r: f64, dual: [[f64; 4]; 4]) -> Option<BellFunctional> {
    let mut f = BellFunctional { dual, violation: 0.0 };
    f.violation = -f.value(a);
    (f.violation > 0.0 && f.min_over_vertices(r) >= -FEAS_TOL).then_some(f)
}

fn solve_float(a: &PauliCoeffs2Q, r: f64) -> Option<Separability> {
    let (rows, rhs, flipped) = build_system(&a.flat(), &float_columns(r));
    let res = phase_one(&rows, &rhs);
    if res.objective <= FEAS_TOL {
        checked_certificate(a, r, &res.x, FEAS_TOL).map(Separability::Feasible)
    } else if res.objective > DEGENERACY_TOL {
        checked_functional(a, r, functional_from_multipliers(&res.y, &flipped)).map(Separability::Infeasible)
    } else {
        None
    }
}

fn solve_exact(a: &PauliCoeffs2Q, r: f64) -> Result<Separability> {
    let rr = rationalize(r, RATIONAL_DEN);
    let target: [BigRational; 16] = a.flat().map(|v| rationalize(v, RATIONAL_DEN));
    let columns: Vec<[BigRational; 16]> = (0..NUM_PAIRS)
        .map(|k| {
            let (u, v) = (vertex_from_index(k / 8).bloch, vertex_from_index(k % 8).bloch);
            let left = [1.0, u[0], u[1], u[2]];
            let right = [1.0, v[0], v[1], v[2]];
            std::array::from_fn(|c| {
                let (i, j) = (c / 4, c % 4);
                let mut e = BigRational::from_integer(((left[i] * right[j]) as i64).into());
                for _ in 0..(usize::from(i != 0) + usize::from(j != 0)) {
                    e *= rr.clone();
                }
                e
            })
        })
        .collect();
    let (rows, rhs, flipped) = build_system(&target, &columns);
    let res = phase_one(&rows, &rhs);
    if res.objective.is_zero() {
        // weights reproduce the rationalized target exactly; widen by the rationalization error
        let x: Vec<f64> = res.x.iter().map(LpScalar::to_f64).collect();
        let rounding = rationalization_error(a, r, &target, &rr);
        checked_certificate(a, r, &x, FEAS_TOL + 4.0 * rounding)
            .map(Separability::Feasible)
            .ok_or_else(|| Error::LpNumerical("exact primal weights fail verification on the original input".into()))
    } else {
        // The exact violation is taken from the rationalized target, which may sit
        // within rounding of a polytope face when the original input does.
        let y: Vec<f64> = res.y.iter().map(LpScalar::to_f64).collect();
        let scale = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let f = BellFunctional {
            dual: functional_from_multipliers(&y, &flipped),
            violation: res.objective.to_f64() / scale,
        };
        if f.violation > 0.0 && f.min_over_vertices(r) >= -FEAS_TOL {
            Ok(Separability::Infeasible(f))
        } else {
            Err(Error::LpNumerical("exact dual functional fails verification on the vertex products".into()))
        }
    }
}

/// Largest coefficient shift caused by rationalizing the target and the vertex scale.
fn rationalization_error(a: &PauliCoeffs2Q, r: f64, target: &[BigRational; 16], rr: &BigRational) -> f64 {
    let dt = a
        .flat()
        .iter()
        .zip(target)
        .map(|(v, q)| (v - q.to_f64()).abs())
        .fold(0.0, f64::max);
    let dr = (r - rr.to_f64()).abs();
    dt + 2.0 * r.max(1.0) * dr
}

/// Recomputes the mixture and compares coefficient-wise; independent of the LP.
pub fn verify_certificate(cert: &LhvCertificate, a: &PauliCoeffs2Q, r: f64, tol: f64) -> bool {
    if cert.weights.len() != NUM_PAIRS || cert.weights.iter().any(|&w| !(w >= -tol)) {
        return false;
    }
    let total: f64 = cert.weights.iter().sum();
    if (total - 1.0).abs() > tol {
        return false;
    }
    let scaled = LhvCertificate { r, ..cert.clone() };
    scaled.mixture().max_abs_diff(a) <= tol
}

/// All 36 Pauli-pair probabilities of `T_R⁻¹⊗T_R⁻¹(A)` are nonnegative.
pub fn positive_for_pauli(a: &PauliCoeffs2Q, r: f64) -> bool {
    let Ok(un) = rescale2(a, 1.0 / r) else {
        return false;
    };
    min_pauli_probability(&un) >= -POSITIVITY_TOL
}

pub fn min_pauli_probability(a: &PauliCoeffs2Q) -> f64 {
    all_pair_probabilities(a).into_iter().map(|(_, p)| p).fold(f64::INFINITY, f64::min)
}

/// Positive and PPT, which for two qubits is exactly separability.
pub fn quantum_separable_2q(a: &PauliCoeffs2Q) -> bool {
    let Ok(lo) = min_eigenvalue(&a.to_dense()) else {
        return false;
    };
    let Ok(lo_pt) = min_eigenvalue(&partial_transpose(a).to_dense()) else {
        return false;
    };
    lo >= -POSITIVITY_TOL && lo_pt >= -POSITIVITY_TOL
}

/// One target/certificate pair inside a decomposition item.
#[derive(Debug, Clone)]
pub struct Appendix1Check {
    pub label: &'static str,
    pub target: PauliCoeffs2Q,
    pub certificate: LhvCertificate,
}

#[derive(Debug, Clone)]
pub struct Appendix1Item {
    pub index: usize,
    pub name: &'static str,
    pub checks: Vec<Appendix1Check>,
    /// Why the decomposition has negative weights at the requested parameter.
    pub invalid_reason: Option<String>,
}

impl Appendix1Item {
    /// Largest coefficient residual over the checks, or `None` if some check fails at `tol`.
    pub fn verify(&self, tol: f64) -> Option<f64> {
        let mut worst = 0.0f64;
        for c in &self.checks {
            if !verify_certificate(&c.certificate, &c.target, 1.0, tol) {
                return None;
            }
            worst = worst.max(c.certificate.mixture().max_abs_diff(&c.target));
        }
        Some(worst)
    }
}

fn signs_eq(v: &[f64; 3], s: [f64; 3]) -> bool {
    v.iter().zip(s).all(|(a, b)| *a == b)
}

/// Certificate 2 pattern: `u = v = ±(1,-1,·)` with free z components.
pub fn cert_xy_anti() -> LhvCertificate {
    LhvCertificate::uniform(1.0, |u, v| {
        u[0] == v[0] && u[1] == v[1] && u[0] == -u[1]
    })
}

/// Certificate 3 pattern: `u = (-q, -p, s)`, `v = (p, q, r)`.
pub fn cert_xy_swap() -> LhvCertificate {
    LhvCertificate::uniform(1.0, |u, v| u[0] == -v[1] && u[1] == -v[0])
}

fn ones() -> BlochOp {
    BlochOp::new([1.0, 1.0, 1.0])
}

/// All seven vertex-pair decompositions at the threshold parameters
/// `p = 1 - 1/√2` (dephasing) and `p = 2 - √2` (depolarizing).
pub fn appendix1_certificates() -> Vec<Appendix1Item> {
    appendix1_certificates_at(1.0 - std::f64::consts::FRAC_1_SQRT_2, 2.0 - std::f64::consts::SQRT_2)
}

/// The decompositions with items 6 and 7 built at the given noise rates.
///
/// Items 6 and 7 are expanded down to the 64 weights even outside their validity
/// region, where some weights are negative and verification fails.
pub fn appendix1_certificates_at(p_dephase: f64, p_depol: f64) -> Vec<Appendix1Item> {
    const ALL: [f64; 3] = [1.0, 1.0, 1.0];
    const NEG: [f64; 3] = [-1.0, -1.0, -1.0];
    const MMP: [f64; 3] = [-1.0, -1.0, 1.0];
    let plus = LhvCertificate::vertex_pair(0, 0, 1.0);

    let c1 = LhvCertificate::uniform(1.0, |u, v| (signs_eq(u, ALL) && signs_eq(v, ALL)) || (signs_eq(u, NEG) && signs_eq(v, NEG)));
    let t1 = PauliCoeffs2Q::new([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 1.0, 1.0],
        [0.0, 1.0, 1.0, 1.0],
        [0.0, 1.0, 1.0, 1.0],
    ]);

    let c2 = cert_xy_anti();
    let t2 = PauliCoeffs2Q::new([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, -1.0, 0.0],
        [0.0, -1.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
    ]);

    let c3 = cert_xy_swap();
    let t3 = PauliCoeffs2Q::new([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, -1.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
    ]);

    let third = 1.0 / 3.0;
    let c4 = LhvCertificate::combine(&[(third, &plus), (2.0 * third, &c3)]);
    let t4 = pipeline(&ones(), &ones(), 1.0, &NoiseModel::JointDepol(2.0 * third)).expect("valid noise");

    let c5a = LhvCertificate::uniform(1.0, |u, v| (signs_eq(u, ALL) || signs_eq(u, MMP)) && signs_eq(v, ALL));
    let t5a = PauliCoeffs2Q::new([
        [1.0, 1.0, 1.0, 1.0],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [1.0, 1.0, 1.0, 1.0],
    ]);
    let c5b = LhvCertificate::uniform(1.0, |u, v| signs_eq(u, ALL) && (signs_eq(v, ALL) || signs_eq(v, MMP)));
    let t5b = PauliCoeffs2Q::new([
        [1.0, 0.0, 0.0, 1.0],
        [1.0, 0.0, 0.0, 1.0],
        [1.0, 0.0, 0.0, 1.0],
        [1.0, 0.0, 0.0, 1.0],
    ]);

    // item 6: (0,0,1)⊗(0,0,1), both 5's, and certificate 2 with both z components fixed to +1
    let s6 = 1.0 - 2.0 * p_dephase;
    let c0_6 = 1.0 - 2.0 * s6 - s6 * s6;
    let zz = LhvCertificate::uniform(1.0, |u, v| u[2] == 1.0 && v[2] == 1.0);
    let c2z = LhvCertificate::uniform(1.0, |u, v| u[2] == 1.0 && v[2] == 1.0 && u[0] == v[0] && u[1] == v[1] && u[0] == -u[1]);
    let c6 = LhvCertificate::combine(&[(c0_6, &zz), (s6, &c5a), (s6, &c5b), (s6 * s6, &c2z)]);
    let t6 = pipeline(&ones(), &ones(), 1.0, &NoiseModel::LocalDephase(p_dephase.clamp(0.0, 1.0))).expect("valid noise");
    let invalid6 = if !(0.0..=0.5).contains(&p_dephase) {
        Some(format!("dephasing rate {p_dephase} outside [0, 1/2]"))
    } else if c0_6 < 0.0 {
        Some(format!("1-2(1-2p)-(1-2p)^2 = {c0_6:.3e} < 0"))
    } else {
        None
    };

    // item 7: maximally mixed, the two marginal-only terms, and three copies of certificate 4
    let s7 = 1.0 - p_depol;
    let c0_7 = 1.0 - 2.0 * s7 - s7 * s7;
    let mixed = LhvCertificate::uniform(1.0, |_, _| true);
    let v_only = LhvCertificate::uniform(1.0, |_, v| signs_eq(v, ALL));
    let u_only = LhvCertificate::uniform(1.0, |u, _| signs_eq(u, ALL));
    let c7 = LhvCertificate::combine(&[(c0_7, &mixed), (s7 - s7 * s7, &v_only), (s7 - s7 * s7, &u_only), (3.0 * s7 * s7, &c4)]);
    let t7 = pipeline(&ones(), &ones(), 1.0, &NoiseModel::LocalDepol(p_depol.clamp(0.0, 1.0))).expect("valid noise");
    let invalid7 = if !(0.0..=1.0).contains(&p_depol) {
        Some(format!("depolarizing rate {p_depol} outside [0, 1]"))
    } else if c0_7 < 0.0 {
        Some(format!("1-2(1-p)-(1-p)^2 = {c0_7:.3e} < 0"))
    } else {
        None
    };

    let single = |label, target, certificate| vec![Appendix1Check { label, target, certificate }];
    vec![
        Appendix1Item { index: 1, name: "correlated all-ones", checks: single("1", t1, c1), invalid_reason: None },
        Appendix1Item { index: 2, name: "XY anti-correlated", checks: single("2", t2, c2), invalid_reason: None },
        Appendix1Item { index: 3, name: "XY swapped", checks: single("3", t3, c3), invalid_reason: None },
        Appendix1Item { index: 4, name: "joint depolarizing", checks: single("4", t4, c4), invalid_reason: None },
        Appendix1Item {
            index: 5,
            name: "dephasing building blocks",
            checks: vec![
                Appendix1Check { label: "5a", target: t5a, certificate: c5a },
                Appendix1Check { label: "5b", target: t5b, certificate: c5b },
            ],
            invalid_reason: None,
        },
        Appendix1Item { index: 6, name: "local dephasing", checks: single("6", t6, c6), invalid_reason: invalid6 },
        Appendix1Item { index: 7, name: "local depolarizing", checks: single("7", t7, c7), invalid_reason: invalid7 },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::csign;

    fn bell() -> PauliCoeffs2Q {
        PauliCoeffs2Q::new([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ])
    }

    fn bell_certificate() -> LhvCertificate {
        LhvCertificate::uniform(1.0, |u, v| u[0] == v[0] && u[1] == -v[1] && u[2] == v[2])
    }

    #[test]
    fn bell_state_is_cube_separable() {
        assert!(cube_separable(&bell(), 1.0).unwrap().is_feasible());
        let cert = bell_certificate();
        assert_eq!(cert.support().len(), 8);
        assert!(verify_certificate(&cert, &bell(), 1.0, 1e-12));
        let mut bad = cert.clone();
        let (u, v, _) = bad.support()[0];
        bad.weights[pair_index(u, v)] += 0.1;
        assert!(!verify_certificate(&bad, &bell(), 1.0, 1e-12));
    }

    #[test]
    fn vertex_products_are_feasible() {
        for k in [0usize, 9, 37, 63] {
            let a = vertex_product(k, 1.0);
            let Separability::Feasible(c) = cube_separable(&a, 1.0).unwrap() else { panic!() };
            assert!((c.weights[k] - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn noiseless_csign_is_not_separable() {
        let v = BlochOp::new([1.0, 1.0, 1.0]);
        let a = csign(&product(&v, &v));
        assert!(!positive_for_pauli(&a, 1.0));
        let Separability::Infeasible(f) = cube_separable(&a, 1.0).unwrap() else { panic!() };
        assert!(f.violation > 0.0);
        assert!(f.min_over_vertices(1.0) >= -1e-9);
    }

    #[test]
    fn positivity_examples() {
        assert!(positive_for_pauli(&PauliCoeffs2Q::identity(), 1.0));
        let u = BlochOp::new([1.0, 0.0, 0.0]);
        let v = BlochOp::new([0.0, 0.0, 1.0]);
        let out = pipeline(&u, &v, 1.2, &NoiseModel::LocalDephase(0.3)).unwrap();
        assert!(!positive_for_pauli(&out, 1.0));
    }

    #[test]
    fn quantum_separability_examples() {
        assert!(!quantum_separable_2q(&bell()));
        let r = 1.0 / 3f64.sqrt();
        let noisy = crate::gates::apply_noise(&bell(), &NoiseModel::LocalDepol(1.0 - r)).unwrap();
        assert!(quantum_separable_2q(&noisy));
        let worse = crate::gates::apply_noise(&bell(), &NoiseModel::LocalDepol(1.0 - r - 1e-3)).unwrap();
        assert!(!quantum_separable_2q(&worse));
        let prod = product(&BlochOp::new([0.6, 0.0, 0.8]), &BlochOp::new([0.0, -1.0, 0.0]));
        assert!(quantum_separable_2q(&prod));
    }

    #[test]
    fn certificate_text_round_trip() {
        let c = bell_certificate();
        let text = c.to_text();
        assert_eq!(text.lines().count(), 66);
        let back = LhvCertificate::from_text(&text).unwrap();
        assert_eq!(back, c);
        assert!(LhvCertificate::from_text("000 000 1\n").is_err());
        assert!(LhvCertificate::from_text("# R 1\n000 0x0 1\n").is_err());
    }

    #[test]
    fn appendix1_verifies() {
        for item in appendix1_certificates() {
            let res = item.verify(1e-12);
            assert!(res.is_some(), "item {}", item.index);
            assert!(res.unwrap() < 1e-12);
        }
    }

    #[test]
    fn appendix1_item4_matches_display() {
        let items = appendix1_certificates();
        let t = &items[3].checks[0].target;
        let third = 1.0 / 3.0;
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == 0 && j == 0 {
                    1.0
                } else if (i, j) == (1, 2) || (i, j) == (2, 1) {
                    -third
                } else {
                    third
                };
                assert!((t.get(i, j) - expect).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn appendix1_items_fail_outside_region() {
        let p6 = 1.0 - std::f64::consts::FRAC_1_SQRT_2;
        let p7 = 2.0 - std::f64::consts::SQRT_2;
        let items = appendix1_certificates_at(p6 - 1e-3, p7 - 1e-3);
        assert!(items[5].verify(1e-12).is_none());
        assert!(items[5].invalid_reason.is_some());
        assert!(items[6].verify(1e-12).is_none());
        let items = appendix1_certificates_at(p6 + 1e-3, p7 + 1e-3);
        assert!(items[5].verify(1e-12).is_some());
        assert!(items[6].verify(1e-12).is_some());
    }

    #[test]
    fn lp_agrees_with_exact_on_random_mixtures() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let mut w: Vec<f64> = (0..NUM_PAIRS).map(|_| rng.random::<f64>().powi(4)).collect();
            let s: f64 = w.iter().sum();
            w.iter_mut().for_each(|x| *x /= s);
            let base = LhvCertificate { weights: w, r: 1.0, tolerance_used: FEAS_TOL }.mixture();
            let factors: Vec<f64> = (0..16).map(|_| rng.random_range(0.8..1.6)).collect();
            let a = base.map(|i, j, v| if i + j == 0 { v } else { v * factors[4 * i + j] });
            let auto = cube_separable(&a, 1.0).unwrap();
            let exact = cube_separable_with(&a, 1.0, LpMode::ExactOnly).unwrap();
            assert_eq!(auto.is_feasible(), exact.is_feasible());
        }
    }
}
