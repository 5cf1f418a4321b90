//! Noise thresholds by bisection, tradeoff curves over the rescaling factor,
//! closed-form positivity bounds, and the dephasing impossibility check.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use crate::dense::min_eigenvalue;
use crate::error::{Error, Result};
use crate::gates::{pipeline, NoiseFamily, NoiseModel};
use crate::pauli::{BlochOp, PauliCoeffs2Q};
use crate::separability::{cube_separable, min_pauli_probability, positive_for_pauli, quantum_separable_2q};
use crate::state_spaces::{vertex_from_index, SpaceKind, StateSpaceSpec};

pub const BISECTION_MAX_ITER: usize = 60;
pub const BISECTION_TOL: f64 = 1e-7;
pub const SPHERE_GRID_DEFAULT: usize = 60;
/// Refinement spans one coarse cell either side at this many times the resolution.
pub const REFINE_FACTOR: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    CubeSeparable,
    QuantumSeparable,
    PauliPositive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputPolicy {
    /// The single input `(1,1,1) ⊗ (1,1,1)`.
    WorstVertex,
    /// All 64 vertex products.
    AllVertices,
    /// Pure states `(cos θ, 0, sin θ)` on an `n × n` grid over `[0, π/2]²`.
    SphereGrid(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdQuery {
    pub family: NoiseFamily,
    pub space: StateSpaceSpec,
    pub criterion: Criterion,
    pub input_policy: InputPolicy,
}

impl ThresholdQuery {
    /// LP on vertices for cubes, PPT on a pure-state grid for spheres.
    pub fn standard(family: NoiseFamily, space: StateSpaceSpec) -> Self {
        match space.kind {
            SpaceKind::Cube => Self {
                family,
                space,
                criterion: Criterion::CubeSeparable,
                input_policy: InputPolicy::WorstVertex,
            },
            SpaceKind::Sphere => Self {
                family,
                space,
                criterion: Criterion::QuantumSeparable,
                input_policy: InputPolicy::SphereGrid(SPHERE_GRID_DEFAULT),
            },
        }
    }

    fn validate(&self) -> Result<()> {
        if matches!(self.input_policy, InputPolicy::SphereGrid(_)) && self.space.kind != SpaceKind::Sphere {
            return Err(Error::InvalidParameter("sphere grid inputs require a sphere state space".into()));
        }
        if let InputPolicy::SphereGrid(n) = self.input_policy {
            if n < 2 {
                return Err(Error::InvalidParameter("sphere grid needs at least 2 points per axis".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold {
    pub lambda_star: f64,
    /// Grid angles `(θ, φ)` of the input pair that needed the most noise.
    pub argmax: Option<(f64, f64)>,
}

/// Pure state `(cos θ, 0, sin θ)` in the X–Z plane.
pub fn xz_state(theta: f64) -> BlochOp {
    BlochOp::new([theta.cos(), 0.0, theta.sin()])
}

fn criterion_holds(criterion: Criterion, out: &PauliCoeffs2Q) -> Result<bool> {
    Ok(match criterion {
        Criterion::CubeSeparable => cube_separable(out, 1.0)?.is_feasible(),
        Criterion::QuantumSeparable => quantum_separable_2q(out),
        Criterion::PauliPositive => positive_for_pauli(out, 1.0),
    })
}

fn pair_holds(q: &ThresholdQuery, u: &BlochOp, v: &BlochOp, x: f64) -> Result<bool> {
    let out = pipeline(u, v, q.space.r(), &q.family.with(x))?;
    criterion_holds(q.criterion, &out)
}

fn vertex_inputs(policy: InputPolicy) -> Vec<(BlochOp, BlochOp)> {
    match policy {
        InputPolicy::WorstVertex => vec![(vertex_from_index(0), vertex_from_index(0))],
        _ => (0..64).map(|k| (vertex_from_index(k / 8), vertex_from_index(k % 8))).collect(),
    }
}

/// Smallest `x` in `[lo, hi]` with `pred(x)` true, for `pred` monotone false → true.
pub fn bisect(lo: f64, hi: f64, tol: f64, mut pred: impl FnMut(f64) -> Result<bool>) -> Result<f64> {
    let (at_lo, at_hi) = (pred(lo)?, pred(hi)?);
    if at_lo || !at_hi {
        return Err(Error::NotBracketed { low: lo, high: hi, at_low: at_lo, at_high: at_hi });
    }
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..BISECTION_MAX_ITER {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if pred(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Root of a continuous `f` with a sign change on `[lo, hi]`.
pub fn find_root(lo: f64, hi: f64, tol: f64, f: impl Fn(f64) -> f64) -> Result<f64> {
    let (flo, fhi) = (f(lo), f(hi));
    if flo.signum() == fhi.signum() {
        return Err(Error::NotBracketed { low: lo, high: hi, at_low: flo > 0.0, at_high: fhi > 0.0 });
    }
    let target = fhi > 0.0;
    bisect(lo, hi, tol, |x| Ok((f(x) > 0.0) == target))
}

/// Minimal noise making the criterion hold for every input the policy selects.
pub fn min_noise(q: &ThresholdQuery, tol: f64) -> Result<Threshold> {
    q.validate()?;
    let max = q.family.max_param();
    match q.input_policy {
        InputPolicy::WorstVertex | InputPolicy::AllVertices => {
            let inputs = vertex_inputs(q.input_policy);
            let lambda_star = bisect(0.0, max, tol, |x| {
                let verdicts: Result<Vec<bool>> = inputs.par_iter().map(|(u, v)| pair_holds(q, u, v, x)).collect();
                Ok(verdicts?.into_iter().all(|b| b))
            })?;
            Ok(Threshold { lambda_star, argmax: None })
        }
        InputPolicy::SphereGrid(n) => sphere_grid(q, n, tol),
    }
}

fn sphere_grid(q: &ThresholdQuery, n: usize, tol: f64) -> Result<Threshold> {
    let max = q.family.max_param();
    let mut best = 0.0;
    let mut argmax = None;
    let scan = |thetas: &[f64], phis: &[f64], best: &mut f64, argmax: &mut Option<(f64, f64)>| -> Result<()> {
        for &t in thetas {
            for &f in phis {
                let (u, v) = (xz_state(t), xz_state(f));
                if pair_holds(q, &u, &v, *best)? {
                    continue;
                }
                *best = bisect(*best, max, tol, |x| pair_holds(q, &u, &v, x))?;
                *argmax = Some((t, f));
            }
        }
        Ok(())
    };
    let h = FRAC_PI_2 / (n - 1) as f64;
    let coarse: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
    scan(&coarse, &coarse, &mut best, &mut argmax)?;
    if let Some((t0, f0)) = argmax {
        let fine = |c: f64| -> Vec<f64> {
            (0..=2 * REFINE_FACTOR)
                .map(|k| c - h + k as f64 * h / REFINE_FACTOR as f64)
                .filter(|x| (0.0..=FRAC_PI_2).contains(x))
                .collect()
        };
        scan(&fine(t0), &fine(f0), &mut best, &mut argmax)?;
    }
    Ok(Threshold { lambda_star: best, argmax })
}

/// `√(1+R²) − R`: the X⊗Y-type positivity bound on the local depolarizing scale `r`.
pub fn bound_xy(r: f64) -> f64 {
    (1.0 + r * r).sqrt() - r
}

/// `(R − 1 + √((R−1)² + 4/R)) / (2/R)`: the X⊗Z-type bound on `r`.
pub fn bound_xz(r: f64) -> f64 {
    (r - 1.0 + ((r - 1.0).powi(2) + 4.0 / r).sqrt()) / (2.0 / r)
}

/// `1/(2R+1)`: joint depolarizing bound on `r = 1 − λ`.
pub fn bound_tdb1(r: f64) -> f64 {
    1.0 / (2.0 * r + 1.0)
}

/// `1/(1 + 1/R − R)`.
pub fn bound_tdb2(r: f64) -> f64 {
    1.0 / (1.0 + 1.0 / r - r)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticBounds {
    /// Upper bounds on the coefficient scale `r`; noise is `1 − r`.
    pub bounds: Vec<(&'static str, f64)>,
}

impl AnalyticBounds {
    /// The tightest bound, i.e. the smallest admissible `r`.
    pub fn active(&self) -> Option<(&'static str, f64)> {
        self.bounds.iter().copied().min_by(|a, b| a.1.total_cmp(&b.1))
    }

    /// Noise `1 − r` needed at the active bound.
    pub fn noise(&self) -> Option<f64> {
        self.active().map(|(_, r)| 1.0 - r)
    }
}

/// Closed-form positivity bounds for rescaled cubes; empty where none are known.
pub fn analytic_bound(family: NoiseFamily, kind: SpaceKind, r: f64) -> Result<AnalyticBounds> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidParameter(format!("rescaling factor must be positive, got {r}")));
    }
    let bounds = match (family, kind) {
        (NoiseFamily::LocalDepol, SpaceKind::Cube) => vec![("xy", bound_xy(r)), ("xz", bound_xz(r))],
        (NoiseFamily::JointDepol, SpaceKind::Cube) => vec![("tdb1", bound_tdb1(r)), ("tdb2", bound_tdb2(r))],
        _ => Vec::new(),
    };
    Ok(AnalyticBounds { bounds })
}

/// Where the xy and xz bounds cross: returns `(R, r)`.
pub fn xy_xz_intersection() -> Result<(f64, f64)> {
    let r = find_root(0.3, 0.9, 1e-12, |r| bound_xy(r) - bound_xz(r))?;
    Ok((r, bound_xy(r)))
}

/// Where tdb1 and tdb2 cross: `3R² = 1`, so `(1/√3, √3/(2+√3))`.
pub fn tdb_intersection() -> (f64, f64) {
    let r = 1.0 / 3f64.sqrt();
    (r, bound_tdb1(r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Lp,
    Ppt,
    AnalyticBound,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Lp => "LP",
            Method::Ppt => "PPT",
            Method::AnalyticBound => "AnalyticBound",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub r: f64,
    /// `None` marks a gap where the point failed; see `error`.
    pub lambda_star: Option<f64>,
    pub achieved_by: Method,
    pub error: Option<String>,
}

/// `steps` evenly spaced points from `r_min` to `r_max` inclusive, evaluated in parallel.
pub fn curve(q: &ThresholdQuery, r_min: f64, r_max: f64, steps: usize) -> Result<Vec<CurvePoint>> {
    if !(r_min > 0.0 && r_max >= r_min) || steps == 0 {
        return Err(Error::InvalidParameter(format!(
            "need 0 < r_min <= r_max and steps >= 1, got {r_min}, {r_max}, {steps}"
        )));
    }
    let method = match q.criterion {
        Criterion::CubeSeparable => Method::Lp,
        Criterion::QuantumSeparable => Method::Ppt,
        Criterion::PauliPositive => Method::AnalyticBound,
    };
    let grid: Vec<f64> = if steps == 1 {
        vec![r_min]
    } else {
        (0..steps).map(|i| r_min + (r_max - r_min) * i as f64 / (steps - 1) as f64).collect()
    };
    let points = grid
        .into_par_iter()
        .map(|r| {
            let res = StateSpaceSpec::new(q.space.kind, r).and_then(|space| {
                let point_q = ThresholdQuery { space, ..*q };
                min_noise(&point_q, BISECTION_TOL)
            });
            match res {
                Ok(t) => CurvePoint { r, lambda_star: Some(t.lambda_star), achieved_by: method, error: None },
                Err(e) => CurvePoint { r, lambda_star: None, achieved_by: method, error: Some(e.to_string()) },
            }
        })
        .collect();
    Ok(points)
}

/// Decimal rendering with `sig` significant digits.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i64;
    let decimals = (sig as i64 - 1 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

/// CSV with header `R,lambda_star,method`; gaps leave `lambda_star` empty.
pub fn curve_csv(points: &[CurvePoint]) -> String {
    let mut s = String::from("R,lambda_star,method\n");
    for p in points {
        let l = p.lambda_star.map(|v| format_sig(v, 9)).unwrap_or_default();
        s.push_str(&format!("{},{},{}\n", format_sig(p.r, 9), l, p.achieved_by.name()));
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AchievabilityBoundary {
    pub r_star: f64,
    /// Noise `1 − r` on the key curve at `r_star`.
    pub noise: f64,
}

/// Smallest `R` at which the state sitting on the key analytic curve still has an LHV model.
///
/// The key curve is xy for local depolarizing and tdb1 for joint depolarizing.
/// Below the crossing with the other bound the key curve is not even positive.
pub fn lhv_achievability_boundary(family: NoiseFamily) -> Result<AchievabilityBoundary> {
    let (lo, key): (f64, fn(f64) -> f64) = match family {
        NoiseFamily::LocalDepol => (0.3, bound_xy),
        NoiseFamily::JointDepol => (0.4, bound_tdb1),
        NoiseFamily::LocalDephase => {
            return Err(Error::InvalidParameter("local dephasing has no rescaled-cube bound".into()));
        }
    };
    let ones = vertex_from_index(0);
    let on_curve = |r: f64| -> Result<bool> {
        let out = pipeline(&ones, &ones, r, &family.with(1.0 - key(r)))?;
        Ok(cube_separable(&out, 1.0)?.is_feasible())
    };
    let r_star = bisect(lo, 1.0, BISECTION_TOL, on_curve)?;
    Ok(AchievabilityBoundary { r_star, noise: 1.0 - key(r_star) })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DephasingVerdict {
    Valid,
    /// A negative Born probability (cube) or eigenvalue (sphere).
    Invalid { witness: f64 },
}

/// Positivity of the dephased CSIGN output on `(I+X)/2 ⊗ (I+Z)/2` at rescaling `R`.
pub fn dephasing_impossibility(kind: SpaceKind, r: f64, p: f64) -> Result<DephasingVerdict> {
    if !(0.0..=0.5).contains(&p) {
        return Err(Error::InvalidParameter(format!("dephasing rate must lie in [0,1/2], got {p}")));
    }
    let u = BlochOp::new([1.0, 0.0, 0.0]);
    let v = BlochOp::new([0.0, 0.0, 1.0]);
    let out = pipeline(&u, &v, r, &NoiseModel::LocalDephase(p))?;
    let witness = match kind {
        SpaceKind::Cube => min_pauli_probability(&out),
        SpaceKind::Sphere => min_eigenvalue(&out.to_dense())?,
    };
    Ok(if witness < -1e-12 { DephasingVerdict::Invalid { witness } } else { DephasingVerdict::Valid })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_consistency_at_unit_scale() {
        assert!((bound_xy(1.0) - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        assert!((bound_tdb1(1.0) - 1.0 / 3.0).abs() < 1e-15);
        let b = analytic_bound(NoiseFamily::JointDepol, SpaceKind::Cube, 1.0).unwrap();
        assert_eq!(b.active().unwrap().0, "tdb1");
        assert!(analytic_bound(NoiseFamily::LocalDephase, SpaceKind::Cube, 1.0).unwrap().active().is_none());
    }

    #[test]
    fn intersections() {
        let (r, b) = xy_xz_intersection().unwrap();
        assert!((1.0 - b - 0.392919).abs() < 1e-4);
        assert!((1.0 - r - 0.479927).abs() < 1e-4);
        let (r, b) = tdb_intersection();
        assert!((bound_tdb2(r) - b).abs() < 1e-12);
        assert!((b - 3f64.sqrt() / (2.0 + 3f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn xy_bound_decreases_in_r() {
        let mut prev = f64::INFINITY;
        for k in 1..100 {
            let v = bound_xy(k as f64 * 0.05);
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn bisect_reports_bad_bracket() {
        assert!(matches!(bisect(0.0, 1.0, 1e-6, |_| Ok(true)), Err(Error::NotBracketed { .. })));
        assert!(matches!(bisect(0.0, 1.0, 1e-6, |_| Ok(false)), Err(Error::NotBracketed { .. })));
        let x = bisect(0.0, 1.0, 1e-9, |x| Ok(x >= 0.3)).unwrap();
        assert!((x - 0.3).abs() < 1e-8);
    }

    #[test]
    fn sig_format() {
        assert_eq!(format_sig(0.666666666666, 9), "0.666666667");
        assert_eq!(format_sig(1.5, 9), "1.50000000");
        assert_eq!(format_sig(123.456, 4), "123.5");
    }

    #[test]
    fn dephasing_examples() {
        let DephasingVerdict::Invalid { witness } = dephasing_impossibility(SpaceKind::Cube, 1.2, 0.3).unwrap() else {
            panic!()
        };
        let expect = (1.0 - 0.6) * (1.0 / 1.2 - 1.2) / 4.0;
        assert!((witness - expect).abs() < 1e-12);
        assert_eq!(dephasing_impossibility(SpaceKind::Cube, 1.0, 0.2).unwrap(), DephasingVerdict::Valid);
        assert_eq!(dephasing_impossibility(SpaceKind::Sphere, 1.7, 0.5).unwrap(), DephasingVerdict::Valid);
        assert!(matches!(
            dephasing_impossibility(SpaceKind::Sphere, 0.8, 0.1).unwrap(),
            DephasingVerdict::Invalid { .. }
        ));
    }
}
