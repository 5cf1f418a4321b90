//! Phase-one dense simplex for feasibility of `A x = b, x ≥ 0`.
//!
//! The solver is generic over [`LpScalar`] so the same tableau code runs in
//! `f64` and in exact [`BigRational`] arithmetic. Bland's rule is used for
//! both entering and leaving variables.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub trait LpScalar:
    Clone
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Magnitudes at or below this are treated as zero when pivoting.
    fn pivot_eps() -> Self;
    fn to_f64(&self) -> f64;
}

impl LpScalar for f64 {
    fn pivot_eps() -> Self {
        1e-12
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl LpScalar for BigRational {
    fn pivot_eps() -> Self {
        BigRational::zero()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Result of phase one on `A x = b` with `b ≥ 0`.
#[derive(Debug, Clone)]
pub struct PhaseOne<S> {
    /// Optimal sum of artificial variables; zero iff the system is feasible.
    pub objective: S,
    /// Values of the structural variables at the optimum.
    pub x: Vec<S>,
    /// Simplex multipliers `y` with `yᵀA ≤ 0` and `yᵀb = objective`.
    pub y: Vec<S>,
    pub pivots: usize,
}

/// Runs phase one. Rows of `a` must have `b_i ≥ 0`.
pub fn phase_one<S: LpScalar>(a: &[Vec<S>], b: &[S]) -> PhaseOne<S> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let width = n + m + 1;
    let rhs = n + m;
    let eps = S::pivot_eps();

    let mut t: Vec<Vec<S>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        debug_assert!(b[i] >= S::zero());
        let mut r = Vec::with_capacity(width);
        r.extend(row.iter().cloned());
        r.extend((0..m).map(|k| if k == i { S::one() } else { S::zero() }));
        r.push(b[i].clone());
        t.push(r);
    }
    // reduced costs: structural -Σ_i a_ij, artificial 0, last entry -Σ b
    let mut cost = vec![S::zero(); width];
    for row in &t {
        for j in 0..n {
            cost[j] = cost[j].clone() - row[j].clone();
        }
        cost[rhs] = cost[rhs].clone() - row[rhs].clone();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let neg_eps = -eps.clone();
    let mut pivots = 0;

    loop {
        let Some(q) = (0..n + m).find(|&j| cost[j] < neg_eps) else {
            break;
        };
        let mut leave: Option<(usize, S)> = None;
        for i in 0..m {
            if t[i][q] > eps {
                let ratio = t[i][rhs].clone() / t[i][q].clone();
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((p, _)) = leave else {
            // phase one is bounded below by zero, so this only happens through roundoff
            break;
        };
        pivot(&mut t, &mut cost, p, q);
        basis[p] = q;
        pivots += 1;
    }

    let mut x = vec![S::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][rhs].clone();
        }
    }
    let y = (0..m).map(|k| S::one() - cost[n + k].clone()).collect();
    PhaseOne {
        objective: -cost[rhs].clone(),
        x,
        y,
        pivots,
    }
}

fn pivot<S: LpScalar>(t: &mut [Vec<S>], cost: &mut [S], p: usize, q: usize) {
    let piv = t[p][q].clone();
    for v in t[p].iter_mut() {
        *v = v.clone() / piv.clone();
    }
    let prow = t[p].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == p || row[q].is_zero() {
            continue;
        }
        let f = row[q].clone();
        for (v, pv) in row.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v = v.clone() - f.clone() * pv.clone();
            }
        }
    }
    let f = cost[q].clone();
    if !f.is_zero() {
        for (v, pv) in cost.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v = v.clone() - f.clone() * pv.clone();
            }
        }
    }
}

/// Best rational approximation with denominator at most `max_den`, by continued fractions.
pub fn rationalize(x: f64, max_den: i64) -> BigRational {
    assert!(x.is_finite());
    let sign = if x < 0.0 { -1 } else { 1 };
    let mut v = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    for _ in 0..64 {
        let a = v.floor();
        if a > 1e15 {
            break;
        }
        let ai = a as i128;
        let (p2, q2) = (ai * p1 + p0, ai * q1 + q0);
        if q2 > max_den as i128 {
            // semiconvergent check between the last convergent and the bound
            let k = (max_den as i128 - q0) / q1;
            let (ps, qs) = (k * p1 + p0, k * q1 + q0);
            let err_s = (ps as f64 / qs as f64 - x.abs()).abs();
            let err_1 = (p1 as f64 / q1 as f64 - x.abs()).abs();
            if k > 0 && err_s < err_1 {
                p1 = ps;
                q1 = qs;
            }
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = v - a;
        if frac < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    BigRational::new(BigInt::from(sign * p1), BigInt::from(q1))
}
