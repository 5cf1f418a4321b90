//! One- and two-qubit operators in the Pauli product basis.
//!
//! Axis indices are fixed as `(I, X, Y, Z) = (0, 1, 2, 3)` on each side.
//! Two-qubit coefficients are stored with `A_00 = 1` for a normalized operator;
//! the global factor 1/4 is applied only when converting to a dense matrix.

use std::fmt;

use num_complex::Complex64;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Position in the `(I, X, Y, Z)` layout.
    pub fn index(self) -> usize {
        match self {
            Axis::X => 1,
            Axis::Y => 2,
            Axis::Z => 3,
        }
    }

    /// Position within a Bloch 3-vector.
    pub fn bloch_index(self) -> usize {
        self.index() - 1
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "X" | "x" => Some(Axis::X),
            "Y" | "y" => Some(Axis::Y),
            "Z" | "z" => Some(Axis::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axis::X => "X",
            Axis::Y => "Y",
            Axis::Z => "Z",
        };
        f.write_str(s)
    }
}

/// A two-outcome Pauli measurement result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }

    pub fn from_sign(s: f64) -> Self {
        if s >= 0.0 {
            Outcome::Plus
        } else {
            Outcome::Minus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Outcome::Plus => '+',
            Outcome::Minus => '-',
        }
    }
}

/// Single-qubit operator `½(a·I + b·X + c·Y + d·Z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochOp {
    pub trace_coeff: f64,
    pub bloch: [f64; 3],
}

impl BlochOp {
    /// A normalized operator (`trace_coeff = 1`) with the given Bloch vector.
    pub fn new(bloch: [f64; 3]) -> Self {
        Self { trace_coeff: 1.0, bloch }
    }

    pub fn maximally_mixed() -> Self {
        Self::new([0.0; 3])
    }

    pub fn norm(&self) -> f64 {
        self.bloch.iter().map(|b| b * b).sum::<f64>().sqrt()
    }

    pub fn component(&self, axis: Axis) -> f64 {
        self.bloch[axis.bloch_index()]
    }

    pub fn is_vertex(&self) -> bool {
        self.trace_coeff == 1.0 && self.bloch.iter().all(|&b| b == 1.0 || b == -1.0)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = pauli_matrix(0).scale(self.trace_coeff);
        for (k, &b) in self.bloch.iter().enumerate() {
            m = m.add(&pauli_matrix(k + 1).scale(b));
        }
        m.scale(0.5)
    }

    pub fn from_dense(rho: &DenseMatrix) -> Result<Self> {
        if rho.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: rho.dim() });
        }
        let coeff = |k: usize| rho.matmul(&pauli_matrix(k)).trace().re;
        Ok(Self {
            trace_coeff: coeff(0),
            bloch: [coeff(1), coeff(2), coeff(3)],
        })
    }
}

/// Dense Pauli matrix `σ_k` for `k ∈ {0,1,2,3}`.
pub fn pauli_matrix(k: usize) -> DenseMatrix {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let e = match k {
        0 => vec![one, z, z, one],
        1 => vec![z, one, one, z],
        2 => vec![z, -i, i, z],
        3 => vec![one, z, z, -one],
        _ => panic!("Pauli index {k} out of range"),
    };
    DenseMatrix::from_entries(2, e)
}

/// `σ_i ⊗ σ_j`.
pub fn pauli_product_matrix(i: usize, j: usize) -> DenseMatrix {
    pauli_matrix(i).kron(&pauli_matrix(j))
}

/// Coefficients `A_ij` of `¼ Σ A_ij σ_i ⊗ σ_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliCoeffs2Q {
    pub coeffs: [[f64; 4]; 4],
}

impl PauliCoeffs2Q {
    pub fn new(coeffs: [[f64; 4]; 4]) -> Self {
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: [[0.0; 4]; 4] }
    }

    /// The maximally mixed state: only `A_00 = 1`.
    pub fn identity() -> Self {
        let mut a = Self::zero();
        a.coeffs[0][0] = 1.0;
        a
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.coeffs[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.coeffs[i][j] = v;
    }

    /// Row-major view of the 16 coefficients.
    pub fn flat(&self) -> [f64; 16] {
        let mut out = [0.0; 16];
        for i in 0..4 {
            for j in 0..4 {
                out[4 * i + j] = self.coeffs[i][j];
            }
        }
        out
    }

    pub fn from_flat(v: &[f64; 16]) -> Self {
        let mut a = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                a.coeffs[i][j] = v[4 * i + j];
            }
        }
        a
    }

    pub fn map(&self, f: impl Fn(usize, usize, f64) -> f64) -> Self {
        let mut out = *self;
        for i in 0..4 {
            for j in 0..4 {
                out.coeffs[i][j] = f(i, j, self.coeffs[i][j]);
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|_, _, v| v * s)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.map(|i, j, v| v + other.coeffs[i][j])
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.map(|i, j, v| v - other.coeffs[i][j])
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).flat().iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Dense 4×4 operator `¼ Σ A_ij σ_i ⊗ σ_j`.
    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(4);
        for i in 0..4 {
            for j in 0..4 {
                let a = self.coeffs[i][j];
                if a != 0.0 {
                    m = m.add(&pauli_product_matrix(i, j).scale(a));
                }
            }
        }
        m.scale(0.25)
    }

    /// `A_ij = tr(ρ σ_i ⊗ σ_j)`.
    pub fn from_dense(rho: &DenseMatrix) -> Result<Self> {
        if rho.dim() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: rho.dim() });
        }
        let mut a = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                a.coeffs[i][j] = rho.matmul(&pauli_product_matrix(i, j)).trace().re;
            }
        }
        Ok(a)
    }

    /// Reduced single-qubit operator on the first side.
    pub fn first_marginal(&self) -> BlochOp {
        BlochOp {
            trace_coeff: self.coeffs[0][0],
            bloch: [self.coeffs[1][0], self.coeffs[2][0], self.coeffs[3][0]],
        }
    }

    pub fn second_marginal(&self) -> BlochOp {
        BlochOp {
            trace_coeff: self.coeffs[0][0],
            bloch: [self.coeffs[0][1], self.coeffs[0][2], self.coeffs[0][3]],
        }
    }
}

impl fmt::Display for PauliCoeffs2Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.coeffs {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>10.6}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Tensor product of two single-qubit operators in coefficient form.
pub fn product(a: &BlochOp, b: &BlochOp) -> PauliCoeffs2Q {
    let left = [a.trace_coeff, a.bloch[0], a.bloch[1], a.bloch[2]];
    let right = [b.trace_coeff, b.bloch[0], b.bloch[1], b.bloch[2]];
    let mut out = PauliCoeffs2Q::zero();
    for i in 0..4 {
        for j in 0..4 {
            out.coeffs[i][j] = left[i] * right[j];
        }
    }
    out
}

/// Born probability of outcomes `(s, t)` for the Pauli pair `p ⊗ q`.
///
/// Negative values are possible for operators that are not states.
pub fn born_probability(a: &PauliCoeffs2Q, p: Axis, s: Outcome, q: Axis, t: Outcome) -> f64 {
    let (s, t) = (s.sign(), t.sign());
    let (pi, qi) = (p.index(), q.index());
    0.25 * (a.coeffs[0][0] + s * a.coeffs[pi][0] + t * a.coeffs[0][qi] + s * t * a.coeffs[pi][qi])
}

/// All 36 Pauli-pair Born probabilities, ordered by `(p, q, s, t)`.
pub fn all_pair_probabilities(a: &PauliCoeffs2Q) -> Vec<((Axis, Outcome, Axis, Outcome), f64)> {
    let mut out = Vec::with_capacity(36);
    for p in Axis::ALL {
        for q in Axis::ALL {
            for s in Outcome::BOTH {
                for t in Outcome::BOTH {
                    out.push(((p, s, q, t), born_probability(a, p, s, q, t)));
                }
            }
        }
    }
    out
}

pub fn single_born(a: &BlochOp, axis: Axis, outcome: Outcome) -> f64 {
    0.5 * (a.trace_coeff + outcome.sign() * a.component(axis))
}

/// Partial transpose on the second qubit: `Y^T = -Y` flips the σ_Y column.
pub fn partial_transpose(a: &PauliCoeffs2Q) -> PauliCoeffs2Q {
    a.map(|_, j, v| if j == 2 { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::eigenvalues_hermitian;
    use proptest::prelude::*;

    fn bell_dense() -> DenseMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let z = Complex64::new(0.0, 0.0);
        DenseMatrix::projector(&[Complex64::new(s, 0.0), z, z, Complex64::new(s, 0.0)])
    }

    fn bell_coeffs() -> PauliCoeffs2Q {
        let mut a = PauliCoeffs2Q::identity();
        a.set(1, 1, 1.0);
        a.set(2, 2, -1.0);
        a.set(3, 3, 1.0);
        a
    }

    #[test]
    fn product_of_all_ones_vertices() {
        let v = BlochOp::new([1.0, 1.0, 1.0]);
        assert!(product(&v, &v).flat().iter().all(|&x| x == 1.0));
    }

    #[test]
    fn product_of_mixed_states() {
        let m = BlochOp::maximally_mixed();
        assert_eq!(product(&m, &m), PauliCoeffs2Q::identity());
    }

    #[test]
    fn product_matches_dense_kron() {
        let a = BlochOp::new([1.0, -1.0, 1.0]);
        let b = BlochOp::new([-1.0, 1.0, 1.0]);
        let p = product(&a, &b);
        assert_eq!(p.get(2, 3), -1.0);
        assert_eq!(p.get(1, 2), 1.0);
        let dense = a.to_dense().kron(&b.to_dense());
        assert!(p.to_dense().max_abs_diff(&dense) < 1e-15);
    }

    #[test]
    fn bell_state_expansion() {
        let a = PauliCoeffs2Q::from_dense(&bell_dense()).unwrap();
        assert!(a.max_abs_diff(&bell_coeffs()) < 1e-12);
    }

    #[test]
    fn identity_round_trip() {
        let a = PauliCoeffs2Q::from_dense(&DenseMatrix::identity(4).scale(0.25)).unwrap();
        assert!(a.max_abs_diff(&PauliCoeffs2Q::identity()) < 1e-15);
    }

    #[test]
    fn from_dense_rejects_wrong_dimension() {
        assert!(matches!(
            PauliCoeffs2Q::from_dense(&DenseMatrix::identity(2)),
            Err(Error::DimensionMismatch { expected: 4, found: 2 })
        ));
    }

    #[test]
    fn csign_like_probability_can_be_negative() {
        // CSIGN output coefficients for x=1, C=-1, z=A=1, y=B=1 (top-left corner only matters)
        let mut a = PauliCoeffs2Q::identity();
        a.set(1, 0, -1.0); // xC
        a.set(0, 1, 1.0); // zA
        a.set(1, 1, 1.0); // yB
        let p = born_probability(&a, Axis::X, Outcome::Plus, Axis::X, Outcome::Minus);
        assert_eq!(p, -0.5);
    }

    #[test]
    fn mixed_state_probabilities_quarter() {
        for (_, p) in all_pair_probabilities(&PauliCoeffs2Q::identity()) {
            assert_eq!(p, 0.25);
        }
    }

    #[test]
    fn bell_zz_probability_matches_projector() {
        let p = born_probability(&bell_coeffs(), Axis::Z, Outcome::Plus, Axis::Z, Outcome::Plus);
        let proj = DenseMatrix::diagonal(&[1.0, 0.0, 0.0, 0.0]);
        let dense = bell_dense().matmul(&proj).trace().re;
        assert!((p - 0.5).abs() < 1e-15);
        assert!((p - dense).abs() < 1e-12);
    }

    #[test]
    fn single_born_cases() {
        let v = BlochOp::new([1.0, 1.0, 1.0]);
        assert_eq!(single_born(&v, Axis::Z, Outcome::Plus), 1.0);
        assert_eq!(single_born(&BlochOp::maximally_mixed(), Axis::X, Outcome::Minus), 0.5);
        let r = 1.0 / 3f64.sqrt();
        let t = BlochOp::new([r, r, r]);
        let want = 0.5 * (1.0 + r);
        assert!((single_born(&t, Axis::X, Outcome::Plus) - want).abs() < 1e-15);
        let proj = DenseMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]);
        let dense = t.to_dense().matmul(&proj).trace().re;
        assert!((dense - want).abs() < 1e-12);
    }

    #[test]
    fn partial_transpose_of_bell() {
        let pt = partial_transpose(&bell_coeffs());
        assert_eq!(pt.get(2, 2), 1.0);
        let e = eigenvalues_hermitian(&pt.to_dense()).unwrap();
        assert!((e[0] + 0.5).abs() < 1e-12, "{e:?}");
        let dense_pt = bell_dense().partial_transpose(&[1]);
        assert!(pt.to_dense().max_abs_diff(&dense_pt) < 1e-12);
        assert_eq!(partial_transpose(&pt), bell_coeffs());
    }

    #[test]
    fn partial_transpose_keeps_products_products() {
        let a = BlochOp::new([0.3, -0.2, 0.5]);
        let b = BlochOp::new([0.1, 0.7, -0.4]);
        let flipped = BlochOp::new([0.1, -0.7, -0.4]);
        assert_eq!(partial_transpose(&product(&a, &b)), product(&a, &flipped));
    }

    fn random_coeffs() -> impl Strategy<Value = PauliCoeffs2Q> {
        prop::array::uniform16(-1.0f64..1.0).prop_map(|v| PauliCoeffs2Q::from_flat(&v))
    }

    fn random_state() -> impl Strategy<Value = DenseMatrix> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 16).prop_map(|v| {
            let g = DenseMatrix::from_entries(4, v.into_iter().map(|(r, i)| Complex64::new(r, i)).collect());
            let p = g.matmul(&g.adjoint());
            let tr = p.trace().re;
            p.scale(1.0 / tr)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn dense_round_trip(a in random_coeffs()) {
            let back = PauliCoeffs2Q::from_dense(&a.to_dense()).unwrap();
            prop_assert!(back.max_abs_diff(&a) < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn marginals_consistent(a in random_coeffs()) {
            for p in Axis::ALL {
                for q in Axis::ALL {
                    for s in Outcome::BOTH {
                        let sum: f64 = Outcome::BOTH.iter().map(|&t| born_probability(&a, p, s, q, t)).sum();
                        let single = 0.25 * 2.0 * (a.get(0, 0) + s.sign() * a.get(p.index(), 0));
                        prop_assert!((sum - single).abs() < 1e-12);
                    }
                }
            }
        }

        #[test]
        fn quantum_states_give_probabilities(rho in random_state()) {
            let a = PauliCoeffs2Q::from_dense(&rho).unwrap();
            for (_, p) in all_pair_probabilities(&a) {
                prop_assert!((-1e-12..=1.0 + 1e-12).contains(&p));
            }
        }

        #[test]
        fn partial_transpose_commutes_with_dense(a in random_coeffs()) {
            let lhs = partial_transpose(&a).to_dense();
            let rhs = a.to_dense().partial_transpose(&[1]);
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
            prop_assert_eq!(partial_transpose(&partial_transpose(&a)), a);
        }
    }
}
