//! CSIGN as a coefficient map, single-qubit Cliffords, the scaling noise
//! models, and the rescaled gate pipeline.

use std::fmt;

use num_complex::Complex64;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::pauli::{product, BlochOp, PauliCoeffs2Q};
use crate::state_spaces::rescale2;

const I: usize = 0;
const X: usize = 1;
const Y: usize = 2;
const Z: usize = 3;

/// `CSIGN[i][j] = (k, l, sign)`: output coefficient `(i, j)` is `sign · input (k, l)`.
const CSIGN: [[(usize, usize, f64); 4]; 4] = [
    [(I, I, 1.0), (Z, X, 1.0), (Z, Y, 1.0), (I, Z, 1.0)],
    [(X, Z, 1.0), (Y, Y, 1.0), (Y, X, -1.0), (X, I, 1.0)],
    [(Y, Z, 1.0), (X, Y, -1.0), (X, X, 1.0), (Y, I, 1.0)],
    [(Z, I, 1.0), (I, X, 1.0), (I, Y, 1.0), (Z, Z, 1.0)],
];

pub fn csign(a: &PauliCoeffs2Q) -> PauliCoeffs2Q {
    a.map(|i, j, _| {
        let (k, l, s) = CSIGN[i][j];
        s * a.get(k, l)
    })
}

/// `diag(1, 1, 1, -1)`.
pub fn csign_unitary() -> DenseMatrix {
    DenseMatrix::diagonal(&[1.0, 1.0, 1.0, -1.0])
}

/// The noise families whose action is a per-coefficient scaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseFamily {
    JointDepol,
    LocalDepol,
    LocalDephase,
}

impl NoiseFamily {
    pub const ALL: [NoiseFamily; 3] = [NoiseFamily::JointDepol, NoiseFamily::LocalDepol, NoiseFamily::LocalDephase];

    pub fn with(self, param: f64) -> NoiseModel {
        match self {
            NoiseFamily::JointDepol => NoiseModel::JointDepol(param),
            NoiseFamily::LocalDepol => NoiseModel::LocalDepol(param),
            NoiseFamily::LocalDephase => NoiseModel::LocalDephase(param),
        }
    }

    /// Largest meaningful parameter: total dephasing is reached at `p = 1/2`.
    pub fn max_param(self) -> f64 {
        match self {
            NoiseFamily::LocalDephase => 0.5,
            _ => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NoiseFamily::JointDepol => "joint-depol",
            NoiseFamily::LocalDepol => "local-depol",
            NoiseFamily::LocalDephase => "local-dephase",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "joint-depol" => Some(NoiseFamily::JointDepol),
            "local-depol" => Some(NoiseFamily::LocalDepol),
            "local-dephase" => Some(NoiseFamily::LocalDephase),
            _ => None,
        }
    }
}

impl fmt::Display for NoiseFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Adversarial map applied with probability `λ` in the error-per-gate model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdversaryMap {
    /// `Z` on the first qubit; at `λ = 1/2` this dephases it completely.
    ZFirst,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseModel {
    JointDepol(f64),
    LocalDepol(f64),
    LocalDephase(f64),
    ErrorPerGate(f64, AdversaryMap),
}

impl NoiseModel {
    pub fn noiseless() -> Self {
        NoiseModel::JointDepol(0.0)
    }

    pub fn param(&self) -> f64 {
        match *self {
            NoiseModel::JointDepol(p)
            | NoiseModel::LocalDepol(p)
            | NoiseModel::LocalDephase(p)
            | NoiseModel::ErrorPerGate(p, _) => p,
        }
    }

    pub fn family(&self) -> Option<NoiseFamily> {
        match self {
            NoiseModel::JointDepol(_) => Some(NoiseFamily::JointDepol),
            NoiseModel::LocalDepol(_) => Some(NoiseFamily::LocalDepol),
            NoiseModel::LocalDephase(_) => Some(NoiseFamily::LocalDephase),
            NoiseModel::ErrorPerGate(..) => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.param();
        if (0.0..=1.0).contains(&p) {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("noise parameter must lie in [0,1], got {p}")))
        }
    }

    /// Per-index scale `s` with `A_ij ↦ s_i s_j A_ij`, or `None` for joint depolarizing.
    fn local_scale(&self) -> Option<[f64; 4]> {
        match *self {
            NoiseModel::LocalDepol(p) => Some([1.0, 1.0 - p, 1.0 - p, 1.0 - p]),
            NoiseModel::LocalDephase(p) => Some([1.0, 1.0 - 2.0 * p, 1.0 - 2.0 * p, 1.0]),
            _ => None,
        }
    }
}

impl fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoiseModel::ErrorPerGate(l, AdversaryMap::ZFirst) => write!(f, "error-per-gate({l}, Z1)"),
            other => write!(f, "{}({})", other.family().map(NoiseFamily::name).unwrap_or("?"), other.param()),
        }
    }
}

/// Coefficient-wise noise scaling. Error-per-gate is rejected.
pub fn apply_noise(a: &PauliCoeffs2Q, n: &NoiseModel) -> Result<PauliCoeffs2Q> {
    n.validate()?;
    match *n {
        NoiseModel::ErrorPerGate(..) => Err(Error::ErrorPerGateNotScaling),
        NoiseModel::JointDepol(l) => Ok(a.map(|i, j, v| if i == 0 && j == 0 { v } else { (1.0 - l) * v })),
        _ => {
            let s = n.local_scale().expect("local model");
            Ok(a.map(|i, j, v| s[i] * s[j] * v))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CliffordGate1Q {
    X,
    Y,
    Z,
    S,
    H,
}

impl CliffordGate1Q {
    pub const ALL: [CliffordGate1Q; 5] = [
        CliffordGate1Q::X,
        CliffordGate1Q::Y,
        CliffordGate1Q::Z,
        CliffordGate1Q::S,
        CliffordGate1Q::H,
    ];

    /// Signed permutation of the Bloch components `(b, c, d)`.
    pub fn act(self, v: [f64; 3]) -> [f64; 3] {
        let [b, c, d] = v;
        match self {
            CliffordGate1Q::X => [b, -c, -d],
            CliffordGate1Q::Y => [-b, c, -d],
            CliffordGate1Q::Z => [-b, -c, d],
            CliffordGate1Q::S => [-c, b, d],
            CliffordGate1Q::H => [d, -c, b],
        }
    }

    pub fn unitary(self) -> DenseMatrix {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let e = match self {
            CliffordGate1Q::X => [c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)],
            CliffordGate1Q::Y => [c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)],
            CliffordGate1Q::Z => [c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)],
            CliffordGate1Q::S => [c(1., 0.), c(0., 0.), c(0., 0.), c(0., 1.)],
            CliffordGate1Q::H => [c(h, 0.), c(h, 0.), c(h, 0.), c(-h, 0.)],
        };
        DenseMatrix::from_entries(2, e.to_vec())
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "X" => Some(CliffordGate1Q::X),
            "Y" => Some(CliffordGate1Q::Y),
            "Z" => Some(CliffordGate1Q::Z),
            "S" => Some(CliffordGate1Q::S),
            "H" => Some(CliffordGate1Q::H),
            _ => None,
        }
    }
}

impl fmt::Display for CliffordGate1Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

pub fn clifford1(a: &BlochOp, g: CliffordGate1Q) -> BlochOp {
    BlochOp {
        trace_coeff: a.trace_coeff,
        bloch: g.act(a.bloch),
    }
}

/// A single-qubit Clifford on one side of a two-qubit operator.
pub fn local_clifford(a: &PauliCoeffs2Q, side: usize, g: CliffordGate1Q) -> PauliCoeffs2Q {
    let mut out = PauliCoeffs2Q::zero();
    for fixed in 0..4 {
        let line = |k: usize| if side == 0 { a.get(k, fixed) } else { a.get(fixed, k) };
        let mapped = g.act([line(1), line(2), line(3)]);
        let vals = [line(0), mapped[0], mapped[1], mapped[2]];
        for (k, v) in vals.into_iter().enumerate() {
            if side == 0 {
                out.set(k, fixed, v);
            } else {
                out.set(fixed, k, v);
            }
        }
    }
    out
}

/// `T_R⁻¹⊗T_R⁻¹ ∘ N ∘ CSIGN ∘ T_R⊗T_R` applied to `u ⊗ v`.
pub fn pipeline(u: &BlochOp, v: &BlochOp, r: f64, n: &NoiseModel) -> Result<PauliCoeffs2Q> {
    let scaled = rescale2(&product(u, v), r)?;
    let noisy = apply_noise(&csign(&scaled), n)?;
    rescale2(&noisy, 1.0 / r)
}

/// Walks `(1,1,1)` through X, Y, X, S, X, Y, X, returning every vertex visited.
pub fn footnote_orbit() -> Vec<[f64; 3]> {
    use CliffordGate1Q::*;
    let mut v = [1.0, 1.0, 1.0];
    let mut out = vec![v];
    for g in [X, Y, X, S, X, Y, X] {
        v = g.act(v);
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::pauli_matrix;
    use proptest::prelude::*;

    fn arb_coeffs() -> impl Strategy<Value = PauliCoeffs2Q> {
        prop::array::uniform16(-1.0f64..1.0).prop_map(|mut v| {
            v[0] = 1.0;
            PauliCoeffs2Q::from_flat(&v)
        })
    }

    #[test]
    fn csign_matches_product_display() {
        let (x, y, z) = (0.3, -0.7, 0.2);
        let (a, b, c) = (-0.4, 0.9, 0.5);
        let out = csign(&product(&BlochOp::new([x, y, z]), &BlochOp::new([a, b, c])));
        assert!((out.get(1, 0) - x * c).abs() < 1e-15);
        assert!((out.get(2, 2) - x * a).abs() < 1e-15);
        assert!((out.get(0, 1) - z * a).abs() < 1e-15);
        assert!((out.get(1, 2) + y * a).abs() < 1e-15);
        assert!((out.get(3, 0) - z).abs() < 1e-15);
        assert_eq!(csign(&PauliCoeffs2Q::identity()), PauliCoeffs2Q::identity());
    }

    proptest! {
        #[test]
        fn csign_matches_dense_conjugation(a in arb_coeffs()) {
            let lhs = csign(&a).to_dense();
            let rhs = a.to_dense().conjugate_by(&csign_unitary());
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }

        #[test]
        fn csign_is_linear_involution(a in arb_coeffs(), b in arb_coeffs(), t in -2.0f64..2.0) {
            prop_assert!(csign(&csign(&a)).max_abs_diff(&a) < 1e-15);
            let lhs = csign(&a.add(&b.scale(t)));
            let rhs = csign(&a).add(&csign(&b).scale(t));
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }

        #[test]
        fn noise_is_trace_preserving_contraction(a in arb_coeffs(), p in 0.0f64..=1.0, fam in 0usize..3) {
            let fam = NoiseFamily::ALL[fam];
            let p = p * fam.max_param();
            let out = apply_noise(&a, &fam.with(p)).unwrap();
            prop_assert_eq!(out.get(0, 0), a.get(0, 0));
            for i in 0..4 {
                for j in 0..4 {
                    prop_assert!(out.get(i, j).abs() <= a.get(i, j).abs() + 1e-15);
                }
            }
        }

        #[test]
        fn noise_commutes_with_local_cliffords(a in arb_coeffs(), p in 0.0f64..0.5, fam in 0usize..3, side in 0usize..2, g in 0usize..4) {
            let n = NoiseFamily::ALL[fam].with(p);
            let g = CliffordGate1Q::ALL[g];
            let lhs = apply_noise(&local_clifford(&a, side, g), &n).unwrap();
            let rhs = local_clifford(&apply_noise(&a, &n).unwrap(), side, g);
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }

        #[test]
        fn local_clifford_matches_dense(a in arb_coeffs(), side in 0usize..2, g in 0usize..5) {
            let g = CliffordGate1Q::ALL[g];
            let u = g.unitary();
            let id = DenseMatrix::identity(2);
            let full = if side == 0 { u.kron(&id) } else { id.kron(&u) };
            let lhs = local_clifford(&a, side, g).to_dense();
            let rhs = a.to_dense().conjugate_by(&full);
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
    }

    #[test]
    fn clifford_actions_match_unitaries() {
        for g in CliffordGate1Q::ALL {
            let v = BlochOp::new([0.3, -0.5, 0.7]);
            let lhs = clifford1(&v, g).to_dense();
            let rhs = v.to_dense().conjugate_by(&g.unitary());
            assert!(lhs.max_abs_diff(&rhs) < 1e-14, "{g}");
        }
    }

    #[test]
    fn clifford_examples() {
        let ones = BlochOp::new([1.0, 1.0, 1.0]);
        assert_eq!(clifford1(&ones, CliffordGate1Q::X).bloch, [1.0, -1.0, -1.0]);
        assert_eq!(CliffordGate1Q::S.act([-1.0, 1.0, -1.0]), [-1.0, -1.0, -1.0]);
        let v = BlochOp::new([1.0, -1.0, 1.0]);
        let zz = clifford1(&clifford1(&v, CliffordGate1Q::Z), CliffordGate1Q::Z);
        assert_eq!(zz.bloch, v.bloch);
    }

    #[test]
    fn orbit_visits_all_vertices() {
        let orbit = footnote_orbit();
        assert_eq!(orbit.len(), 8);
        let mut seen: Vec<[i8; 3]> = orbit.iter().map(|v| v.map(|x| x as i8)).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn noise_examples() {
        let bell = PauliCoeffs2Q::new([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]);
        let full = apply_noise(&bell, &NoiseModel::JointDepol(1.0)).unwrap();
        assert_eq!(full, PauliCoeffs2Q::identity());

        let p = 0.2;
        let deph = apply_noise(&bell, &NoiseModel::LocalDephase(p)).unwrap();
        assert!((deph.get(1, 1) - (1.0 - 2.0 * p).powi(2)).abs() < 1e-15);
        assert_eq!(deph.get(3, 3), 1.0);
        // dense Kraus oracle: ρ ↦ (1-p)ρ + pZρZ on each side
        let z = pauli_matrix(3);
        let id = DenseMatrix::identity(2);
        let one_side = |rho: &DenseMatrix, u: &DenseMatrix| rho.scale(1.0 - p).add(&rho.conjugate_by(u).scale(p));
        let rho = one_side(&one_side(&bell.to_dense(), &z.kron(&id)), &id.kron(&z));
        assert!(rho.max_abs_diff(&deph.to_dense()) < 1e-14);

        let a = product(&BlochOp::new([0.6, 0.0, 0.0]), &BlochOp::new([0.0, 0.0, 0.0]));
        let dep = apply_noise(&a, &NoiseModel::LocalDepol(0.25)).unwrap();
        assert!((dep.get(1, 0) - 0.75 * 0.6).abs() < 1e-15);

        assert_eq!(
            apply_noise(&a, &NoiseModel::ErrorPerGate(0.5, AdversaryMap::ZFirst)),
            Err(Error::ErrorPerGateNotScaling)
        );
        assert!(apply_noise(&a, &NoiseModel::JointDepol(1.5)).is_err());
    }

    #[test]
    fn pipeline_examples() {
        let ones = BlochOp::new([1.0, 1.0, 1.0]);
        let (r, big_r) = (0.6, 0.8);
        let out = pipeline(&ones, &ones, big_r, &NoiseModel::LocalDepol(1.0 - r)).unwrap();
        let expect_row1 = [r * big_r, r * r, -r * r, r * r / big_r];
        for (j, e) in expect_row1.iter().enumerate() {
            assert!((out.get(1, j) - e).abs() < 1e-14);
        }
        assert!((out.get(0, 3) - r).abs() < 1e-14);

        let u = BlochOp::new([1.0, 0.0, 0.0]);
        let v = BlochOp::new([0.0, 0.0, 1.0]);
        let noiseless = pipeline(&u, &v, 1.0, &NoiseModel::noiseless()).unwrap();
        assert_eq!(noiseless, csign(&product(&u, &v)));

        let (p, big_r) = (0.1, 1.3);
        let s = 1.0 - 2.0 * p;
        let out = pipeline(&u, &v, big_r, &NoiseModel::LocalDephase(p)).unwrap();
        let mut expect = PauliCoeffs2Q::zero();
        expect.set(0, 0, 1.0);
        expect.set(1, 0, s * big_r);
        expect.set(0, 3, 1.0);
        expect.set(1, 3, s / big_r);
        assert!(out.max_abs_diff(&expect) < 1e-14);
    }
}
