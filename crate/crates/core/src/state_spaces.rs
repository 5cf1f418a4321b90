//! Single-particle state spaces: the Bloch cube, rescaled spheres and cubes,
//! and the operator-compatibility test that produces generalized corners.

use num_complex::Complex64;

use crate::dense::{min_eigenvalue, DenseMatrix};
use crate::error::{Error, Result};
use crate::pauli::{BlochOp, PauliCoeffs2Q};

/// Additive tolerance for cube and sphere membership.
pub const MEMBERSHIP_TOL: f64 = 1e-12;
/// Relative residual below which a corner system counts as solvable.
pub const COMPAT_RESIDUAL_TOL: f64 = 1e-8;
/// Tolerance on POVM completeness and positivity.
pub const POVM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    Cube,
    Sphere,
}

/// Which single-particle space is in force, with rescaling factor `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateSpaceSpec {
    pub kind: SpaceKind,
    r: f64,
}

impl StateSpaceSpec {
    pub fn new(kind: SpaceKind, r: f64) -> Result<Self> {
        check_scale(r)?;
        Ok(Self { kind, r })
    }

    pub fn cube(r: f64) -> Result<Self> {
        Self::new(SpaceKind::Cube, r)
    }

    pub fn sphere(r: f64) -> Result<Self> {
        Self::new(SpaceKind::Sphere, r)
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

fn check_scale(r: f64) -> Result<()> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("rescaling factor must be positive, got {r}")))
    }
}

/// The eight cube vertices, `+` before `-` lexicographically in `(x, y, z)`.
pub fn cube_vertices() -> [BlochOp; 8] {
    std::array::from_fn(vertex_from_index)
}

/// Vertex for index `k = 4·bx + 2·by + bz`, where a set bit means `-1`.
pub fn vertex_from_index(k: usize) -> BlochOp {
    assert!(k < 8);
    let sign = |bit: usize| if (k >> bit) & 1 == 1 { -1.0 } else { 1.0 };
    BlochOp::new([sign(2), sign(1), sign(0)])
}

/// Sign bits of a vertex as text, e.g. `"010"` for `(+1, -1, +1)`.
pub fn vertex_bits(k: usize) -> String {
    format!("{:03b}", k)
}

pub fn vertex_index_from_bits(bits: &str) -> Option<usize> {
    if bits.len() != 3 || !bits.chars().all(|c| c == '0' || c == '1') {
        return None;
    }
    usize::from_str_radix(bits, 2).ok()
}

/// Index of a vertex Bloch vector, if it is one.
pub fn vertex_index(v: &BlochOp) -> Option<usize> {
    if !v.is_vertex() {
        return None;
    }
    let bit = |x: f64| usize::from(x < 0.0);
    Some(4 * bit(v.bloch[0]) + 2 * bit(v.bloch[1]) + bit(v.bloch[2]))
}

pub fn contains(space: &StateSpaceSpec, a: &BlochOp) -> bool {
    match space.kind {
        SpaceKind::Cube => a.bloch.iter().all(|b| b.abs() <= space.r + MEMBERSHIP_TOL),
        SpaceKind::Sphere => a.norm() <= space.r + MEMBERSHIP_TOL,
    }
}

/// `T_R` on one qubit: the Bloch part is multiplied by `r`.
pub fn rescale(a: &BlochOp, r: f64) -> Result<BlochOp> {
    check_scale(r)?;
    Ok(BlochOp {
        trace_coeff: a.trace_coeff,
        bloch: a.bloch.map(|b| b * r),
    })
}

/// `T_R ⊗ T_R`: borders scale by `r`, the correlation block by `r²`.
pub fn rescale2(a: &PauliCoeffs2Q, r: f64) -> Result<PauliCoeffs2Q> {
    check_scale(r)?;
    Ok(a.map(|i, j, v| {
        let weight = usize::from(i != 0) + usize::from(j != 0);
        v * r.powi(weight as i32)
    }))
}

/// Where the depolarizing noise that produces the rescaling sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseLocation {
    /// Depolarizing just before measurement: `R = 1/(1-p) ≥ 1`.
    Measurement,
    /// Depolarizing right after preparation: `R = 1-p ≤ 1`.
    Preparation,
}

pub fn noise_to_r(location: NoiseLocation, p: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("depolarizing rate must lie in [0,1), got {p}")));
    }
    Ok(match location {
        NoiseLocation::Measurement => 1.0 / (1.0 - p),
        NoiseLocation::Preparation => 1.0 - p,
    })
}

/// Inverse of [`noise_to_r`]: the rate corresponding to a rescaling factor.
pub fn r_to_noise(r: f64) -> (NoiseLocation, f64) {
    if r >= 1.0 {
        (NoiseLocation::Measurement, (r - 1.0) / r)
    } else {
        (NoiseLocation::Preparation, 1.0 - r)
    }
}

/// A collection of POVMs on a `dim`-dimensional system.
#[derive(Debug, Clone)]
pub struct PovmSet {
    dim: usize,
    povms: Vec<Vec<DenseMatrix>>,
}

impl PovmSet {
    pub fn new(dim: usize, povms: Vec<Vec<DenseMatrix>>) -> Result<Self> {
        let id = DenseMatrix::identity(dim);
        for (k, povm) in povms.iter().enumerate() {
            if povm.is_empty() {
                return Err(Error::InvalidParameter(format!("POVM {k} has no elements")));
            }
            let mut sum = DenseMatrix::zeros(dim);
            for m in povm {
                if m.dim() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: m.dim() });
                }
                if min_eigenvalue(m)? < -POVM_TOL {
                    return Err(Error::InvalidParameter(format!("POVM {k} has a non-positive element")));
                }
                sum = sum.add(m);
            }
            if sum.max_abs_diff(&id) > POVM_TOL {
                return Err(Error::InvalidParameter(format!("POVM {k} does not sum to identity")));
            }
        }
        Ok(Self { dim, povms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn povms(&self) -> &[Vec<DenseMatrix>] {
        &self.povms
    }

    pub fn outcome_counts(&self) -> Vec<usize> {
        self.povms.iter().map(Vec::len).collect()
    }

    /// Reads `dim d`, then `povm` blocks of `elem` lines (d² re/im pairs, row-major)
    /// closed by `end`, or single-line qubit measurements `axis nx ny nz`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut dim: Option<usize> = None;
        let mut povms: Vec<Vec<DenseMatrix>> = Vec::new();
        let mut open: Option<Vec<DenseMatrix>> = None;
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let perr = |msg: String| Error::Parse { line, msg };
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let toks: Vec<&str> = body.split_whitespace().collect();
            let nums = |ts: &[&str]| -> Result<Vec<f64>> {
                ts.iter()
                    .map(|t| t.parse::<f64>().map_err(|_| perr(format!("bad number `{t}`"))))
                    .collect()
            };
            let Some(d) = dim else {
                if toks.len() != 2 || toks[0] != "dim" {
                    return Err(perr("expected `dim d` first".into()));
                }
                let d = toks[1].parse().ok().filter(|&d: &usize| d >= 1).ok_or_else(|| perr("bad dimension".into()))?;
                dim = Some(d);
                continue;
            };
            match (toks[0], open.as_mut()) {
                ("povm", None) => open = Some(Vec::new()),
                ("elem", Some(elems)) => {
                    let v = nums(&toks[1..])?;
                    if v.len() != 2 * d * d {
                        return Err(perr(format!("elem needs {} numbers, got {}", 2 * d * d, v.len())));
                    }
                    let entries = v.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect();
                    elems.push(DenseMatrix::from_entries(d, entries));
                }
                ("end", Some(_)) => povms.push(open.take().unwrap_or_default()),
                ("axis", None) => {
                    if d != 2 {
                        return Err(perr("`axis` needs dim 2".into()));
                    }
                    let v = nums(&toks[1..])?;
                    if v.len() != 3 || v.iter().all(|x| *x == 0.0) {
                        return Err(perr("`axis` needs a nonzero 3-vector".into()));
                    }
                    povms.push(qubit_projective([v[0], v[1], v[2]]));
                }
                (t, _) => return Err(perr(format!("unexpected `{t}`"))),
            }
        }
        if open.is_some() {
            return Err(Error::Parse { line: text.lines().count(), msg: "unterminated povm block".into() });
        }
        let dim = dim.ok_or(Error::Parse { line: 0, msg: "empty POVM file".into() })?;
        Self::new(dim, povms)
    }
}

/// Projective qubit measurement along the Bloch direction `n` (normalized internally).
pub fn qubit_projective(n: [f64; 3]) -> Vec<DenseMatrix> {
    let norm = n.iter().map(|x| x * x).sum::<f64>().sqrt();
    let u = n.map(|x| x / norm);
    let plus = BlochOp::new(u).to_dense();
    let minus = BlochOp::new(u.map(|x| -x)).to_dense();
    vec![plus, minus]
}

/// Rank-one projective measurement in the basis given by the columns of `basis`.
pub fn projective_from_basis(basis: &DenseMatrix) -> Vec<DenseMatrix> {
    let d = basis.dim();
    (0..d)
        .map(|col| {
            let ket: Vec<Complex64> = (0..d).map(|row| basis[(row, col)]).collect();
            DenseMatrix::projector(&ket)
        })
        .collect()
}

/// Outcome-count necessary condition: `Σ m_i ≤ d² + N - 1`.
pub fn counting_bound_ok(dim: usize, outcome_counts: &[usize]) -> bool {
    let total: usize = outcome_counts.iter().sum();
    total <= dim * dim + outcome_counts.len() - 1
}

/// A solved corner: one designated outcome per POVM and the operator achieving it.
#[derive(Debug, Clone)]
pub struct Corner {
    pub choice: Vec<usize>,
    pub operator: DenseMatrix,
    pub relative_residual: f64,
}

#[derive(Debug, Clone)]
pub enum IncompatibleReason {
    CountingBound { total_outcomes: usize, bound: usize },
    Unsolvable { choice: Vec<usize>, relative_residual: f64 },
}

#[derive(Debug, Clone)]
pub enum Compatibility {
    Compatible(Vec<Corner>),
    Incompatible(IncompatibleReason),
}

impl Compatibility {
    pub fn is_compatible(&self) -> bool {
        matches!(self, Compatibility::Compatible(_))
    }
}

/// Decides operator compatibility by solving, for every outcome combination,
/// `tr(M_chosen A) = 1`, `tr(M_other A) = 0`, `tr A = 1` over Hermitian `A`.
pub fn operator_compatible(set: &PovmSet) -> Compatibility {
    let counts = set.outcome_counts();
    if !counting_bound_ok(set.dim, &counts) {
        return Compatibility::Incompatible(IncompatibleReason::CountingBound {
            total_outcomes: counts.iter().sum(),
            bound: set.dim * set.dim + counts.len() - 1,
        });
    }
    let mut corners = Vec::new();
    for choice in outcome_combinations(&counts) {
        let corner = solve_corner(set, &choice);
        if corner.relative_residual >= COMPAT_RESIDUAL_TOL {
            return Compatibility::Incompatible(IncompatibleReason::Unsolvable {
                choice,
                relative_residual: corner.relative_residual,
            });
        }
        corners.push(corner);
    }
    Compatibility::Compatible(corners)
}

/// Every combination of one outcome index per POVM, first POVM slowest.
pub fn outcome_combinations(counts: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &m in counts {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..m).map(move |k| {
                    let mut c = prefix.clone();
                    c.push(k);
                    c
                })
            })
            .collect();
    }
    out
}

/// Least-squares solve of one corner system, regardless of solvability.
pub fn solve_corner(set: &PovmSet, choice: &[usize]) -> Corner {
    let d = set.dim;
    let basis = hermitian_basis(d);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut rhs = Vec::new();
    let trace_row = |m: &DenseMatrix| -> Vec<f64> { basis.iter().map(|e| m.matmul(e).trace().re).collect() };
    rows.push(trace_row(&DenseMatrix::identity(d)));
    rhs.push(1.0);
    for (povm, &pick) in set.povms.iter().zip(choice) {
        for (k, m) in povm.iter().enumerate() {
            rows.push(trace_row(m));
            rhs.push(if k == pick { 1.0 } else { 0.0 });
        }
    }
    let x = least_squares(&rows, &rhs);
    let residual: f64 = rows
        .iter()
        .zip(&rhs)
        .map(|(row, b)| {
            let r: f64 = row.iter().zip(&x).map(|(a, xi)| a * xi).sum::<f64>() - b;
            r * r
        })
        .sum::<f64>()
        .sqrt();
    let scale = rhs.iter().map(|b| b * b).sum::<f64>().sqrt();
    let mut op = DenseMatrix::zeros(d);
    for (e, xi) in basis.iter().zip(&x) {
        op = op.add(&e.scale(*xi));
    }
    Corner {
        choice: choice.to_vec(),
        operator: op,
        relative_residual: residual / scale,
    }
}

/// Real basis of `d×d` Hermitian matrices: diagonal units, then symmetric and antisymmetric pairs.
fn hermitian_basis(d: usize) -> Vec<DenseMatrix> {
    let mut basis = Vec::with_capacity(d * d);
    for i in 0..d {
        let mut e = DenseMatrix::zeros(d);
        e[(i, i)] = Complex64::new(1.0, 0.0);
        basis.push(e);
    }
    for i in 0..d {
        for j in (i + 1)..d {
            let mut re = DenseMatrix::zeros(d);
            re[(i, j)] = Complex64::new(1.0, 0.0);
            re[(j, i)] = Complex64::new(1.0, 0.0);
            basis.push(re);
            let mut im = DenseMatrix::zeros(d);
            im[(i, j)] = Complex64::new(0.0, 1.0);
            im[(j, i)] = Complex64::new(0.0, -1.0);
            basis.push(im);
        }
    }
    basis
}

/// Normal equations solved by fully pivoted elimination; free variables are set to zero.
fn least_squares(rows: &[Vec<f64>], rhs: &[f64]) -> Vec<f64> {
    let n = rows[0].len();
    let mut a = vec![vec![0.0; n + 1]; n];
    for (row, b) in rows.iter().zip(rhs) {
        for i in 0..n {
            for j in 0..n {
                a[i][j] += row[i] * row[j];
            }
            a[i][n] += row[i] * b;
        }
    }
    let max_abs = a.iter().flat_map(|r| r[..n].iter()).fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = 1e-12 * max_abs.max(1.0);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    for col in 0..n {
        // full pivot over the remaining block
        let mut best = (col, col, 0.0);
        for r in col..n {
            for c in col..n {
                if a[r][c].abs() > best.2 {
                    best = (r, c, a[r][c].abs());
                }
            }
        }
        if best.2 <= tol {
            break;
        }
        a.swap(col, best.0);
        for row in a.iter_mut() {
            row.swap(col, best.1);
        }
        perm.swap(col, best.1);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                if f != 0.0 {
                    for c in col..=n {
                        a[r][c] -= f * a[col][c];
                    }
                }
            }
        }
        rank += 1;
    }
    let mut x = vec![0.0; n];
    for k in 0..rank {
        x[perm[k]] = a[k][n] / a[k][k];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{single_born, Axis, Outcome};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn vertices_cover_all_sign_patterns() {
        let v = cube_vertices();
        assert_eq!(v.len(), 8);
        assert_eq!(v[0].bloch, [1.0, 1.0, 1.0]);
        assert_eq!(v[7].bloch, [-1.0, -1.0, -1.0]);
        assert_eq!(v[1].bloch, [1.0, 1.0, -1.0]);
        for (k, vert) in v.iter().enumerate() {
            assert_eq!(vertex_index(vert), Some(k));
            assert_eq!(vertex_index_from_bits(&vertex_bits(k)), Some(k));
            for axis in Axis::ALL {
                let p = single_born(vert, axis, Outcome::Plus);
                assert!(p == 0.0 || p == 1.0);
            }
        }
    }

    #[test]
    fn membership_examples() {
        let r = 1.0 / 3f64.sqrt();
        let t = BlochOp::new([r, r, r]);
        assert!(contains(&StateSpaceSpec::cube(1.0).unwrap(), &t));
        assert!(contains(&StateSpaceSpec::sphere(1.0).unwrap(), &t));
        let v = BlochOp::new([1.0, 1.0, 1.0]);
        assert!(contains(&StateSpaceSpec::cube(1.0).unwrap(), &v));
        assert!(!contains(&StateSpaceSpec::sphere(1.0).unwrap(), &v));
        assert!(contains(&StateSpaceSpec::sphere(3f64.sqrt()).unwrap(), &v));
    }

    #[test]
    fn rejects_nonpositive_scale() {
        assert!(StateSpaceSpec::cube(0.0).is_err());
        assert!(rescale(&BlochOp::maximally_mixed(), -1.0).is_err());
        assert!(rescale2(&PauliCoeffs2Q::identity(), 0.0).is_err());
    }

    #[test]
    fn rescale_examples() {
        assert_eq!(rescale(&BlochOp::new([1.0, 0.0, 0.0]), 2.0).unwrap().bloch, [2.0, 0.0, 0.0]);
        let u = BlochOp::new([1.0, -1.0, 1.0]);
        let v = BlochOp::new([-1.0, 1.0, 1.0]);
        let r = 0.8;
        let lhs = rescale2(&crate::pauli::product(&u, &v), r).unwrap();
        let rhs = crate::pauli::product(&rescale(&u, r).unwrap(), &rescale(&v, r).unwrap());
        assert!(lhs.max_abs_diff(&rhs) < 1e-15);
        assert_eq!(lhs.get(0, 1), r * v.bloch[0]);
        assert!((lhs.get(1, 1) - r * r * u.bloch[0] * v.bloch[0]).abs() < 1e-15);
    }

    #[test]
    fn noise_to_r_examples() {
        let r = noise_to_r(NoiseLocation::Measurement, 0.422649).unwrap();
        assert!((r - 3f64.sqrt()).abs() < 1e-5);
        assert!((r - 1.73).abs() < 5e-3);
        assert_eq!(noise_to_r(NoiseLocation::Measurement, 0.0).unwrap(), 1.0);
        let p = 1.0 - std::f64::consts::FRAC_1_SQRT_2;
        let r = noise_to_r(NoiseLocation::Preparation, p).unwrap();
        assert!((r - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(noise_to_r(NoiseLocation::Preparation, 1.0).is_err());
        assert!(noise_to_r(NoiseLocation::Measurement, -0.1).is_err());
    }

    fn pauli_xyz() -> PovmSet {
        PovmSet::new(
            2,
            vec![
                qubit_projective([1.0, 0.0, 0.0]),
                qubit_projective([0.0, 1.0, 0.0]),
                qubit_projective([0.0, 0.0, 1.0]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn pauli_measurements_are_compatible_with_cube_corners() {
        let Compatibility::Compatible(corners) = operator_compatible(&pauli_xyz()) else {
            panic!("X,Y,Z should be operator compatible");
        };
        assert_eq!(corners.len(), 8);
        let vertices = cube_vertices();
        for corner in &corners {
            // outcome index 0 is +1, so the choice bits are exactly the vertex sign bits
            let k = 4 * corner.choice[0] + 2 * corner.choice[1] + corner.choice[2];
            let got = BlochOp::from_dense(&corner.operator).unwrap();
            assert!((got.trace_coeff - 1.0).abs() < 1e-10);
            for i in 0..3 {
                assert!((got.bloch[i] - vertices[k].bloch[i]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn counting_bound_for_two_qubit_measurements() {
        assert!(counting_bound_ok(2, &[2, 2]));
        assert_eq!(2 * 2 + 2 - 1, 5);
    }

    #[test]
    fn counting_bound_rejects_d_plus_two_projective() {
        for d in [2usize, 3] {
            assert!(counting_bound_ok(d, &vec![d; d + 1]));
            assert!(!counting_bound_ok(d, &vec![d; d + 2]));
        }
    }

    fn random_axis(rng: &mut impl Rng) -> [f64; 3] {
        loop {
            let v = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 0.1 && n <= 1.0 {
                return v.map(|x| x / n);
            }
        }
    }

    #[test]
    fn four_generic_qubit_measurements_incompatible() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let axes: Vec<[f64; 3]> = (0..4).map(|_| random_axis(&mut rng)).collect();
        let set = PovmSet::new(2, axes.iter().map(|&a| qubit_projective(a)).collect()).unwrap();
        assert!(!operator_compatible(&set).is_compatible());

        // Independent oracle: a deterministic corner needs b·n_k = ±1 on every axis.
        // Fixing the first three signs pins b; some fourth sign must then be violated.
        let mut worst = 0.0f64;
        for choice in outcome_combinations(&[2, 2, 2, 2]) {
            let signs: Vec<f64> = choice.iter().map(|&c| if c == 0 { 1.0 } else { -1.0 }).collect();
            let b = solve3(&axes[..3], &signs[..3]);
            let dot: f64 = b.iter().zip(&axes[3]).map(|(x, y)| x * y).sum();
            worst = worst.max((dot - signs[3]).abs());
            // the least-squares corner leaves a nonzero residual on such choices
            let corner = solve_corner(&set, &choice);
            if (dot - signs[3]).abs() > 1e-3 {
                assert!(corner.relative_residual > COMPAT_RESIDUAL_TOL);
            }
        }
        assert!(worst > 1e-3);
    }

    fn solve3(axes: &[[f64; 3]], rhs: &[f64]) -> [f64; 3] {
        // Cramer's rule
        let det = |m: [[f64; 3]; 3]| {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        };
        let m = [axes[0], axes[1], axes[2]];
        let d = det(m);
        std::array::from_fn(|c| {
            let mut mc = m;
            for r in 0..3 {
                mc[r][c] = rhs[r];
            }
            det(mc) / d
        })
    }

    #[test]
    fn povm_validation() {
        let bad = vec![vec![DenseMatrix::identity(2).scale(0.5)]];
        assert!(PovmSet::new(2, bad).is_err());
    }

    #[test]
    fn rescale2_inverts() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let flat: [f64; 16] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            let a = PauliCoeffs2Q::from_flat(&flat);
            let r = rng.random_range(0.2..3.0);
            let back = rescale2(&rescale2(&a, r).unwrap(), 1.0 / r).unwrap();
            assert!(back.max_abs_diff(&a) < 1e-12);
        }
    }
}
