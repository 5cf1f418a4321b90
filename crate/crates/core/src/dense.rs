//! Small dense complex matrices over qubit registers.
//!
//! Qubit 0 is the most significant bit of a basis index, so `kron(a, b)`
//! places `a` on qubit 0. Everything here is sized for at most 8 qubits.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Off-diagonal Frobenius norm at which the Jacobi sweep stops.
pub const JACOBI_TOL: f64 = 1e-13;
/// Hermiticity tolerance accepted by [`eigenvalues_hermitian`].
pub const HERMITIAN_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 100;

/// Row-major complex square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries. Panics if the length is not a square.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Self {
        assert_eq!(entries.len(), dim * dim, "entry count must be dim^2");
        Self { dim, entries }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        let entries = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), dim);
                r.iter().map(|&x| Complex64::new(x, 0.0))
            })
            .collect();
        Self { dim, entries }
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// `|v><v|` for a (not necessarily normalized) ket.
    pub fn projector(ket: &[Complex64]) -> Self {
        let dim = ket.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = ket[i] * ket[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Number of qubits when the dimension is a power of two.
    pub fn num_qubits(&self) -> Option<usize> {
        if self.dim.is_power_of_two() {
            Some(self.dim.trailing_zeros() as usize)
        } else {
            None
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(j, i)] = self[(i, j)];
            }
        }
        m
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        out
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, unitary: &Self) -> Self {
        unitary.matmul(self).matmul(&unitary.adjoint())
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let mut out = Self::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self[(i, j)];
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k, j * m + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (0..self.dim).all(|i| (i..self.dim).all(|j| (self[(i, j)] - self[(j, i)].conj()).norm() <= tol))
    }

    /// Transposes the listed qubits of a qubit-register operator.
    pub fn partial_transpose(&self, qubits: &[usize]) -> Self {
        let n = self.num_qubits().expect("partial transpose needs a qubit register");
        let mask = qubit_mask(n, qubits);
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                // swap the masked bits between row and column index
                let ni = (i & !mask) | (j & mask);
                let nj = (j & !mask) | (i & mask);
                out[(ni, nj)] = self[(i, j)];
            }
        }
        out
    }

    /// Traces out the listed qubits; the remaining qubits keep their order.
    pub fn partial_trace(&self, traced: &[usize]) -> Self {
        let n = self.num_qubits().expect("partial trace needs a qubit register");
        let kept: Vec<usize> = (0..n).filter(|q| !traced.contains(q)).collect();
        let out_dim = 1usize << kept.len();
        let mut out = Self::zeros(out_dim);
        let traced_count = n - kept.len();
        for r in 0..out_dim {
            for c in 0..out_dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for t in 0..(1usize << traced_count) {
                    let i = assemble_index(n, &kept, r, traced, t);
                    let j = assemble_index(n, &kept, c, traced, t);
                    acc += self[(i, j)];
                }
                out[(r, c)] = acc;
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

fn qubit_mask(n: usize, qubits: &[usize]) -> usize {
    qubits.iter().fold(0, |m, &q| {
        assert!(q < n, "qubit {q} out of range for {n} qubits");
        m | (1 << (n - 1 - q))
    })
}

/// Scatters the bits of `kept_val` onto `kept` qubits and `traced_val` onto `traced` qubits.
fn assemble_index(n: usize, kept: &[usize], kept_val: usize, traced: &[usize], traced_val: usize) -> usize {
    let mut idx = 0;
    for (pos, &q) in kept.iter().enumerate() {
        let bit = (kept_val >> (kept.len() - 1 - pos)) & 1;
        idx |= bit << (n - 1 - q);
    }
    for (pos, &q) in traced.iter().enumerate() {
        let bit = (traced_val >> (traced.len() - 1 - pos)) & 1;
        idx |= bit << (n - 1 - q);
    }
    idx
}

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// Runs cyclic Jacobi on the real-symmetric embedding `[[Re, -Im], [Im, Re]]`,
/// whose spectrum is the Hermitian spectrum with every value doubled.
pub fn eigenvalues_hermitian(m: &DenseMatrix) -> Result<Vec<f64>> {
    if !m.is_hermitian(HERMITIAN_TOL) {
        return Err(Error::NonHermitian);
    }
    let n = m.dim();
    let size = 2 * n;
    let mut a = vec![0.0; size * size];
    for i in 0..n {
        for j in 0..n {
            // symmetrize so tiny anti-Hermitian noise cannot stall the sweep
            let z = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            a[i * size + j] = z.re;
            a[(i + n) * size + (j + n)] = z.re;
            a[i * size + (j + n)] = -z.im;
            a[(i + n) * size + j] = z.im;
        }
    }
    let mut evals = jacobi_symmetric(&mut a, size);
    evals.sort_by(f64::total_cmp);
    Ok(evals.into_iter().step_by(2).collect())
}

/// Cyclic Jacobi on a row-major real symmetric matrix; returns the diagonal on exit.
fn jacobi_symmetric(a: &mut [f64], n: usize) -> Vec<f64> {
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off < JACOBI_TOL {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

/// Smallest eigenvalue, for positivity checks.
pub fn min_eigenvalue(m: &DenseMatrix) -> Result<f64> {
    Ok(eigenvalues_hermitian(m)?[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_spectrum() {
        let e = eigenvalues_hermitian(&DenseMatrix::identity(4)).unwrap();
        for v in e {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn diagonal_spectrum_sorted() {
        let e = eigenvalues_hermitian(&DenseMatrix::diagonal(&[3.0, 1.0, 4.0, 2.0])).unwrap();
        for (got, want) in e.iter().zip([1.0, 2.0, 3.0, 4.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn bell_projector_spectrum() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let p = DenseMatrix::projector(&[c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]);
        let e = eigenvalues_hermitian(&p).unwrap();
        for (got, want) in e.iter().zip([0.0, 0.0, 0.0, 1.0]) {
            assert!((got - want).abs() < 1e-12, "{e:?}");
        }
    }

    #[test]
    fn complex_hermitian_spectrum() {
        // Pauli Y has eigenvalues -1, +1
        let y = DenseMatrix::from_entries(2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
        let e = eigenvalues_hermitian(&y).unwrap();
        assert!((e[0] + 1.0).abs() < 1e-12 && (e[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = DenseMatrix::from_entries(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(eigenvalues_hermitian(&m), Err(Error::NonHermitian)));
    }

    #[test]
    fn partial_trace_of_product() {
        let a = DenseMatrix::diagonal(&[0.25, 0.75]);
        let b = DenseMatrix::diagonal(&[0.6, 0.4]);
        let ab = a.kron(&b);
        assert!(ab.partial_trace(&[1]).max_abs_diff(&a) < 1e-15);
        assert!(ab.partial_trace(&[0]).max_abs_diff(&b) < 1e-15);
    }

    #[test]
    fn partial_transpose_involutive() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let p = DenseMatrix::projector(&[c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, s)]);
        let pt = p.partial_transpose(&[1]);
        assert!(pt.partial_transpose(&[1]).max_abs_diff(&p) < 1e-15);
        assert!(min_eigenvalue(&pt).unwrap() < -0.49);
    }
}
