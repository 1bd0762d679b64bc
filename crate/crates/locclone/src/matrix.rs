//! Dense complex matrices and the Hermitian linear algebra the rest of the
//! crate is built on: Kronecker products, eigendecomposition, trace norm and
//! the von Neumann entropy.
//!
//! Matrices are stored row-major. The composite-index convention everywhere
//! is row-major over (A index, B index) with qubit basis order |0>, |1>, so
//! a two-qubit basis reads |00>, |01>, |10>, |11>.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::tol;

/// Complex scalar used throughout.
pub type Complex64 = Complex<f64>;

pub(crate) const LN_2: f64 = std::f64::consts::LN_2;

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter("non-finite matrix entry".into()));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in diag.iter().enumerate() {
            m.set(i, i, Complex64::new(v, 0.0));
        }
        m
    }

    /// Build from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.entries[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.entries[row * self.cols + col] = value;
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "dimension mismatch in matrix addition"
        );
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Kronecker product: block (i, j) of the result equals `self[i,j] * other`.
    pub fn tensor(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let aij = self.get(i, j);
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, aij * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Largest entrywise absolute difference to another matrix of the same shape.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation from `M = M†`.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..=i {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tolerance: f64) -> bool {
        self.hermiticity_defect() <= tolerance
    }

    pub(crate) fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j))
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// `values` are ascending; column `k` of `vectors` is the eigenvector for
/// `values[k]`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
///
/// The input must be Hermitian within [`tol::HERMITICITY`]; it is
/// symmetrized exactly before the solve so the decomposition always
/// reconstructs a Hermitian matrix.
pub fn hermitian_eigs(h: &ComplexMatrix) -> Result<HermitianEigen> {
    if !h.is_square() {
        return Err(Error::NotSquare { rows: h.rows(), cols: h.cols() });
    }
    if !h.is_hermitian(tol::HERMITICITY) {
        return Err(Error::NotHermitian);
    }
    let m = h.to_nalgebra();
    let sym = (&m + m.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let n = h.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, col, eig.eigenvectors[(row, k)]);
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Trace norm of a Hermitian matrix: the sum of absolute eigenvalues.
///
/// Only the Hermitian path is implemented; every matrix this crate feeds in
/// (densities and their partial transposes) is Hermitian.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eigs(m)?;
    Ok(eig.values.iter().map(|v| v.abs()).sum())
}

/// Von Neumann entropy in bits: -sum_i p_i log2 p_i over the spectrum.
///
/// The input must be Hermitian, positive semidefinite within
/// [`tol::PSD_FLOOR`] and unit trace within [`tol::ENTROPY_TRACE`].
/// Eigenvalues at or below [`tol::EIG_ZERO`] contribute nothing.
pub fn vn_entropy(rho: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eigs(rho)?;
    let trace: f64 = eig.values.iter().sum();
    if (trace - 1.0).abs() > tol::ENTROPY_TRACE {
        return Err(Error::InvalidDensity(format!("trace {trace} is not 1")));
    }
    if eig.values.iter().any(|&v| v < tol::PSD_FLOOR) {
        return Err(Error::InvalidDensity(format!(
            "negative eigenvalue {:e}",
            eig.values[0]
        )));
    }
    let mut s = 0.0;
    for &p in &eig.values {
        if p > tol::EIG_ZERO {
            s -= p * p.ln() / LN_2;
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
        let mut g = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
            }
        }
        g.add(&g.adjoint()).scale(c(0.5, 0.0))
    }

    #[test]
    fn tensor_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.tensor(&i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn tensor_basis_projectors() {
        // |0><0| (x) |1><1| has its single 1 at index 1 = |01>
        let mut p0 = ComplexMatrix::zeros(2, 2);
        p0.set(0, 0, c(1.0, 0.0));
        let mut p1 = ComplexMatrix::zeros(2, 2);
        p1.set(1, 1, c(1.0, 0.0));
        let t = p0.tensor(&p1);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if (i, j) == (1, 1) { 1.0 } else { 0.0 };
                assert!((t.get(i, j) - c(expect, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn tensor_trace_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let a = random_hermitian(2, &mut rng);
            let b = random_hermitian(2, &mut rng);
            let lhs = a.tensor(&b).trace();
            let rhs = a.trace() * b.trace();
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn eigs_sorted_diagonal() {
        let h = ComplexMatrix::diagonal(&[3.0, 1.0, 2.0]);
        let eig = hermitian_eigs(&h).unwrap();
        let expect = [1.0, 2.0, 3.0];
        for (v, e) in eig.values.iter().zip(expect) {
            assert!((v - e).abs() < 1e-12);
        }
    }

    #[test]
    fn eigs_pauli_x() {
        let x = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        let eig = hermitian_eigs(&x).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-12);
        assert!((eig.values[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigs_reconstruct_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let h = random_hermitian(16, &mut rng);
        let eig = hermitian_eigs(&h).unwrap();
        let d = ComplexMatrix::diagonal(&eig.values);
        let rec = eig.vectors.matmul(&d).matmul(&eig.vectors.adjoint());
        assert!(rec.max_abs_diff(&h) < 1e-10);
        let gram = eig.vectors.adjoint().matmul(&eig.vectors);
        assert!(gram.max_abs_diff(&ComplexMatrix::identity(16)) < 1e-10);
    }

    #[test]
    fn eigs_reject_non_hermitian() {
        let m = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        assert!(matches!(hermitian_eigs(&m), Err(Error::NotHermitian)));
    }

    #[test]
    fn trace_norm_basics() {
        let d = ComplexMatrix::diagonal(&[1.0, -1.0]);
        assert!((trace_norm(&d).unwrap() - 2.0).abs() < 1e-12);
        let rho = ComplexMatrix::diagonal(&[0.25, 0.75]);
        assert!((trace_norm(&rho).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trace_norm_rejects_non_square() {
        let m = ComplexMatrix::zeros(2, 3);
        assert!(matches!(trace_norm(&m), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn entropy_values() {
        let pure = ComplexMatrix::diagonal(&[1.0, 0.0, 0.0]);
        assert!(vn_entropy(&pure).unwrap().abs() < 1e-12);

        let mixed = ComplexMatrix::diagonal(&[0.5, 0.5]);
        assert!((vn_entropy(&mixed).unwrap() - 1.0).abs() < 1e-12);

        // two-level spectrum from the worked boundary example
        let biased = ComplexMatrix::diagonal(&[0.3, 0.7]);
        assert!((vn_entropy(&biased).unwrap() - 0.8813).abs() < 5e-4);
    }

    #[test]
    fn entropy_rejects_bad_input() {
        let not_unit = ComplexMatrix::diagonal(&[0.6, 0.6]);
        assert!(vn_entropy(&not_unit).is_err());
        let not_psd = ComplexMatrix::diagonal(&[1.2, -0.2]);
        assert!(vn_entropy(&not_psd).is_err());
    }

    #[test]
    fn entropy_unitary_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = ComplexMatrix::diagonal(&[0.1, 0.2, 0.3, 0.4]);
        // rotate by the unitary from a random Hermitian eigenbasis
        let u = hermitian_eigs(&random_hermitian(4, &mut rng)).unwrap().vectors;
        let rotated = u.matmul(&rho).matmul(&u.adjoint());
        let s0 = vn_entropy(&rho).unwrap();
        let s1 = vn_entropy(&rotated).unwrap();
        assert!((s0 - s1).abs() < 1e-9);
    }
}
