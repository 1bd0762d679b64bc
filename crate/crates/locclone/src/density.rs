//! Bipartite density matrices and the operations that act on the A|B split:
//! partial transpose, partial trace, grouped tensor products and the quantum
//! relative entropy.

use std::io::{BufRead, Write};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigs, Complex64, ComplexMatrix, LN_2};
use crate::tol;

/// Which subsystem of a bipartite state an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// A density matrix together with its Alice/Bob dimension split.
///
/// Construction validates Hermiticity, unit trace and positive
/// semidefiniteness, so holding a value of this type certifies a physical
/// state (within the tolerances of [`crate::tol`]).
#[derive(Debug, Clone)]
pub struct BipartiteDensity {
    mat: ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
}

impl BipartiteDensity {
    pub fn new(mat: ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::InvalidParameter("zero subsystem dimension".into()));
        }
        let d = dim_a * dim_b;
        if !mat.is_square() || mat.rows() != d {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for split {}x{}",
                mat.rows(),
                mat.cols(),
                dim_a,
                dim_b
            )));
        }
        let defect = mat.hermiticity_defect();
        if defect > tol::HERMITICITY {
            return Err(Error::InvalidDensity(format!(
                "Hermiticity defect {defect:e}"
            )));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > tol::UNIT_TRACE || tr.im.abs() > tol::UNIT_TRACE {
            return Err(Error::InvalidDensity(format!("trace {tr} is not 1")));
        }
        let eig = hermitian_eigs(&mat)?;
        if eig.values[0] < tol::PSD_FLOOR {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {:e}",
                eig.values[0]
            )));
        }
        Ok(Self { mat, dim_a, dim_b })
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    /// Transpose Bob's index pair only:
    /// `<i,j| rho^TB |k,l> = <i,l| rho |k,j>`.
    pub fn partial_transpose(&self) -> ComplexMatrix {
        partial_transpose_of(&self.mat, self.dim_a, self.dim_b)
    }

    /// Reduced state of the kept subsystem.
    pub fn partial_trace(&self, keep: Side) -> ComplexMatrix {
        let (da, db) = (self.dim_a, self.dim_b);
        match keep {
            Side::A => {
                let mut out = ComplexMatrix::zeros(da, da);
                for i in 0..da {
                    for k in 0..da {
                        let mut sum = Complex64::new(0.0, 0.0);
                        for j in 0..db {
                            sum += self.mat.get(i * db + j, k * db + j);
                        }
                        out.set(i, k, sum);
                    }
                }
                out
            }
            Side::B => {
                let mut out = ComplexMatrix::zeros(db, db);
                for j in 0..db {
                    for l in 0..db {
                        let mut sum = Complex64::new(0.0, 0.0);
                        for i in 0..da {
                            sum += self.mat.get(i * db + j, i * db + l);
                        }
                        out.set(j, l, sum);
                    }
                }
                out
            }
        }
    }

    /// Tensor product regrouped so that both A factors form the joint A side
    /// and both B factors the joint B side: the (A1|B1) x (A2|B2) composite
    /// becomes (A1 A2 | B1 B2).
    pub fn grouped_tensor(&self, other: &Self) -> Self {
        let (da1, db1) = (self.dim_a, self.dim_b);
        let (da2, db2) = (other.dim_a, other.dim_b);
        let (da, db) = (da1 * da2, db1 * db2);
        let d = da * db;
        let mut out = ComplexMatrix::zeros(d, d);
        let idx = |a1: usize, a2: usize, b1: usize, b2: usize| {
            ((a1 * da2 + a2) * db1 + b1) * db2 + b2
        };
        for a1 in 0..da1 {
            for b1 in 0..db1 {
                for a1p in 0..da1 {
                    for b1p in 0..db1 {
                        let v1 = self.mat.get(a1 * db1 + b1, a1p * db1 + b1p);
                        if v1 == Complex64::new(0.0, 0.0) {
                            continue;
                        }
                        for a2 in 0..da2 {
                            for b2 in 0..db2 {
                                for a2p in 0..da2 {
                                    for b2p in 0..db2 {
                                        let v2 = other.mat.get(a2 * db2 + b2, a2p * db2 + b2p);
                                        let r = idx(a1, a2, b1, b2);
                                        let c = idx(a1p, a2p, b1p, b2p);
                                        out.set(r, c, out.get(r, c) + v1 * v2);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Self { mat: out, dim_a: da, dim_b: db }
    }

    /// Write in the DMAT text format.
    pub fn write_dmat<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "DMAT {} {}", self.dim_a, self.dim_b)?;
        let d = self.dim();
        for i in 0..d {
            let row: Vec<String> = (0..d)
                .map(|j| {
                    let z = self.mat.get(i, j);
                    format!("{:.16e},{:.16e}", z.re, z.im)
                })
                .collect();
            writeln!(w, "{}", row.join(" "))?;
        }
        Ok(())
    }

    /// Read the DMAT text format. Lines starting with `#` are comments.
    pub fn read_dmat<R: BufRead>(r: &mut R) -> Result<Self> {
        let mut lines = content_lines(r)?;
        if lines.is_empty() {
            return Err(Error::MalformedFile("empty DMAT input".into()));
        }
        let header = lines.remove(0);
        let mut it = header.split_whitespace();
        if it.next() != Some("DMAT") {
            return Err(Error::MalformedFile("missing DMAT header".into()));
        }
        let dim_a = parse_dim(it.next())?;
        let dim_b = parse_dim(it.next())?;
        let d = dim_a * dim_b;
        if lines.len() != d {
            return Err(Error::MalformedFile(format!(
                "expected {} rows, found {}",
                d,
                lines.len()
            )));
        }
        let mut entries = Vec::with_capacity(d * d);
        for line in &lines {
            let row: Vec<&str> = line.split_whitespace().collect();
            if row.len() != d {
                return Err(Error::MalformedFile(format!(
                    "expected {} entries per row, found {}",
                    d,
                    row.len()
                )));
            }
            for tok in row {
                entries.push(parse_complex(tok)?);
            }
        }
        let mat = ComplexMatrix::new(d, d, entries)
            .map_err(|e| Error::MalformedFile(e.to_string()))?;
        Self::new(mat, dim_a, dim_b).map_err(|e| Error::MalformedFile(e.to_string()))
    }
}

/// Partial transpose of a raw matrix over the given split. The result of
/// transposing an entangled state is typically not positive semidefinite,
/// so it is returned as a bare matrix.
pub fn partial_transpose_of(
    mat: &ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
) -> ComplexMatrix {
    let d = dim_a * dim_b;
    let mut out = ComplexMatrix::zeros(d, d);
    for i in 0..dim_a {
        for j in 0..dim_b {
            for k in 0..dim_a {
                for l in 0..dim_b {
                    out.set(
                        i * dim_b + j,
                        k * dim_b + l,
                        mat.get(i * dim_b + l, k * dim_b + j),
                    );
                }
            }
        }
    }
    out
}

pub(crate) fn content_lines<R: BufRead>(r: &mut R) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut buf = String::new();
    loop {
        buf.clear();
        if r.read_line(&mut buf)? == 0 {
            break;
        }
        let line = buf.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(line.to_string());
    }
    Ok(out)
}

fn parse_dim(tok: Option<&str>) -> Result<usize> {
    let d: usize = tok
        .ok_or_else(|| Error::MalformedFile("missing dimension".into()))?
        .parse()
        .map_err(|_| Error::MalformedFile("bad dimension".into()))?;
    if d == 0 {
        return Err(Error::MalformedFile("zero dimension".into()));
    }
    Ok(d)
}

pub(crate) fn parse_complex(tok: &str) -> Result<Complex64> {
    let (re, im) = tok
        .split_once(',')
        .ok_or_else(|| Error::MalformedFile(format!("bad complex entry `{tok}`")))?;
    let re: f64 = re
        .trim()
        .parse()
        .map_err(|_| Error::MalformedFile(format!("bad real part `{re}`")))?;
    let im: f64 = im
        .trim()
        .parse()
        .map_err(|_| Error::MalformedFile(format!("bad imaginary part `{im}`")))?;
    Ok(Complex::new(re, im))
}

/// Quantum relative entropy `S(rho || sigma)` in bits.
///
/// Returns `f64::INFINITY` when `rho` has support on the null space of
/// `sigma`; that is a legitimate value of the functional, not an error.
pub fn relative_entropy(rho: &BipartiteDensity, sigma: &BipartiteDensity) -> Result<f64> {
    if rho.dim_a() != sigma.dim_a() || rho.dim_b() != sigma.dim_b() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            rho.dim_a(),
            rho.dim_b(),
            sigma.dim_a(),
            sigma.dim_b()
        )));
    }
    let er = hermitian_eigs(rho.mat())?;
    let es = hermitian_eigs(sigma.mat())?;
    relative_entropy_from_eigs(&er.values, &er.vectors, &es.values, &es.vectors)
}

pub(crate) fn relative_entropy_from_eigs(
    p: &[f64],
    u: &ComplexMatrix,
    q: &[f64],
    v: &ComplexMatrix,
) -> Result<f64> {
    let d = p.len();
    // overlap[i][j] = |<u_i | v_j>|^2
    let gram = u.adjoint().matmul(v);
    let mut first = 0.0;
    let mut second = 0.0;
    for i in 0..d {
        let pi = p[i].max(0.0);
        if pi > tol::EIG_ZERO {
            first += pi * pi.ln() / LN_2;
        }
        let mut null_overlap = 0.0;
        for j in 0..d {
            let o = gram.get(i, j).norm_sqr();
            if q[j] <= tol::EIG_ZERO {
                null_overlap += o;
            } else {
                second += pi * o * q[j].ln() / LN_2;
            }
        }
        if pi > tol::SUPPORT_OVERLAP && null_overlap > tol::SUPPORT_OVERLAP {
            return Ok(f64::INFINITY);
        }
    }
    Ok(first - second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_density;
    use crate::states::{bell, SchmidtKind};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_invalid_densities() {
        // non-Hermitian
        let m = ComplexMatrix::new(2, 2, vec![c(0.5, 0.0), c(0.3, 0.0), c(0.0, 0.0), c(0.5, 0.0)])
            .unwrap();
        assert!(BipartiteDensity::new(m, 1, 2).is_err());
        // wrong trace
        let m = ComplexMatrix::diagonal(&[0.7, 0.7]);
        assert!(BipartiteDensity::new(m, 1, 2).is_err());
        // not PSD
        let m = ComplexMatrix::diagonal(&[1.5, -0.5]);
        assert!(BipartiteDensity::new(m, 1, 2).is_err());
        // dimension mismatch
        let m = ComplexMatrix::diagonal(&[0.5, 0.5]);
        assert!(BipartiteDensity::new(m, 2, 2).is_err());
    }

    #[test]
    fn partial_transpose_of_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_density(2, 1, &mut rng);
        let b = random_density(1, 2, &mut rng);
        // build sigma_A (x) sigma_B as a 2x2 split
        let prod = BipartiteDensity::new(a.mat().tensor(b.mat()), 2, 2).unwrap();
        let pt = prod.partial_transpose();
        let expect = a.mat().tensor(&b.mat().transpose());
        assert!(pt.max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn partial_transpose_is_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let rho = random_density(2, 2, &mut rng);
            let pt = rho.partial_transpose();
            // PT of an entangled state need not be PSD, hence the raw path
            let ptpt = partial_transpose_of(&pt, 2, 2);
            assert!(ptpt.max_abs_diff(rho.mat()) < 1e-14);
        }
    }

    #[test]
    fn bell_partial_transpose_spectrum() {
        let rho = bell(0, 0).density();
        let eig = hermitian_eigs(&rho.partial_transpose()).unwrap();
        let expect = [-0.5, 0.5, 0.5, 0.5];
        for (v, e) in eig.values.iter().zip(expect) {
            assert!((v - e).abs() < 1e-12, "{v} vs {e}");
        }
        // trace norm of the partial transpose is the absolute-eigenvalue sum
        let tn = crate::matrix::trace_norm(&rho.partial_transpose()).unwrap();
        assert!((tn - 2.0).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_of_bell_is_maximally_mixed() {
        let rho = bell(0, 0).density();
        let red = rho.partial_trace(Side::A);
        let expect = ComplexMatrix::identity(2).scale(c(0.5, 0.0));
        assert!(red.max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn partial_trace_of_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let a = random_density(1, 2, &mut rng);
        let b = random_density(1, 2, &mut rng);
        let prod = BipartiteDensity::new(a.mat().tensor(b.mat()), 2, 2).unwrap();
        assert!(prod.partial_trace(Side::A).max_abs_diff(a.mat()) < 1e-13);
        assert!(prod.partial_trace(Side::B).max_abs_diff(b.mat()) < 1e-13);
    }

    #[test]
    fn grouped_tensor_matches_schmidt_product() {
        // two pure Schmidt states: grouped product spectrum = outer product
        let s1 = crate::states::schmidt_state(SchmidtKind::Psi1, 0.6).unwrap().density();
        let s2 = crate::states::schmidt_state(SchmidtKind::Psi3, 0.3).unwrap().density();
        let g = s1.grouped_tensor(&s2);
        assert_eq!(g.dim_a(), 4);
        assert_eq!(g.dim_b(), 4);
        assert!((g.mat().trace().re - 1.0).abs() < 1e-12);
        // spectrum of a product of rank-1 projectors is rank-1
        let eig = hermitian_eigs(g.mat()).unwrap();
        assert!((eig.values[15] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn relative_entropy_basics() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let rho = random_density(2, 2, &mut rng);
        assert!(relative_entropy(&rho, &rho).unwrap().abs() < 1e-10);

        let bell00 = bell(0, 0).density();
        let max_mixed = BipartiteDensity::new(
            ComplexMatrix::identity(4).scale(c(0.25, 0.0)),
            2,
            2,
        )
        .unwrap();
        assert!((relative_entropy(&bell00, &max_mixed).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn relative_entropy_support_sentinel() {
        let bell00 = bell(0, 0).density();
        // sigma = |00><00| : Bell state has weight on its null space
        let mut m = ComplexMatrix::zeros(4, 4);
        m.set(0, 0, c(1.0, 0.0));
        let sigma = BipartiteDensity::new(m, 2, 2).unwrap();
        assert!(relative_entropy(&bell00, &sigma).unwrap().is_infinite());
    }

    #[test]
    fn relative_entropy_additive_on_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..5 {
            let r1 = random_density(2, 2, &mut rng);
            let r2 = random_density(2, 2, &mut rng);
            let s1 = random_density(2, 2, &mut rng);
            let s2 = random_density(2, 2, &mut rng);
            let joint_r = r1.grouped_tensor(&r2);
            let joint_s = s1.grouped_tensor(&s2);
            let lhs = relative_entropy(&joint_r, &joint_s).unwrap();
            let rhs = relative_entropy(&r1, &s1).unwrap() + relative_entropy(&r2, &s2).unwrap();
            assert!((lhs - rhs).abs() < 1e-9, "lhs={lhs} rhs={rhs}");
        }
    }

    #[test]
    fn relative_entropy_nonnegative() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for _ in 0..10 {
            let rho = random_density(2, 2, &mut rng);
            let sigma = random_density(2, 2, &mut rng);
            assert!(relative_entropy(&rho, &sigma).unwrap() >= -1e-10);
        }
    }

    #[test]
    fn dmat_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let rho = random_density(2, 2, &mut rng);
        let mut buf = Vec::new();
        rho.write_dmat(&mut buf).unwrap();
        let back = BipartiteDensity::read_dmat(&mut buf.as_slice()).unwrap();
        assert_eq!(back.dim_a(), 2);
        assert!(back.mat().max_abs_diff(rho.mat()) < 1e-15);
    }

    #[test]
    fn dmat_rejects_garbage() {
        let text = "DMAT 2 2\n1,0 0,0\n";
        assert!(BipartiteDensity::read_dmat(&mut text.as_bytes()).is_err());
        let text = "DMAT a 2\n";
        assert!(BipartiteDensity::read_dmat(&mut text.as_bytes()).is_err());
        let text = "";
        assert!(BipartiteDensity::read_dmat(&mut text.as_bytes()).is_err());
    }
}
