//! Construction of the states under study: Bell states, the two-qubit
//! Schmidt-form families, mixtures, and the matched input/output pairs fed
//! to a hypothetical local cloner.
//!
//! The cloner itself is never modelled; only the states it would have to
//! accept and produce are built, with explicit bookkeeping of which tensor
//! slots belong to Alice and which to Bob.

use std::io::{BufRead, Write};

use crate::density::{content_lines, parse_complex, BipartiteDensity};
use crate::error::{Error, Result};
use crate::matrix::{Complex64, ComplexMatrix};
use crate::tol;

/// A normalized pure state with an Alice/Bob split.
#[derive(Debug, Clone)]
pub struct PureState {
    amp: Vec<Complex64>,
    dim_a: usize,
    dim_b: usize,
}

impl PureState {
    pub fn new(amp: Vec<Complex64>, dim_a: usize, dim_b: usize) -> Result<Self> {
        if amp.len() != dim_a * dim_b || dim_a == 0 || dim_b == 0 {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for split {}x{}",
                amp.len(),
                dim_a,
                dim_b
            )));
        }
        let norm = amp.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > tol::STATE_NORM {
            return Err(Error::InvalidParameter(format!(
                "amplitude vector has norm {norm}"
            )));
        }
        Ok(Self { amp, dim_a, dim_b })
    }

    pub fn amp(&self) -> &[Complex64] {
        &self.amp
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.amp.len(), other.amp.len(), "dimension mismatch");
        self.amp
            .iter()
            .zip(&other.amp)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Rank-1 projector onto this state.
    ///
    /// The projector is normalized by the squared amplitude norm so its
    /// trace is exactly one up to rounding.
    pub fn density(&self) -> BipartiteDensity {
        let d = self.amp.len();
        let norm_sqr: f64 = self.amp.iter().map(|z| z.norm_sqr()).sum();
        let mut m = ComplexMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m.set(i, j, self.amp[i] * self.amp[j].conj() / norm_sqr);
            }
        }
        BipartiteDensity::new(m, self.dim_a, self.dim_b)
            .expect("projector onto a normalized state is a density matrix")
    }

    /// Write in the PVEC text format.
    pub fn write_pvec<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "PVEC {} {}", self.dim_a, self.dim_b)?;
        for z in &self.amp {
            writeln!(w, "{:.16e},{:.16e}", z.re, z.im)?;
        }
        Ok(())
    }

    /// Read the PVEC text format. Lines starting with `#` are comments.
    pub fn read_pvec<R: BufRead>(r: &mut R) -> Result<Self> {
        let mut lines = content_lines(r)?;
        if lines.is_empty() {
            return Err(Error::MalformedFile("empty PVEC input".into()));
        }
        let header = lines.remove(0);
        let mut it = header.split_whitespace();
        if it.next() != Some("PVEC") {
            return Err(Error::MalformedFile("missing PVEC header".into()));
        }
        let dim_a: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::MalformedFile("bad PVEC dimension".into()))?;
        let dim_b: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::MalformedFile("bad PVEC dimension".into()))?;
        if lines.len() != dim_a * dim_b {
            return Err(Error::MalformedFile(format!(
                "expected {} amplitudes, found {}",
                dim_a * dim_b,
                lines.len()
            )));
        }
        let amp = lines
            .iter()
            .map(|l| parse_complex(l))
            .collect::<Result<Vec<_>>>()?;
        Self::new(amp, dim_a, dim_b).map_err(|e| Error::MalformedFile(e.to_string()))
    }
}

/// The four two-qubit Schmidt-form families studied here.
///
/// `Phi` is the blank-copy family; its coefficient is conventionally
/// written `c` but occupies the same slot as `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchmidtKind {
    /// a|00> + b|11>
    Psi1,
    /// b|00> - a|11>
    Psi2,
    /// a|01> + b|10>
    Psi3,
    /// c|00> + d|11>
    Phi,
}

impl SchmidtKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "psi1" => Some(Self::Psi1),
            "psi2" => Some(Self::Psi2),
            "psi3" => Some(Self::Psi3),
            "phi" => Some(Self::Phi),
            _ => None,
        }
    }
}

/// Bell state `(1/sqrt2) sum_j exp(2 pi i j n / 2) |j>|j xor m>`.
///
/// `bell(0,0)` is (|00>+|11>)/sqrt2 and `bell(1,0)` is (|01>+|10>)/sqrt2.
pub fn bell(m: u8, n: u8) -> PureState {
    assert!(m <= 1 && n <= 1, "bell indices are bits");
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut amp = vec![Complex64::new(0.0, 0.0); 4];
    for j in 0..2u8 {
        // exp(2 pi i j n / 2) = (-1)^(j n)
        let sign = if j * n == 1 { -s } else { s };
        let col = (j ^ m) as usize;
        amp[(j as usize) * 2 + col] = Complex64::new(sign, 0.0);
    }
    PureState::new(amp, 2, 2).expect("Bell amplitudes are normalized")
}

/// Two-qubit state of the given Schmidt family with coefficient `a`,
/// second coefficient `sqrt(1 - a^2)`.
pub fn schmidt_state(kind: SchmidtKind, a: f64) -> Result<PureState> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "degenerate product state: coefficient {a} outside (0, 1)"
        )));
    }
    let b = (1.0 - a * a).sqrt();
    let z = Complex64::new(0.0, 0.0);
    let r = |x: f64| Complex64::new(x, 0.0);
    let amp = match kind {
        SchmidtKind::Psi1 | SchmidtKind::Phi => vec![r(a), z, z, r(b)],
        SchmidtKind::Psi2 => vec![r(b), z, z, r(-a)],
        SchmidtKind::Psi3 => vec![z, r(a), r(b), z],
    };
    PureState::new(amp, 2, 2)
}

/// Convex mixture of density matrices.
pub fn mix(terms: &[(f64, &BipartiteDensity)]) -> Result<BipartiteDensity> {
    if terms.is_empty() {
        return Err(Error::InvalidParameter("empty mixture".into()));
    }
    let total: f64 = terms.iter().map(|(w, _)| w).sum();
    if terms.iter().any(|(w, _)| *w <= 0.0) {
        return Err(Error::InvalidParameter("non-positive mixture weight".into()));
    }
    if (total - 1.0).abs() > tol::UNIT_TRACE {
        return Err(Error::InvalidParameter(format!(
            "mixture weights sum to {total}"
        )));
    }
    let (da, db) = (terms[0].1.dim_a(), terms[0].1.dim_b());
    let d = da * db;
    let mut acc = ComplexMatrix::zeros(d, d);
    for (w, rho) in terms {
        if rho.dim_a() != da || rho.dim_b() != db {
            return Err(Error::DimensionMismatch(
                "mixture terms have different splits".into(),
            ));
        }
        acc = acc.add(&rho.mat().scale(Complex64::new(*w, 0.0)));
    }
    BipartiteDensity::new(acc, da, db)
}

/// Ownership tag for one qubit slot of a multi-qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Owner {
    Alice,
    Bob,
}

/// Permute the qubit slots of `mat` so all Alice slots (in their original
/// order) come before all Bob slots, returning the regrouped density.
///
/// Slot 0 is the most significant bit of the basis index. The permutation
/// is a similarity transform, so the spectrum is untouched.
pub fn permute_to_alice_bob(mat: &ComplexMatrix, layout: &[Owner]) -> Result<BipartiteDensity> {
    let n = layout.len();
    let dim = 1usize << n;
    if !mat.is_square() || mat.rows() != dim {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix for a {}-slot layout",
            mat.rows(),
            mat.cols(),
            n
        )));
    }
    let n_alice = layout.iter().filter(|o| **o == Owner::Alice).count();
    let n_bob = n - n_alice;
    if n_alice == 0 || n_bob == 0 {
        return Err(Error::InvalidParameter(
            "layout must contain both Alice and Bob slots".into(),
        ));
    }
    let mut perm = vec![0usize; dim];
    for (idx, target) in perm.iter_mut().enumerate() {
        let mut a_bits = 0usize;
        let mut b_bits = 0usize;
        for (slot, owner) in layout.iter().enumerate() {
            let bit = (idx >> (n - 1 - slot)) & 1;
            match owner {
                Owner::Alice => a_bits = (a_bits << 1) | bit,
                Owner::Bob => b_bits = (b_bits << 1) | bit,
            }
        }
        *target = (a_bits << n_bob) | b_bits;
    }
    let mut out = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            out.set(perm[i], perm[j], mat.get(i, j));
        }
    }
    BipartiteDensity::new(out, 1 << n_alice, 1 << n_bob)
}

/// Which of the two equally-entangled orthogonal pairs is being cloned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CloneCase {
    /// Pair lying in the same plane: Psi1 with Psi2.
    I,
    /// Pair lying in different planes: Psi1 with Psi3.
    II,
}

impl std::fmt::Display for CloneCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CloneCase::I => write!(f, "I"),
            CloneCase::II => write!(f, "II"),
        }
    }
}

/// Scenario descriptor carried by a [`CloningIO`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scenario {
    TwoState { case: CloneCase, a: f64, c: f64 },
    ThreeBell,
}

/// A matched (input, output) pair for a cloning scenario, after regrouping
/// to the joint Alice/Bob split.
#[derive(Debug, Clone)]
pub struct CloningIO {
    pub rho_in: BipartiteDensity,
    pub rho_out: BipartiteDensity,
    pub scenario: Scenario,
    /// Slot ownership of the input state before regrouping.
    pub layout_in: Vec<Owner>,
    /// Slot ownership of the output state before regrouping.
    pub layout_out: Vec<Owner>,
}

fn kron_amp(x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for a in x {
        for b in y {
            out.push(a * b);
        }
    }
    out
}

fn projector(amp: &[Complex64]) -> ComplexMatrix {
    let d = amp.len();
    let mut m = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            m.set(i, j, amp[i] * amp[j].conj());
        }
    }
    m
}

/// Cloner input and output for the two-state scenarios.
///
/// Input: equal mixture of the pair, tensored with the blank `Phi(c)`,
/// slot order (A1, B1, A_blank, B_blank). Output: equal mixture of the
/// doubled states, slot order (A1, B1, A2, B2). Both are regrouped to
/// dimA = dimB = 4, Alice holding the first qubit of every pair.
pub fn build_cloning_pair(case: CloneCase, a: f64, c: f64) -> Result<CloningIO> {
    let (first, second) = match case {
        CloneCase::I => (SchmidtKind::Psi1, SchmidtKind::Psi2),
        CloneCase::II => (SchmidtKind::Psi1, SchmidtKind::Psi3),
    };
    let psi_a = schmidt_state(first, a)?;
    let psi_b = schmidt_state(second, a)?;
    let blank = schmidt_state(SchmidtKind::Phi, c)?;

    let layout = vec![Owner::Alice, Owner::Bob, Owner::Alice, Owner::Bob];

    let half = Complex64::new(0.5, 0.0);
    let mixed_in = projector(psi_a.amp())
        .scale(half)
        .add(&projector(psi_b.amp()).scale(half));
    let rho_in_raw = mixed_in.tensor(&projector(blank.amp()));
    let rho_in = permute_to_alice_bob(&rho_in_raw, &layout)?;

    let doubled_a = kron_amp(psi_a.amp(), psi_a.amp());
    let doubled_b = kron_amp(psi_b.amp(), psi_b.amp());
    let rho_out_raw = projector(&doubled_a)
        .scale(half)
        .add(&projector(&doubled_b).scale(half));
    let rho_out = permute_to_alice_bob(&rho_out_raw, &layout)?;

    Ok(CloningIO {
        rho_in,
        rho_out,
        scenario: Scenario::TwoState { case, a, c },
        layout_in: layout.clone(),
        layout_out: layout,
    })
}

/// Cloner input and output for the three-Bell scenario.
///
/// Input: the equal mixture of the doubled Bell states B00, B01, B10
/// tensored with the blank, slot order (A1, B1, A2, B2, A_blank, B_blank).
/// Output: the equal mixture of the tripled Bell states. Both regrouped to
/// dimA = dimB = 8.
pub fn build_three_bell_pair(blank: &PureState) -> Result<CloningIO> {
    if blank.dim_a() != 2 || blank.dim_b() != 2 {
        return Err(Error::DimensionMismatch(
            "blank state must be a two-qubit state".into(),
        ));
    }
    let labels = [(0u8, 0u8), (0, 1), (1, 0)];
    let third = Complex64::new(1.0 / 3.0, 0.0);
    let layout = vec![
        Owner::Alice,
        Owner::Bob,
        Owner::Alice,
        Owner::Bob,
        Owner::Alice,
        Owner::Bob,
    ];

    let mut in_raw = ComplexMatrix::zeros(64, 64);
    let mut out_raw = ComplexMatrix::zeros(64, 64);
    for (m, n) in labels {
        let b = bell(m, n);
        let doubled = kron_amp(b.amp(), b.amp());
        let tripled = kron_amp(&doubled, b.amp());
        in_raw = in_raw.add(&projector(&kron_amp(&doubled, blank.amp())).scale(third));
        out_raw = out_raw.add(&projector(&tripled).scale(third));
    }
    let rho_in = permute_to_alice_bob(&in_raw, &layout)?;
    let rho_out = permute_to_alice_bob(&out_raw, &layout)?;

    Ok(CloningIO {
        rho_in,
        rho_out,
        scenario: Scenario::ThreeBell,
        layout_in: layout.clone(),
        layout_out: layout,
    })
}
