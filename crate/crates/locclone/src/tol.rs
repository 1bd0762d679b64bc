//! Numerical tolerances used across the crate.
//!
//! All thresholds are centralized here so that every validation and clipping
//! rule is pinned in one place rather than scattered as magic numbers.

/// Maximum entrywise deviation from `M = M†` accepted as Hermitian.
pub const HERMITICITY: f64 = 1e-12;

/// Maximum deviation of a density-matrix trace from one.
pub const UNIT_TRACE: f64 = 1e-12;

/// Looser trace tolerance accepted by entropy functionals, which often
/// receive matrices assembled from several floating-point reductions.
pub const ENTROPY_TRACE: f64 = 1e-9;

/// Most negative eigenvalue accepted as "positive semidefinite".
/// Eigensolver noise on rank-deficient states sits well below this.
pub const PSD_FLOOR: f64 = -1e-10;

/// Eigenvalues at or below this are treated as exact zeros when taking
/// logarithms (entropy terms contribute nothing) and when identifying the
/// null space of the second relative-entropy argument.
pub const EIG_ZERO: f64 = 1e-12;

/// Squared-overlap threshold with a null space that triggers the infinite
/// relative-entropy sentinel.
pub const SUPPORT_OVERLAP: f64 = 1e-10;

/// Norm deviation accepted for pure-state amplitude vectors.
pub const STATE_NORM: f64 = 1e-12;

/// Margin half-width inside which a feasibility comparison is reported as
/// an exact boundary rather than a strict inequality.
pub const VERDICT_MARGIN: f64 = 1e-9;

/// Agreement required between closed-form and numerically recomputed
/// negativities.
pub const CROSSCHECK: f64 = 1e-8;
