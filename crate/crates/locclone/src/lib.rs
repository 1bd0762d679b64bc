//! Entanglement monotones and feasibility bounds for exact cloning of
//! entangled qubits under local operations and classical communication.
//!
//! The core question: given two orthogonal, equally entangled two-qubit
//! states and a pure entangled blank copy, can any LOCC protocol clone
//! them exactly? Entanglement monotones give computable obstructions.
//! Negativity cannot increase under LOCC, so comparing the negativity of
//! the would-be cloner input (source mixture plus blank) against its
//! output (doubled mixture) rules scenarios out; solving the comparison
//! for the blank gives the minimal blank-copy entanglement. The same
//! bookkeeping with relative entropy of entanglement shows that cloning
//! any three Bell states needs log2(3) ebits in the blank, more than any
//! two-qubit state can carry.
//!
//! Modules:
//! - [`matrix`]: dense complex matrices, Hermitian eigendecomposition,
//!   trace norm, von Neumann entropy.
//! - [`density`]: bipartite density matrices, partial transpose/trace,
//!   relative entropy, DMAT file format.
//! - [`states`]: Bell states, Schmidt-form families, mixtures, cloner
//!   input/output pairs, PVEC file format.
//! - [`monotones`]: negativity, entanglement entropy, hashing bound.
//! - [`ree`]: upper bounds on relative entropy of entanglement via descent
//!   over explicit separable decompositions.
//! - [`analysis`]: closed forms, verdicts, blank boundaries, sweeps, the
//!   three-Bell accounting and closed-form-vs-numeric crosschecks.
//! - [`verify`]: the deterministic verification suite behind
//!   `locclone verify`.
//!
//! With the default `parallel` feature, sweeps, crosschecks and optimizer
//! restarts run on rayon; disabling it yields a fully sequential build
//! with identical outputs.

pub mod analysis;
pub mod cli;
pub mod density;
pub mod error;
mod exec;
pub mod matrix;
pub mod monotones;
pub mod random;
pub mod ree;
pub mod states;
pub mod tol;
pub mod verify;

pub use analysis::{
    bell3_report, blank_boundary, closed_form, crosscheck, crosscheck_points,
    maximal_blank_range, sweep, sweep_row, verdict, Bell3Report, Bell3Verdict, BoundaryResult,
    FeasibilityVerdict, RangeResult, SweepRow, Verdict,
};
pub use density::{partial_transpose_of, relative_entropy, BipartiteDensity, Side};
pub use error::{Error, Result};
pub use matrix::{hermitian_eigs, trace_norm, vn_entropy, Complex64, ComplexMatrix};
pub use monotones::{binary_entropy, entanglement_entropy, hashing_lower_bound, negativity};
pub use ree::{ree_upper_bound, ree_upper_bound_seeded, ReeParams, ReeResult, SeparableEnsemble};
pub use states::{
    bell, build_cloning_pair, build_three_bell_pair, mix, permute_to_alice_bob, schmidt_state,
    CloneCase, CloningIO, Owner, PureState, Scenario, SchmidtKind,
};
