//! MELL proof objects, the proof checker, bounded proof search and the
//! proof transformations used by typing (cut composition, substitution,
//! interpolation).

mod check;
mod interpolate;
mod ops;
mod profile;
mod proof;
mod search;

pub use check::{check_proof, ProofError};
pub use interpolate::{interpolate, Interpolant, InterpolationError};
pub use ops::{cut_compose, cut_on, empty, mix, rewrite_at, substitute_proof, CutMismatch};
pub use profile::{Profile, Schema};
pub use proof::{eta_expand, Proof, Rule, PROOF_FORMAT};
pub use search::{canonical, entails, prove, Budget, Diagnostics, ProveOutcome, BUDGET_ENV};
