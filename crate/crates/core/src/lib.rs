//! A toolchain for the polyadic π-calculus typed by entailment in
//! multiplicative-exponential linear logic.
//!
//! Environments are MELL formulas over capability assignments `x : T`, and
//! subtyping `E ≤ F` is provability of `⊢ E⊥, F`. The crate provides the
//! syntax, a proof kernel with a bounded prover, the typing rules with
//! derivation checking and inference, reduction with a subject-reduction
//! harness, and translations from i/o types, HYB and session types.

pub mod dynamics;
pub mod encodings;
pub mod mell;
pub mod surface;
pub mod syntax;
pub mod typing;

pub use syntax::*;
