//! The typing judgement `E ⊢ P`: derivation checking, algorithmic
//! synthesis and expansion of derived rules.

mod check;
mod derivation;
mod entail;
mod expand;
mod synth;

pub use check::{bracket, check_derivation, is_bang_context, new_binders, tuple_names, wrap_news, TypingError};
pub use derivation::{Conclusion, Derivation, TypingRule, DERIVATION_FORMAT};
pub use entail::{discharge, entails_abstracted, Obligation};
pub use expand::{expand_derived, new_star, new_star_node};
pub use synth::{check, factor, factor_candidates, synthesize, CheckOutcome, Factored, NameTypes, Shape};
