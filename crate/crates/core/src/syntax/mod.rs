//! Abstract syntax for types, environment formulas and processes.

pub mod formula;
pub mod name;
pub mod process;
pub mod types;

pub use formula::{annotate, exp_literal, ArityMismatch, Atom, Formula, Literal};
pub use name::{Fresh, Name};
pub use process::{Kind, Process};
pub use types::{Behaviour, Capability, Exponent, Polarity};
