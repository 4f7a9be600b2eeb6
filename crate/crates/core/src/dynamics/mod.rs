//! Structural congruence, reduction and the subject-reduction harness.

mod congruence;
pub mod corpus;
mod reduce;

pub use congruence::{congruence_normalize, congruent, flat_form, has_distinct_binders, Binder, Flat};
pub use reduce::{
    private_run_length, reduce_steps, subject_reduction_check, tau_steps, trace_all, trace_leftmost, ArityDiagnostic, Label,
    ReductionFailure, Reducts, Step, Strategy, SubjectReductionReport, Trace, TraceTree,
};
