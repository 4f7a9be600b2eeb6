//! Discharging subtyping obligations.
//!
//! Subformulas shared verbatim by both sides are first replaced by fresh
//! propositional atoms, which keeps exponentials inside them out of the
//! search; the proof is mapped back by substitution. If that fails the
//! obligation is retried as is.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::mell::{entails, substitute_proof, Budget, Profile, Proof, ProveOutcome};
use crate::syntax::{Atom, Formula, Name};

/// An entailment `lhs ≤ rhs` and what became of it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obligation {
    pub lhs: Formula,
    pub rhs: Formula,
    pub outcome: String,
}

impl fmt::Display for Obligation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <= {}: {}", self.lhs, self.rhs, self.outcome)
    }
}

impl Obligation {
    pub fn new(lhs: &Formula, rhs: &Formula, outcome: &ProveOutcome) -> Self {
        let outcome = match outcome {
            ProveOutcome::Unknown(d) => format!("unknown ({})", d.summary()),
            o => o.label().to_string(),
        };
        Obligation { lhs: lhs.clone(), rhs: rhs.clone(), outcome }
    }
}

fn placeholder(i: usize) -> Atom {
    // `%` cannot appear in parsed identifiers
    Atom::Var(Name::new(format!("%{i}")))
}

fn abstract_with(f: &Formula, opaque: &[Formula]) -> Formula {
    if let Some(i) = opaque.iter().position(|o| o == f) {
        return Formula::atom(placeholder(i));
    }
    match f {
        Formula::Tensor(a, b) => Formula::tensor(abstract_with(a, opaque), abstract_with(b, opaque)),
        Formula::Par(a, b) => Formula::par(abstract_with(a, opaque), abstract_with(b, opaque)),
        Formula::Bang(a) => Formula::bang(abstract_with(a, opaque)),
        Formula::Quest(a) => Formula::quest(abstract_with(a, opaque)),
        _ => f.clone(),
    }
}

/// Proves `lhs ≤ rhs` with each `opaque` subformula treated as an atom.
pub fn entails_abstracted(lhs: &Formula, rhs: &Formula, opaque: &[Formula], profile: Profile, budget: Budget) -> ProveOutcome {
    let (l, r) = (abstract_with(lhs, opaque), abstract_with(rhs, opaque));
    match entails(&l, &r, profile, budget) {
        ProveOutcome::Proved(p) => {
            let p = opaque.iter().enumerate().fold(p, |p, (i, o)| substitute_proof(&p, &placeholder(i), o));
            debug_assert_eq!(p.conclusion, vec![lhs.negate(), rhs.clone()]);
            ProveOutcome::Proved(p)
        }
        other => other,
    }
}

/// Maximal subformulas of `rhs` that also occur in `lhs` and are worth
/// hiding (not bare literals).
fn shared_subformulas(lhs: &Formula, rhs: &Formula) -> Vec<Formula> {
    fn collect<'a>(f: &'a Formula, out: &mut HashSet<&'a Formula>) {
        out.insert(f);
        match f {
            Formula::Tensor(a, b) | Formula::Par(a, b) => {
                collect(a, out);
                collect(b, out);
            }
            Formula::Bang(a) | Formula::Quest(a) => collect(a, out),
            _ => {}
        }
    }
    fn pick(f: &Formula, seen: &HashSet<&Formula>, out: &mut Vec<Formula>) {
        if seen.contains(f) && !matches!(f, Formula::Lit(_) | Formula::One | Formula::Bot) {
            if !out.contains(f) {
                out.push(f.clone());
            }
            return;
        }
        match f {
            Formula::Tensor(a, b) | Formula::Par(a, b) => {
                pick(a, seen, out);
                pick(b, seen, out);
            }
            _ => {}
        }
    }
    let mut seen = HashSet::new();
    collect(lhs, &mut seen);
    let mut out = Vec::new();
    pick(rhs, &seen, &mut out);
    out
}

/// `lhs ≤ rhs`, trying the abstracted problem first. A `Refuted` answer only
/// ever comes from the unabstracted search.
pub fn discharge(lhs: &Formula, rhs: &Formula, profile: Profile, budget: Budget) -> ProveOutcome {
    let shared = shared_subformulas(lhs, rhs);
    if !shared.is_empty() {
        if let ProveOutcome::Proved(p) = entails_abstracted(lhs, rhs, &shared, profile, budget) {
            return ProveOutcome::Proved(p);
        }
    }
    entails(lhs, rhs, profile, budget)
}

/// A proof of `lhs ≤ rhs` or the failed obligation.
pub fn discharge_or(lhs: &Formula, rhs: &Formula, profile: Profile, budget: Budget) -> Result<Proof, Obligation> {
    match discharge(lhs, rhs, profile, budget) {
        ProveOutcome::Proved(p) => Ok(p),
        o => Err(Obligation::new(lhs, rhs, &o)),
    }
}
