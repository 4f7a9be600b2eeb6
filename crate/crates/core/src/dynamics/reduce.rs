//! Reduction on canonical forms, traces and the subject-reduction harness.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::congruence::{congruence_normalize, flat_form, Flat};
use crate::mell::{Budget, Profile};
use crate::syntax::{Formula, Kind, Name, Process};
use crate::typing::{check, Obligation};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Tau,
    /// Communication on a free name.
    On(Name),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Tau => f.write_str("tau"),
            Label::On(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub label: Label,
    pub process: Process,
}

/// A redex whose output and input disagree on the number of names.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("arity mismatch on `{subject}`: {sent} name(s) sent, {expected} expected")]
pub struct ArityDiagnostic {
    pub subject: Name,
    pub sent: usize,
    pub expected: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Reducts {
    pub steps: Vec<Step>,
    pub diagnostics: Vec<ArityDiagnostic>,
}

/// All one-step reducts of `p` up to congruence, in a deterministic order.
pub fn reduce_steps(p: &Process) -> Reducts {
    let flat = flat_form(p);
    let mut out = Reducts::default();
    let cs = &flat.components;
    for (i, c) in cs.iter().enumerate() {
        let Process::Out { subject: u, objects, cont } = c else { continue };
        for (j, d) in cs.iter().enumerate() {
            let (binders, body, replicated) = match d {
                Process::In { subject, binders, body } if subject == u => (binders, body, false),
                Process::RepIn { subject, binders, body } if subject == u => (binders, body, true),
                _ => continue,
            };
            if binders.len() != objects.len() {
                out.diagnostics.push(ArityDiagnostic { subject: u.clone(), sent: objects.len(), expected: binders.len() });
                continue;
            }
            let subst: BTreeMap<Name, Name> = binders.iter().cloned().zip(objects.iter().cloned()).collect();
            let mut components: Vec<Process> =
                cs.iter().enumerate().filter(|&(k, _)| k != i && (k != j || replicated)).map(|(_, c)| c.clone()).collect();
            components.push((**cont).clone());
            components.push(body.substitute(&subst));
            let mut next = Flat { binders: flat.binders.clone(), components };
            let label = match next.binders.iter().position(|b| &b.name == u) {
                Some(k) => {
                    if next.binders[k].kind == Kind::Lin {
                        next.binders.remove(k);
                    }
                    Label::Tau
                }
                None => Label::On(u.clone()),
            };
            let process = congruence_normalize(&next.to_process());
            if !out.steps.iter().any(|s| s.label == label && s.process.alpha_eq(&process)) {
                out.steps.push(Step { label, process });
            }
        }
    }
    out.steps.sort_by(|a, b| (&a.label, a.process.to_string()).cmp(&(&b.label, b.process.to_string())));
    out
}

/// τ-steps only.
pub fn tau_steps(p: &Process) -> Vec<Process> {
    reduce_steps(p).steps.into_iter().filter(|s| s.label == Label::Tau).map(|s| s.process).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    AllBranches,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub root: Process,
    pub steps: Vec<Step>,
    /// No reduct exists at the end of the trace.
    pub exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceTree {
    pub process: Process,
    pub children: Vec<(Label, TraceTree)>,
    pub exhausted: bool,
}

impl TraceTree {
    pub fn depth(&self) -> usize {
        self.children.iter().map(|(_, t)| 1 + t.depth()).max().unwrap_or(0)
    }

    pub fn render(&self) -> String {
        fn go(t: &TraceTree, indent: usize, label: Option<&Label>, out: &mut String) {
            out.push_str(&"  ".repeat(indent));
            if let Some(l) = label {
                out.push_str(&format!("--{l}--> "));
            }
            out.push_str(&t.process.to_string());
            if t.exhausted {
                out.push_str("  [stuck]");
            }
            out.push('\n');
            for (l, c) in &t.children {
                go(c, indent + 1, Some(l), out);
            }
        }
        let mut s = String::new();
        go(self, 0, None, &mut s);
        s
    }
}

/// Follows the first reduct at each step.
pub fn trace_leftmost(p: &Process, max_steps: usize) -> Trace {
    let root = congruence_normalize(p);
    let mut cur = root.clone();
    let mut steps = Vec::new();
    for _ in 0..max_steps {
        match reduce_steps(&cur).steps.into_iter().next() {
            Some(s) => {
                cur = s.process.clone();
                steps.push(s);
            }
            None => return Trace { root, steps, exhausted: true },
        }
    }
    let exhausted = reduce_steps(&cur).steps.is_empty();
    Trace { root, steps, exhausted }
}

/// Every branch, to depth `max_steps`.
pub fn trace_all(p: &Process, max_steps: usize) -> TraceTree {
    let process = congruence_normalize(p);
    let steps = reduce_steps(&process).steps;
    let exhausted = steps.is_empty();
    let children =
        if max_steps == 0 { vec![] } else { steps.into_iter().map(|s| (s.label, trace_all(&s.process, max_steps - 1))).collect() };
    TraceTree { process, children, exhausted }
}

/// Length of the leftmost τ-only run, up to `bound` (`None` if longer).
pub fn private_run_length(p: &Process, bound: usize) -> Option<usize> {
    let mut cur = congruence_normalize(p);
    for n in 0..=bound {
        match tau_steps(&cur).into_iter().next() {
            Some(q) => cur = q,
            None => return Some(n),
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionFailure {
    /// The τ-path from the root to the offending term.
    pub path: Vec<Process>,
    pub outcome: String,
    pub obligations: Vec<Obligation>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SubjectReductionReport {
    pub states: usize,
    pub steps: usize,
    pub failures: Vec<ReductionFailure>,
}

impl SubjectReductionReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Re-checks `e ⊢ p′` for every `p′` reachable by τ-steps within
/// `max_steps`. States are visited once (by their canonical text).
pub fn subject_reduction_check(e: &Formula, p: &Process, max_steps: usize, profile: Profile, budget: Budget) -> SubjectReductionReport {
    let mut report = SubjectReductionReport::default();
    let root = congruence_normalize(p);
    let mut seen: HashSet<String> = HashSet::from([root.to_string()]);
    let mut queue = VecDeque::from([(root, vec![], 0usize)]);
    while let Some((q, path, depth)) = queue.pop_front() {
        report.states += 1;
        if depth == max_steps {
            continue;
        }
        for r in tau_steps(&q) {
            report.steps += 1;
            let mut rpath: Vec<Process> = path.clone();
            rpath.push(r.clone());
            if !seen.insert(r.to_string()) {
                continue;
            }
            match check(e, &r, profile, budget) {
                Ok(o) if o.is_typed() => {}
                Ok(o) => report.failures.push(ReductionFailure {
                    path: rpath.clone(),
                    outcome: o.label().into(),
                    obligations: o.obligations().to_vec(),
                }),
                Err(err) => report.failures.push(ReductionFailure { path: rpath.clone(), outcome: err.to_string(), obligations: vec![] }),
            }
            queue.push_back((r, rpath, depth + 1));
        }
    }
    report
}
