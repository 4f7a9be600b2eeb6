//! Structural congruence via a canonical form.
//!
//! Binders are first made distinct, so scope extrusion always applies:
//! every `new` not under a prefix is hoisted to the top of its thread
//! group, `0` components vanish and the remaining prefixed components are
//! sorted. Prefix bodies are normalised recursively.

use std::collections::{BTreeMap, HashSet};

use crate::syntax::{Behaviour, Kind, Name, Process};

/// A `new` binder pulled out of a parallel composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binder {
    pub name: Name,
    pub payload: Behaviour,
    pub kind: Kind,
}

/// `ν binders (components)` with every component a prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    pub binders: Vec<Binder>,
    pub components: Vec<Process>,
}

impl Flat {
    pub fn to_process(&self) -> Process {
        let body = Process::par_all(self.components.iter().cloned());
        self.binders.iter().rev().fold(body, |p, b| Process::new_chan(b.name.clone(), b.payload.clone(), b.kind, p))
    }
}

fn flatten(p: &Process, binders: &mut Vec<Binder>, components: &mut Vec<Process>) {
    match p {
        Process::Nop => {}
        Process::Par(a, b) => {
            flatten(a, binders, components);
            flatten(b, binders, components);
        }
        Process::New { binder, payload, kind, body } => {
            binders.push(Binder { name: binder.clone(), payload: payload.clone(), kind: *kind });
            flatten(body, binders, components);
        }
        Process::In { subject, binders: xs, body } => {
            components.push(Process::input(subject.clone(), xs.clone(), normal(body)));
        }
        Process::RepIn { subject, binders: xs, body } => {
            components.push(Process::rep_input(subject.clone(), xs.clone(), normal(body)));
        }
        Process::Out { subject, objects, cont } => {
            components.push(Process::output(subject.clone(), objects.clone(), normal(cont)));
        }
    }
}

/// Occurrence order of names in a term (subjects, objects, binders).
fn occurrences(p: &Process, out: &mut Vec<Name>) {
    match p {
        Process::Nop => {}
        Process::In { subject, binders, body } | Process::RepIn { subject, binders, body } => {
            out.push(subject.clone());
            out.extend(binders.iter().cloned());
            occurrences(body, out);
        }
        Process::Out { subject, objects, cont } => {
            out.push(subject.clone());
            out.extend(objects.iter().cloned());
            occurrences(cont, out);
        }
        Process::Par(a, b) => {
            occurrences(a, out);
            occurrences(b, out);
        }
        Process::New { binder, body, .. } => {
            out.push(binder.clone());
            occurrences(body, out);
        }
    }
}

/// Sorts components by their text with hoisted names masked (so the order
/// does not depend on how bound names are spelled), then by plain text;
/// binders follow the order in which their names first occur.
fn arrange(mut flat: Flat) -> Flat {
    let mask: BTreeMap<Name, Name> = flat.binders.iter().map(|b| (b.name.clone(), Name::new("·"))).collect();
    let mut keyed: Vec<(String, String, Process)> =
        flat.components.drain(..).map(|c| (c.substitute(&mask).to_string(), c.to_string(), c)).collect();
    keyed.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    flat.components = keyed.into_iter().map(|(_, _, c)| c).collect();
    let mut order = Vec::new();
    for c in &flat.components {
        occurrences(c, &mut order);
    }
    let mut rank: BTreeMap<Name, usize> = BTreeMap::new();
    for (i, n) in order.into_iter().enumerate() {
        rank.entry(n).or_insert(i);
    }
    flat.binders.sort_by(|a, b| {
        let ka = (rank.get(&a.name).copied().unwrap_or(usize::MAX), a.payload.to_string(), a.kind);
        let kb = (rank.get(&b.name).copied().unwrap_or(usize::MAX), b.payload.to_string(), b.kind);
        ka.cmp(&kb)
    });
    flat
}

fn normal(p: &Process) -> Process {
    let mut binders = Vec::new();
    let mut components = Vec::new();
    flatten(p, &mut binders, &mut components);
    arrange(Flat { binders, components }).to_process()
}

/// The canonical flat form of `p` (binders made distinct first).
pub fn flat_form(p: &Process) -> Flat {
    let mut binders = Vec::new();
    let mut components = Vec::new();
    flatten(&p.uniquify(), &mut binders, &mut components);
    arrange(Flat { binders, components })
}

pub fn congruence_normalize(p: &Process) -> Process {
    flat_form(p).to_process()
}

pub fn congruent(p: &Process, q: &Process) -> bool {
    congruence_normalize(p).alpha_eq(&congruence_normalize(q))
}

/// Whether the names bound by `new` are pairwise distinct and distinct
/// from free names.
pub fn has_distinct_binders(p: &Process) -> bool {
    let mut seen: HashSet<Name> = p.free_names().into_iter().collect();
    let mut ok = true;
    fn go(p: &Process, seen: &mut HashSet<Name>, ok: &mut bool) {
        match p {
            Process::Nop => {}
            Process::In { binders, body, .. } | Process::RepIn { binders, body, .. } => {
                for b in binders {
                    *ok &= seen.insert(b.clone());
                }
                go(body, seen, ok);
            }
            Process::Out { cont, .. } => go(cont, seen, ok),
            Process::Par(a, b) => {
                go(a, seen, ok);
                go(b, seen, ok);
            }
            Process::New { binder, body, .. } => {
                *ok &= seen.insert(binder.clone());
                go(body, seen, ok);
            }
        }
    }
    go(p, &mut seen, &mut ok);
    ok
}
