//! Process terms of the polyadic π-calculus with typed name creation.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::name::{Fresh, Name};
use super::types::Behaviour;

/// Kind of a created channel: linear (`1`) or replicable (`ω`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    Lin,
    Omega,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Process {
    Nop,
    In { subject: Name, binders: Vec<Name>, body: Box<Process> },
    RepIn { subject: Name, binders: Vec<Name>, body: Box<Process> },
    Out { subject: Name, objects: Vec<Name>, cont: Box<Process> },
    Par(Box<Process>, Box<Process>),
    New { binder: Name, payload: Behaviour, kind: Kind, body: Box<Process> },
}

impl Process {
    pub fn input(subject: impl Into<Name>, binders: Vec<Name>, body: Process) -> Self {
        Process::In { subject: subject.into(), binders, body: Box::new(body) }
    }

    pub fn rep_input(subject: impl Into<Name>, binders: Vec<Name>, body: Process) -> Self {
        Process::RepIn { subject: subject.into(), binders, body: Box::new(body) }
    }

    pub fn output(subject: impl Into<Name>, objects: Vec<Name>, cont: Process) -> Self {
        Process::Out { subject: subject.into(), objects, cont: Box::new(cont) }
    }

    pub fn par(p: Process, q: Process) -> Self {
        Process::Par(Box::new(p), Box::new(q))
    }

    /// Left-nested parallel composition; `0` when empty.
    pub fn par_all<I: IntoIterator<Item = Process>>(items: I) -> Process {
        items.into_iter().reduce(Process::par).unwrap_or(Process::Nop)
    }

    pub fn new_chan(binder: impl Into<Name>, payload: Behaviour, kind: Kind, body: Process) -> Self {
        Process::New { binder: binder.into(), payload, kind, body: Box::new(body) }
    }

    pub fn size(&self) -> usize {
        match self {
            Process::Nop => 1,
            Process::In { body, .. } | Process::RepIn { body, .. } => 1 + body.size(),
            Process::Out { cont, .. } => 1 + cont.size(),
            Process::Par(p, q) => 1 + p.size() + q.size(),
            Process::New { body, .. } => 1 + body.size(),
        }
    }

    pub fn free_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        let note = |n: &Name, bound: &Vec<Name>, out: &mut BTreeSet<Name>| {
            if !bound.contains(n) {
                out.insert(n.clone());
            }
        };
        match self {
            Process::Nop => {}
            Process::In { subject, binders, body } | Process::RepIn { subject, binders, body } => {
                note(subject, bound, out);
                let depth = bound.len();
                bound.extend(binders.iter().cloned());
                body.collect_free(bound, out);
                bound.truncate(depth);
            }
            Process::Out { subject, objects, cont } => {
                note(subject, bound, out);
                for o in objects {
                    note(o, bound, out);
                }
                cont.collect_free(bound, out);
            }
            Process::Par(p, q) => {
                p.collect_free(bound, out);
                q.collect_free(bound, out);
            }
            Process::New { binder, body, .. } => {
                bound.push(binder.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every name occurring in the term, bound or free.
    pub fn all_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.visit_names(&mut |n| {
            out.insert(n.clone());
        });
        out
    }

    fn visit_names(&self, f: &mut impl FnMut(&Name)) {
        match self {
            Process::Nop => {}
            Process::In { subject, binders, body } | Process::RepIn { subject, binders, body } => {
                f(subject);
                binders.iter().for_each(&mut *f);
                body.visit_names(f);
            }
            Process::Out { subject, objects, cont } => {
                f(subject);
                objects.iter().for_each(&mut *f);
                cont.visit_names(f);
            }
            Process::Par(p, q) => {
                p.visit_names(f);
                q.visit_names(f);
            }
            Process::New { binder, body, .. } => {
                f(binder);
                body.visit_names(f);
            }
        }
    }

    /// Capture-avoiding substitution of free names.
    pub fn substitute(&self, subst: &BTreeMap<Name, Name>) -> Process {
        if subst.is_empty() {
            return self.clone();
        }
        let mut fresh = Fresh::avoiding(self.all_names());
        fresh.reserve_all(subst.keys());
        fresh.reserve_all(subst.values());
        self.subst_with(subst, &mut fresh)
    }

    fn subst_with(&self, subst: &BTreeMap<Name, Name>, fresh: &mut Fresh) -> Process {
        let map = |n: &Name| subst.get(n).cloned().unwrap_or_else(|| n.clone());
        match self {
            Process::Nop => Process::Nop,
            Process::In { subject, binders, body } | Process::RepIn { subject, binders, body } => {
                let (binders, body) = under_binders(binders, body, subst, fresh);
                if matches!(self, Process::In { .. }) {
                    Process::In { subject: map(subject), binders, body: Box::new(body) }
                } else {
                    Process::RepIn { subject: map(subject), binders, body: Box::new(body) }
                }
            }
            Process::Out { subject, objects, cont } => Process::Out {
                subject: map(subject),
                objects: objects.iter().map(map).collect(),
                cont: Box::new(cont.subst_with(subst, fresh)),
            },
            Process::Par(p, q) => Process::par(p.subst_with(subst, fresh), q.subst_with(subst, fresh)),
            Process::New { binder, payload, kind, body } => {
                let (mut bs, body) = under_binders(std::slice::from_ref(binder), body, subst, fresh);
                Process::New { binder: bs.remove(0), payload: payload.clone(), kind: *kind, body: Box::new(body) }
            }
        }
    }

    /// Alpha-renames binders so that every binder is distinct from every
    /// other binder and from every free name.
    pub fn uniquify(&self) -> Process {
        let mut fresh = Fresh::avoiding(self.all_names());
        let mut seen: BTreeSet<Name> = self.free_names();
        self.uniquify_with(&mut seen, &mut fresh)
    }

    fn uniquify_with(&self, seen: &mut BTreeSet<Name>, fresh: &mut Fresh) -> Process {
        let mut pick = |b: &Name, seen: &mut BTreeSet<Name>| -> Name {
            if seen.insert(b.clone()) {
                b.clone()
            } else {
                let n = fresh.fresh(b);
                seen.insert(n.clone());
                n
            }
        };
        match self {
            Process::Nop => Process::Nop,
            Process::In { subject, binders, body } | Process::RepIn { subject, binders, body } => {
                let new_binders: Vec<Name> = binders.iter().map(|b| pick(b, seen)).collect();
                let ren: BTreeMap<Name, Name> = binders.iter().cloned().zip(new_binders.iter().cloned()).filter(|(a, b)| a != b).collect();
                let body = body.substitute(&ren).uniquify_with(seen, fresh);
                if matches!(self, Process::In { .. }) {
                    Process::In { subject: subject.clone(), binders: new_binders, body: Box::new(body) }
                } else {
                    Process::RepIn { subject: subject.clone(), binders: new_binders, body: Box::new(body) }
                }
            }
            Process::Out { subject, objects, cont } => {
                Process::Out { subject: subject.clone(), objects: objects.clone(), cont: Box::new(cont.uniquify_with(seen, fresh)) }
            }
            Process::Par(p, q) => {
                let p = p.uniquify_with(seen, fresh);
                Process::par(p, q.uniquify_with(seen, fresh))
            }
            Process::New { binder, payload, kind, body } => {
                let nb = pick(binder, seen);
                let body =
                    if &nb != binder { body.substitute(&[(binder.clone(), nb.clone())].into_iter().collect()) } else { (**body).clone() };
                Process::New { binder: nb, payload: payload.clone(), kind: *kind, body: Box::new(body.uniquify_with(seen, fresh)) }
            }
        }
    }

    /// Structural equality up to renaming of bound names.
    pub fn alpha_eq(&self, other: &Process) -> bool {
        alpha(self, other, &mut HashMap::new(), &mut HashMap::new(), &mut 0)
    }
}

fn under_binders(binders: &[Name], body: &Process, subst: &BTreeMap<Name, Name>, fresh: &mut Fresh) -> (Vec<Name>, Process) {
    let mut inner: BTreeMap<Name, Name> = subst.iter().filter(|(k, _)| !binders.contains(k)).map(|(k, v)| (k.clone(), v.clone())).collect();
    let body_free = body.free_names();
    let range: BTreeSet<Name> = inner.iter().filter(|(k, _)| body_free.contains(*k)).map(|(_, v)| v.clone()).collect();
    let mut new_binders = Vec::with_capacity(binders.len());
    for b in binders {
        if range.contains(b) {
            let nb = fresh.fresh(b);
            inner.insert(b.clone(), nb.clone());
            new_binders.push(nb);
        } else {
            new_binders.push(b.clone());
        }
    }
    (new_binders, body.subst_with(&inner, fresh))
}

fn alpha(p: &Process, q: &Process, lp: &mut HashMap<Name, Vec<usize>>, lq: &mut HashMap<Name, Vec<usize>>, next: &mut usize) -> bool {
    fn same(a: &Name, b: &Name, lp: &HashMap<Name, Vec<usize>>, lq: &HashMap<Name, Vec<usize>>) -> bool {
        match (lp.get(a).and_then(|v| v.last()), lq.get(b).and_then(|v| v.last())) {
            (Some(i), Some(j)) => i == j,
            (None, None) => a == b,
            _ => false,
        }
    }
    fn bind(xs: &[Name], ys: &[Name], lp: &mut HashMap<Name, Vec<usize>>, lq: &mut HashMap<Name, Vec<usize>>, next: &mut usize) {
        for (x, y) in xs.iter().zip(ys) {
            *next += 1;
            lp.entry(x.clone()).or_default().push(*next);
            lq.entry(y.clone()).or_default().push(*next);
        }
    }
    fn unbind(xs: &[Name], ys: &[Name], lp: &mut HashMap<Name, Vec<usize>>, lq: &mut HashMap<Name, Vec<usize>>) {
        for (x, y) in xs.iter().zip(ys) {
            lp.get_mut(x).map(|v| v.pop());
            lq.get_mut(y).map(|v| v.pop());
        }
    }
    match (p, q) {
        (Process::Nop, Process::Nop) => true,
        (Process::In { subject: s1, binders: b1, body: p1 }, Process::In { subject: s2, binders: b2, body: p2 })
        | (Process::RepIn { subject: s1, binders: b1, body: p1 }, Process::RepIn { subject: s2, binders: b2, body: p2 }) => {
            if !same(s1, s2, lp, lq) || b1.len() != b2.len() {
                return false;
            }
            bind(b1, b2, lp, lq, next);
            let r = alpha(p1, p2, lp, lq, next);
            unbind(b1, b2, lp, lq);
            r
        }
        (Process::Out { subject: s1, objects: o1, cont: p1 }, Process::Out { subject: s2, objects: o2, cont: p2 }) => {
            same(s1, s2, lp, lq)
                && o1.len() == o2.len()
                && o1.iter().zip(o2).all(|(a, b)| same(a, b, lp, lq))
                && alpha(p1, p2, lp, lq, next)
        }
        (Process::Par(a1, b1), Process::Par(a2, b2)) => alpha(a1, a2, lp, lq, next) && alpha(b1, b2, lp, lq, next),
        (Process::New { binder: x1, payload: t1, kind: k1, body: p1 }, Process::New { binder: x2, payload: t2, kind: k2, body: p2 }) => {
            if t1 != t2 || k1 != k2 {
                return false;
            }
            let (b1, b2) = (std::slice::from_ref(x1), std::slice::from_ref(x2));
            bind(b1, b2, lp, lq, next);
            let r = alpha(p1, p2, lp, lq, next);
            unbind(b1, b2, lp, lq);
            r
        }
        _ => false,
    }
}
