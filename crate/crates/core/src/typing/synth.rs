//! Algorithmic typing: bottom-up synthesis of an environment, with `sub`
//! only above `in`, `in-bang` and `new` rules and at the root.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::check::{bracket, is_bang_context, TypingError};
use super::derivation::{Derivation, TypingRule};
use super::entail::{discharge, Obligation};
use crate::mell::{Budget, Profile, Proof, ProveOutcome};
use crate::syntax::{annotate, Behaviour, Capability, Formula, Kind, Name, Polarity, Process};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum CheckOutcome {
    Typed { derivation: Derivation },
    Untyped { obligations: Vec<Obligation> },
    Unknown { obligations: Vec<Obligation> },
}

impl CheckOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            CheckOutcome::Typed { .. } => "Typed",
            CheckOutcome::Untyped { .. } => "Untyped",
            CheckOutcome::Unknown { .. } => "Unknown",
        }
    }

    pub fn derivation(&self) -> Option<&Derivation> {
        match self {
            CheckOutcome::Typed { derivation } => Some(derivation),
            _ => None,
        }
    }

    pub fn is_typed(&self) -> bool {
        matches!(self, CheckOutcome::Typed { .. })
    }

    pub fn obligations(&self) -> &[Obligation] {
        match self {
            CheckOutcome::Typed { .. } => &[],
            CheckOutcome::Untyped { obligations } | CheckOutcome::Unknown { obligations } => obligations,
        }
    }
}

/// Premiss patterns of the rules that constrain their premiss.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    /// `[x]^k_B ⊗ E`
    New { name: Name, payload: Behaviour, kind: Kind },
    /// `x̃:A ⊗ E`
    In { names: Vec<Name>, payload: Behaviour },
    /// `x̃:A ⊗ E!`
    InBang { names: Vec<Name>, payload: Behaviour },
}

impl Shape {
    fn names(&self) -> Vec<Name> {
        match self {
            Shape::New { name, .. } => vec![name.clone()],
            Shape::In { names, .. } | Shape::InBang { names, .. } => names.clone(),
        }
    }

    fn head(&self) -> Result<Formula, TypingError> {
        match self {
            Shape::New { name, payload, kind } => Ok(bracket(name, payload, *kind)),
            Shape::In { names, payload } | Shape::InBang { names, payload } => annotate(names, payload)
                .map_err(|m| TypingError::SchemaMismatch { path: vec![], reason: format!("{} binder(s) for arity {}", m.names, m.arity) }),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Factored {
    /// The `E` of the shape.
    pub context: Formula,
    pub premiss: Formula,
    /// `premiss ≤ f`; `None` when they are equal.
    pub proof: Option<Proof>,
}

/// Removes literals on `names`, collapsing what is left; `None` if nothing is.
fn remove(f: &Formula, names: &BTreeSet<Name>) -> Option<Formula> {
    match f {
        Formula::Lit(l) => match l.atom.channel() {
            Some(n) if names.contains(n) => None,
            _ => Some(f.clone()),
        },
        Formula::Tensor(a, b) | Formula::Par(a, b) => match (remove(a, names), remove(b, names)) {
            (None, x) | (x, None) => x,
            (Some(x), Some(y)) => Some(if matches!(f, Formula::Tensor(..)) { Formula::tensor(x, y) } else { Formula::par(x, y) }),
        },
        Formula::Bang(a) => remove(a, names).map(Formula::bang),
        Formula::Quest(a) => remove(a, names).map(Formula::quest),
        Formula::One | Formula::Bot => Some(f.clone()),
    }
}

fn mentions_any(f: &Formula, names: &BTreeSet<Name>) -> bool {
    names.iter().any(|n| f.mentions(n))
}

/// Paths of ⅋ nodes with the removed names on both sides: communication
/// across them links the two sides, so they are candidates for becoming ⊗.
fn joins(f: &Formula, names: &BTreeSet<Name>, path: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    match f {
        Formula::Par(a, b) | Formula::Tensor(a, b) => {
            if matches!(f, Formula::Par(..)) && mentions_any(a, names) && mentions_any(b, names) {
                out.push(path.clone());
            }
            for (i, c) in [a, b].into_iter().enumerate() {
                path.push(i as u8);
                joins(c, names, path, out);
                path.pop();
            }
        }
        Formula::Bang(a) | Formula::Quest(a) => {
            path.push(0);
            joins(a, names, path, out);
            path.pop();
        }
        _ => {}
    }
}

fn convert(f: &Formula, at: &[Vec<u8>], path: &mut Vec<u8>) -> Formula {
    let mut sub = |c: &Formula, i: u8| {
        path.push(i);
        let r = convert(c, at, path);
        path.pop();
        r
    };
    match f {
        Formula::Par(a, b) => {
            let (x, y) = (sub(a, 0), sub(b, 1));
            if at.iter().any(|p| p == path) {
                Formula::tensor(x, y)
            } else {
                Formula::par(x, y)
            }
        }
        Formula::Tensor(a, b) => {
            let (x, y) = (sub(a, 0), sub(b, 1));
            Formula::tensor(x, y)
        }
        Formula::Bang(a) => Formula::bang(sub(a, 0)),
        Formula::Quest(a) => Formula::quest(sub(a, 0)),
        _ => f.clone(),
    }
}

/// Reassociates every ⅋-cluster as `others ⅋ (m1 ⅋ (m2 ⅋ …))` with the
/// members that mention `names` grouped to the right, so joins connect just
/// those members.
fn regroup(f: &Formula, names: &BTreeSet<Name>) -> Formula {
    fn members(f: &Formula, names: &BTreeSet<Name>, out: &mut Vec<Formula>) {
        match f {
            Formula::Par(a, b) => {
                members(a, names, out);
                members(b, names, out);
            }
            _ => out.push(regroup(f, names)),
        }
    }
    match f {
        Formula::Par(..) => {
            let mut ms = Vec::new();
            members(f, names, &mut ms);
            let (g, o): (Vec<Formula>, Vec<Formula>) = ms.into_iter().partition(|m| mentions_any(m, names));
            let g = g.into_iter().rev().reduce(|acc, m| Formula::par(m, acc));
            match (o.is_empty(), g) {
                (_, None) => Formula::par_all(o),
                (true, Some(g)) => g,
                (false, Some(g)) => Formula::par(Formula::par_all(o), g),
            }
        }
        Formula::Tensor(a, b) => Formula::tensor(regroup(a, names), regroup(b, names)),
        Formula::Bang(a) => Formula::bang(regroup(a, names)),
        Formula::Quest(a) => Formula::quest(regroup(a, names)),
        _ => f.clone(),
    }
}

fn ones_to_bots(f: &Formula) -> Formula {
    match f {
        Formula::One => Formula::Bot,
        Formula::Tensor(a, b) => Formula::tensor(ones_to_bots(a), ones_to_bots(b)),
        Formula::Par(a, b) => Formula::par(ones_to_bots(a), ones_to_bots(b)),
        _ => f.clone(),
    }
}

fn bots_to_ones(f: &Formula) -> Formula {
    match f {
        Formula::Bot => Formula::One,
        Formula::Tensor(a, b) => Formula::tensor(bots_to_ones(a), bots_to_ones(b)),
        Formula::Par(a, b) => Formula::par(bots_to_ones(a), bots_to_ones(b)),
        _ => f.clone(),
    }
}

/// `!l1 ⊗ … ⊗ !ln` over the distinct literals of `f`.
fn bangify(f: &Formula) -> Formula {
    let mut lits = Vec::new();
    for l in f.literals() {
        if !lits.contains(&l) {
            lits.push(l);
        }
    }
    Formula::tensor_all(lits.into_iter().map(|l| Formula::bang(Formula::Lit(l))))
}

/// Candidate contexts, in the order they are tried.
pub fn factor_candidates(f: &Formula, shape: &Shape) -> Vec<Formula> {
    let names: BTreeSet<Name> = shape.names().into_iter().collect();
    let f = &regroup(f, &names);
    let mut js = Vec::new();
    joins(f, &names, &mut Vec::new(), &mut js);
    let subsets: Vec<Vec<Vec<u8>>> = if js.len() <= 4 {
        let mut all: Vec<Vec<Vec<u8>>> = (0u32..1 << js.len())
            .map(|m| js.iter().enumerate().filter(|(i, _)| m & (1 << i) != 0).map(|(_, p)| p.clone()).collect())
            .collect();
        all.sort_by_key(Vec::len);
        all
    } else {
        vec![vec![], js]
    };
    let mut out: Vec<Formula> = Vec::new();
    // second round: units beside a removed literal go with it
    for absorb in [false, true] {
        for s in &subsets {
            let mut g = convert(f, s, &mut Vec::new());
            if absorb {
                g = g.drop_neutral_units();
            }
            let e = remove(&g, &names).map(|e| e.drop_neutral_units()).unwrap_or(Formula::One);
            let es = if matches!(shape, Shape::InBang { .. }) {
                if is_bang_context(&e) {
                    vec![e]
                } else {
                    vec![bangify(&e)]
                }
            } else {
                let ones = bots_to_ones(&e).drop_neutral_units();
                let bots = ones_to_bots(&e).drop_neutral_units();
                vec![e, ones, bots]
            };
            for e in es {
                if !out.contains(&e) {
                    out.push(e);
                }
            }
        }
    }
    out
}

/// Puts `f` into the premiss shape: finds `E` with `shape(E) ≤ f`, trying
/// syntactic candidates in order and verifying each with the prover.
pub fn factor(f: &Formula, shape: &Shape, profile: Profile, budget: Budget) -> Result<Result<Factored, Vec<Obligation>>, TypingError> {
    let head = shape.head()?;
    let mut tried = Vec::new();
    for e in factor_candidates(f, shape) {
        let premiss = Formula::tensor(head.clone(), e.clone());
        if premiss == *f {
            return Ok(Ok(Factored { context: e, premiss, proof: None }));
        }
        match discharge(&premiss, f, profile, budget) {
            ProveOutcome::Proved(p) => return Ok(Ok(Factored { context: e, premiss, proof: Some(p) })),
            o => tried.push(Obligation::new(&premiss, f, &o)),
        }
    }
    Ok(Err(tried))
}

/// Payload types of names: bound names from their binders, free ones from
/// the hint or from outputs on typed names. A free name may carry different
/// payloads at its two polarities; the other polarity is the fallback.
#[derive(Debug, Clone, Default)]
pub struct NameTypes {
    free: HashMap<(Name, Polarity), Behaviour>,
}

impl NameTypes {
    pub fn from_hint(hint: Option<&Formula>) -> Self {
        let mut free = HashMap::new();
        for l in hint.map(Formula::literals).unwrap_or_default() {
            if let crate::syntax::Atom::Assign(n, c) = &l.atom {
                free.entry((n.clone(), c.polarity)).or_insert_with(|| (*c.payload).clone());
            }
        }
        NameTypes { free }
    }

    pub fn get(&self, n: &Name, polarity: Polarity) -> Option<&Behaviour> {
        let key = |p| (n.clone(), p);
        self.free.get(&key(polarity)).or_else(|| self.free.get(&key(polarity.flip())))
    }

    /// Propagates types from outputs `u<ṽ>` with `u` typed to free `ṽ`.
    pub fn infer_from_uses(&mut self, p: &Process) {
        loop {
            let mut changed = false;
            self.visit(p, &HashMap::new(), &mut changed);
            if !changed {
                break;
            }
        }
    }

    fn visit(&mut self, p: &Process, scope: &HashMap<Name, Option<Behaviour>>, changed: &mut bool) {
        let lookup = |s: &Self, n: &Name, pol| match scope.get(n) {
            Some(t) => t.clone(),
            None => s.get(n, pol).cloned(),
        };
        match p {
            Process::Nop => {}
            Process::Par(a, b) => {
                self.visit(a, scope, changed);
                self.visit(b, scope, changed);
            }
            Process::Out { subject, objects, cont } => {
                if let Some(a) = lookup(self, subject, Polarity::Output) {
                    if objects.len() == a.arity() {
                        for (v, (_, cap)) in objects.iter().zip(a.leaves()) {
                            if !scope.contains_key(v) && self.get(v, cap.polarity).is_none() {
                                self.free.insert((v.clone(), cap.polarity), (*cap.payload).clone());
                                *changed = true;
                            }
                        }
                    }
                }
                self.visit(cont, scope, changed);
            }
            Process::In { subject, binders, body } | Process::RepIn { subject, binders, body } => {
                let mut inner = scope.clone();
                let payloads = lookup(self, subject, Polarity::Input).and_then(|a| binder_payloads(binders, &a));
                for (i, x) in binders.iter().enumerate() {
                    inner.insert(x.clone(), payloads.as_ref().map(|ps| ps[i].clone()));
                }
                self.visit(body, &inner, changed);
            }
            Process::New { binder, payload, body, .. } => {
                let mut inner = scope.clone();
                inner.insert(binder.clone(), Some(payload.clone()));
                self.visit(body, &inner, changed);
            }
        }
    }
}

fn binder_payloads(binders: &[Name], a: &Behaviour) -> Option<Vec<Behaviour>> {
    (binders.len() == a.arity()).then(|| a.leaves().into_iter().map(|(_, c)| (*c.payload).clone()).collect())
}

enum Stop {
    Error(TypingError),
    Stuck(Vec<Obligation>),
}

impl From<TypingError> for Stop {
    fn from(e: TypingError) -> Self {
        Stop::Error(e)
    }
}

struct Synth<'a> {
    types: &'a NameTypes,
    profile: Profile,
    budget: Budget,
    /// Whether some premiss had to be factored (the result may then be
    /// stronger than necessary).
    factored: bool,
}

type Scope = HashMap<Name, Behaviour>;

impl Synth<'_> {
    fn payload(&self, u: &Name, polarity: Polarity, scope: &Scope) -> Result<Behaviour, TypingError> {
        scope.get(u).or_else(|| self.types.get(u, polarity)).cloned().ok_or_else(|| TypingError::UnknownFreeNameType(u.clone()))
    }

    fn tuple(&self, u: &Name, names: &[Name], a: &Behaviour) -> Result<Formula, TypingError> {
        annotate(names, a).map_err(|m| TypingError::Arity { subject: u.clone(), names: m.names, arity: m.arity })
    }

    fn go(&mut self, p: &Process, scope: &Scope) -> Result<Derivation, Stop> {
        match p {
            Process::Nop => Ok(Derivation::new(TypingRule::Nop, Formula::Bot, Process::Nop, vec![])),
            Process::Par(a, b) => {
                let da = self.go(a, scope)?;
                let db = self.go(b, scope)?;
                let env = Formula::par(da.env().clone(), db.env().clone());
                Ok(Derivation::new(TypingRule::Para, env, p.clone(), vec![da, db]))
            }
            Process::Out { subject, objects, cont } => {
                let a = self.payload(subject, Polarity::Output, scope)?;
                let head = Formula::assign(subject.clone(), Capability::output(a.clone()));
                let tuple = self.tuple(subject, objects, &a)?;
                if **cont == Process::Nop {
                    return Ok(Derivation::new(TypingRule::DerivedOutAsync, Formula::tensor(head, tuple), p.clone(), vec![]));
                }
                let d = self.go(cont, scope)?;
                let env = Formula::tensor(head, Formula::par(tuple, d.env().clone()));
                Ok(Derivation::new(TypingRule::Out, env, p.clone(), vec![d]))
            }
            Process::In { subject, binders, body } | Process::RepIn { subject, binders, body } => {
                let bang = matches!(p, Process::RepIn { .. });
                let a = self.payload(subject, Polarity::Input, scope)?;
                self.tuple(subject, binders, &a)?;
                let mut inner = scope.clone();
                for (x, t) in binders.iter().zip(binder_payloads(binders, &a).unwrap_or_default()) {
                    inner.insert(x.clone(), t);
                }
                let d = self.go(body, &inner)?;
                let shape = if bang {
                    Shape::InBang { names: binders.clone(), payload: a.clone() }
                } else {
                    Shape::In { names: binders.clone(), payload: a.clone() }
                };
                let (ctx, premise) = self.factor_into(d, &shape)?;
                let lit = Formula::assign(subject.clone(), Capability::input(a));
                let (head, rule) = if bang { (Formula::quest(lit), TypingRule::InBang) } else { (lit, TypingRule::In) };
                Ok(Derivation::new(rule, Formula::tensor(head, ctx), p.clone(), vec![premise]))
            }
            Process::New { binder, payload, kind, body } => {
                let mut inner = scope.clone();
                inner.insert(binder.clone(), payload.clone());
                let d = self.go(body, &inner)?;
                let shape = Shape::New { name: binder.clone(), payload: payload.clone(), kind: *kind };
                let (ctx, premise) = self.factor_into(d, &shape)?;
                let rule = if *kind == Kind::Lin { TypingRule::NewLin } else { TypingRule::NewOmega };
                Ok(Derivation::new(rule, ctx, p.clone(), vec![premise]))
            }
        }
    }

    fn factor_into(&mut self, d: Derivation, shape: &Shape) -> Result<(Formula, Derivation), Stop> {
        self.factored = true;
        match factor(d.env(), shape, self.profile, self.budget)? {
            Ok(Factored { context, premiss, proof }) => {
                let premise = match proof {
                    None => d,
                    Some(pr) => Derivation::sub(premiss, pr, d),
                };
                Ok((context, premise))
            }
            Err(tried) => Err(Stop::Stuck(tried)),
        }
    }
}

/// Synthesizes an environment for `p`. Free names take their types from
/// `hint` (an environment mentioning them) or from outputs on typed names.
pub fn synthesize(p: &Process, hint: Option<&Formula>, profile: Profile, budget: Budget) -> Result<CheckOutcome, TypingError> {
    Ok(synthesize_inner(p, hint, profile, budget)?.0)
}

fn synthesize_inner(p: &Process, hint: Option<&Formula>, profile: Profile, budget: Budget) -> Result<(CheckOutcome, bool), TypingError> {
    let mut types = NameTypes::from_hint(hint);
    types.infer_from_uses(p);
    let mut s = Synth { types: &types, profile, budget, factored: false };
    match s.go(p, &Scope::new()) {
        Ok(derivation) => Ok((CheckOutcome::Typed { derivation }, s.factored)),
        Err(Stop::Error(e)) => Err(e),
        Err(Stop::Stuck(obligations)) => Ok((CheckOutcome::Unknown { obligations }, s.factored)),
    }
}

/// `e ⊢ p`: synthesis followed by `e ≤ F` at the root. `Untyped` is only
/// reported when that entailment is refuted and the synthesized `F` was
/// forced (no premiss had to be factored).
pub fn check(e: &Formula, p: &Process, profile: Profile, budget: Budget) -> Result<CheckOutcome, TypingError> {
    let (outcome, factored) = synthesize_inner(p, Some(e), profile, budget)?;
    let CheckOutcome::Typed { derivation } = outcome else { return Ok(outcome) };
    if derivation.env() == e {
        return Ok(CheckOutcome::Typed { derivation });
    }
    Ok(match discharge(e, derivation.env(), profile, budget) {
        ProveOutcome::Proved(proof) => CheckOutcome::Typed { derivation: Derivation::sub(e.clone(), proof, derivation) },
        o @ ProveOutcome::Refuted if !factored => CheckOutcome::Untyped { obligations: vec![Obligation::new(e, derivation.env(), &o)] },
        o => CheckOutcome::Unknown { obligations: vec![Obligation::new(e, derivation.env(), &o)] },
    })
}
