//! Node-local validation of typing derivations.

use std::collections::BTreeSet;

use thiserror::Error;

use super::derivation::{Derivation, TypingRule};
use crate::mell::{check_proof, Profile};
use crate::syntax::{annotate, Atom, Behaviour, Capability, Formula, Kind, Literal, Name, Polarity, Process};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypingError {
    #[error("node {}: side condition on `{name}` violated: {reason}", show_path(.path))]
    SideConditionViolated { path: Vec<usize>, name: Name, reason: String },
    #[error("node {}: {reason}", show_path(.path))]
    SchemaMismatch { path: Vec<usize>, reason: String },
    #[error("node {}: bad sub proof: {reason}", show_path(.path))]
    BadSubProof { path: Vec<usize>, reason: String },
    #[error("the type of free name `{0}` cannot be determined")]
    UnknownFreeNameType(Name),
    #[error("`{subject}` carries {arity} name(s) but is used with {names}")]
    Arity { subject: Name, names: usize, arity: usize },
    #[error("name `{0}` occurs twice in a generalised new")]
    DuplicateNames(Name),
    #[error("`{0}` is not a capability the new rules can create")]
    NonCapabilityBase(Behaviour),
    #[error("derived rule expansion needs `{0}`, which the prover did not establish")]
    ExpansionFailed(String),
}

pub(crate) fn show_path(path: &[usize]) -> String {
    if path.is_empty() {
        "/".into()
    } else {
        path.iter().map(|i| format!("/{i}")).collect()
    }
}

/// `[x]^k_B`: `x:↑B ⅋ x:↓B`, or `!x:↑B ⅋ ?x:↓B`.
pub fn bracket(x: &Name, payload: &Behaviour, kind: Kind) -> Formula {
    let out = Formula::assign(x.clone(), Capability::output(payload.clone()));
    let inp = Formula::assign(x.clone(), Capability::input(payload.clone()));
    match kind {
        Kind::Lin => Formula::par(out, inp),
        Kind::Omega => Formula::par(Formula::bang(out), Formula::quest(inp)),
    }
}

/// The `new` binders that create `x̃ : A ⅋ x̃ : dual(A)`, one per leaf.
pub fn new_binders(a: &Behaviour) -> Result<Vec<(Kind, Behaviour)>, TypingError> {
    let mut out = Vec::new();
    for (exp, cap) in a.leaves() {
        let leaf = Behaviour::with_exponent(exp, cap.clone());
        let kind = match (&leaf, cap.polarity) {
            (Behaviour::Cap(_), _) => Kind::Lin,
            (Behaviour::Bang(_), Polarity::Output) | (Behaviour::Quest(_), Polarity::Input) => Kind::Omega,
            _ => return Err(TypingError::NonCapabilityBase(leaf)),
        };
        out.push((kind, (*cap.payload).clone()));
    }
    Ok(out)
}

/// Wraps `p` in `new` binders, outermost first.
pub fn wrap_news(names: &[Name], binders: &[(Kind, Behaviour)], p: Process) -> Process {
    names.iter().zip(binders).rev().fold(p, |body, (x, (k, b))| Process::new_chan(x.clone(), b.clone(), *k, body))
}

/// Strips `names.len()` news that match `binders`, returning the body.
fn peel_news<'a>(p: &'a Process, names: &[Name], binders: &[(Kind, Behaviour)]) -> Option<&'a Process> {
    let mut cur = p;
    for (x, (k, b)) in names.iter().zip(binders) {
        match cur {
            Process::New { binder, payload, kind, body } if binder == x && payload == b && kind == k => cur = body,
            _ => return None,
        }
    }
    Some(cur)
}

/// Names labelling the literals of an annotated tuple, left to right.
pub fn tuple_names(f: &Formula) -> Vec<Name> {
    f.literals().into_iter().filter_map(|l| l.atom.channel().cloned()).collect()
}

/// `!y1:T1 ⊗ … ⊗ !yn:Tn`, with `1` for n = 0.
pub fn is_bang_context(f: &Formula) -> bool {
    fn go(f: &Formula) -> bool {
        match f {
            Formula::Bang(l) => matches!(&**l, Formula::Lit(Literal { atom: Atom::Assign(..), positive: true })),
            Formula::Tensor(a, b) => go(a) && go(b),
            _ => false,
        }
    }
    *f == Formula::One || go(f)
}

/// `u : A` for a literal with the given polarity and subject, returning `A`.
fn cap_literal<'a>(f: &'a Formula, u: &Name, polarity: Polarity) -> Option<&'a Behaviour> {
    match f {
        Formula::Lit(Literal { atom: Atom::Assign(n, c), positive: true }) if n == u && c.polarity == polarity => Some(&c.payload),
        _ => None,
    }
}

fn split_tensor(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Tensor(a, b) => Some((a, b)),
        _ => None,
    }
}

fn split_par(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Par(a, b) => Some((a, b)),
        _ => None,
    }
}

fn distinct(names: &[Name]) -> Result<(), Name> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(n.clone());
        }
    }
    Ok(())
}

/// Checks every node of `d` against its rule schema, side conditions and
/// embedded proofs. Derived-rule nodes are checked against their derived
/// schemas.
pub fn check_derivation(d: &Derivation, profile: Profile) -> Result<(), TypingError> {
    let mut result = Ok(());
    d.walk(&mut |path, node| {
        if result.is_ok() {
            result = check_node(path, node, profile);
        }
    });
    result
}

fn check_node(path: &[usize], d: &Derivation, profile: Profile) -> Result<(), TypingError> {
    let schema = |reason: String| TypingError::SchemaMismatch { path: path.to_vec(), reason };
    let side =
        |name: &Name, reason: &str| TypingError::SideConditionViolated { path: path.to_vec(), name: name.clone(), reason: reason.into() };
    let arity = d.premises.len();
    let expected = match d.rule {
        TypingRule::Nop | TypingRule::DerivedOutAsync => 0,
        TypingRule::Para => 2,
        _ => 1,
    };
    if arity != expected {
        return Err(schema(format!("{} takes {expected} premiss(es), found {arity}", d.rule)));
    }
    let env = d.env();
    if !env.is_environment_type() {
        return Err(schema(format!("`{env}` is not an environment type")));
    }
    let prem = |i: usize| &d.premises[i];
    let annotated = |names: &[Name], a: &Behaviour| {
        annotate(names, a).map_err(|m| schema(format!("{} name(s) against a behaviour of arity {}", m.names, m.arity)))
    };
    let same_process = |got: &Process, want: &Process| {
        if got == want {
            Ok(())
        } else {
            Err(schema(format!("premiss process `{got}` should be `{want}`")))
        }
    };
    let same_env = |got: &Formula, want: &Formula| {
        if got == want {
            Ok(())
        } else {
            Err(schema(format!("premiss environment `{got}` should be `{want}`")))
        }
    };
    match (d.rule, d.process()) {
        (TypingRule::Nop, Process::Nop) => {
            if *env != Formula::Bot {
                return Err(schema(format!("nop concludes `⊥`, not `{env}`")));
            }
        }
        (TypingRule::Para, Process::Par(p, q)) => {
            same_process(prem(0).process(), p)?;
            same_process(prem(1).process(), q)?;
            same_env(env, &Formula::par(prem(0).env().clone(), prem(1).env().clone()))?;
        }
        (TypingRule::Sub, p) => {
            same_process(prem(0).process(), p)?;
            let bad = |reason: String| TypingError::BadSubProof { path: path.to_vec(), reason };
            let proof = d.proof.as_ref().ok_or_else(|| bad("missing proof".into()))?;
            let want = vec![env.negate(), prem(0).env().clone()];
            if proof.conclusion != want {
                return Err(bad(format!(
                    "proves `{}` instead of `{}`",
                    crate::surface::sequent_to_string(&proof.conclusion),
                    crate::surface::sequent_to_string(&want)
                )));
            }
            check_proof(proof, profile).map_err(|e| bad(e.to_string()))?;
        }
        (TypingRule::In, Process::In { subject, binders, body }) | (TypingRule::InBang, Process::RepIn { subject, binders, body }) => {
            same_process(prem(0).process(), body)?;
            let (head, ctx) = split_tensor(env).ok_or_else(|| schema(format!("`{env}` is not `u:↓A ⊗ E`")))?;
            let head = if d.rule == TypingRule::InBang {
                match head {
                    Formula::Quest(l) => &**l,
                    _ => return Err(schema(format!("`{head}` is not `?{subject}:↓A`"))),
                }
            } else {
                head
            };
            let a = cap_literal(head, subject, Polarity::Input)
                .ok_or_else(|| schema(format!("`{head}` is not an input capability on `{subject}`")))?;
            if d.rule == TypingRule::InBang && !is_bang_context(ctx) {
                return Err(schema(format!("`{ctx}` is not a context of !-literals")));
            }
            distinct(binders).map_err(|n| side(&n, "bound twice"))?;
            same_env(prem(0).env(), &Formula::tensor(annotated(binders, a)?, ctx.clone()))?;
            if let Some(x) = binders.iter().find(|x| ctx.mentions(x)) {
                return Err(side(x, "bound name occurs in the environment"));
            }
        }
        (TypingRule::Out, Process::Out { subject, objects, cont }) => {
            same_process(prem(0).process(), cont)?;
            let bad = || schema(format!("`{env}` is not `{subject}:↑A ⊗ (ṽ:A ⅋ E)`"));
            let (head, rest) = split_tensor(env).ok_or_else(bad)?;
            let a = cap_literal(head, subject, Polarity::Output).ok_or_else(bad)?;
            let (tuple, ctx) = split_par(rest).ok_or_else(bad)?;
            same_env(tuple, &annotated(objects, a)?)?;
            same_env(prem(0).env(), ctx)?;
        }
        (TypingRule::NewLin | TypingRule::NewOmega, Process::New { binder, payload, kind, body }) => {
            let want_kind = if d.rule == TypingRule::NewLin { Kind::Lin } else { Kind::Omega };
            if *kind != want_kind {
                return Err(schema(format!("{} does not apply to a {kind:?} new", d.rule)));
            }
            same_process(prem(0).process(), body)?;
            same_env(prem(0).env(), &Formula::tensor(bracket(binder, payload, *kind), env.clone()))?;
            if env.mentions(binder) {
                return Err(side(binder, "created name occurs in the environment"));
            }
        }
        (TypingRule::DerivedOutAsync, Process::Out { subject, objects, cont }) => {
            if **cont != Process::Nop {
                return Err(schema("out-async types outputs without continuation".into()));
            }
            let bad = || schema(format!("`{env}` is not `{subject}:↑A ⊗ ṽ:A`"));
            let (head, tuple) = split_tensor(env).ok_or_else(bad)?;
            let a = cap_literal(head, subject, Polarity::Output).ok_or_else(bad)?;
            same_env(tuple, &annotated(objects, a)?)?;
        }
        (TypingRule::DerivedOutBound, p) => {
            let bad = || schema(format!("`{env}` is not `u:↑A ⊗ E`"));
            let (head, ctx) = split_tensor(env).ok_or_else(bad)?;
            let (u, a) = match head {
                Formula::Lit(Literal { atom: Atom::Assign(u, c), positive: true }) if c.polarity == Polarity::Output => (u, &*c.payload),
                _ => return Err(bad()),
            };
            let binders = new_binders(a).map_err(|e| schema(e.to_string()))?;
            let names =
                bound_output_names(p, &binders).ok_or_else(|| schema(format!("`{p}` is not a bound output on `{u}` of type `{a}`")))?;
            let Some(Process::Out { subject, objects, cont }) = peel_news(p, &names, &binders) else {
                unreachable!("checked by bound_output_names")
            };
            if subject != u || *objects != names {
                return Err(schema(format!("`{p}` is not a bound output on `{u}`")));
            }
            distinct(&names).map_err(|n| side(&n, "bound twice"))?;
            if names.contains(u) {
                return Err(side(u, "subject is among the extruded names"));
            }
            same_process(prem(0).process(), cont)?;
            same_env(prem(0).env(), &Formula::tensor(annotated(&names, &a.dual())?, ctx.clone()))?;
            if let Some(x) = names.iter().find(|x| ctx.mentions(x)) {
                return Err(side(x, "created name occurs in the environment"));
            }
        }
        (TypingRule::DerivedNewStar, p) => {
            let shape = || schema(format!("premiss `{}` is not `(x̃:A ⅋ x̃:dual(A)) ⊗ E`", prem(0).env()));
            let (pair, ctx) = split_tensor(prem(0).env()).ok_or_else(shape)?;
            let (left, right) = split_par(pair).ok_or_else(shape)?;
            let a = left.erase_names().ok_or_else(shape)?;
            let names = tuple_names(left);
            same_env(left, &annotated(&names, &a)?)?;
            same_env(right, &annotated(&names, &a.dual())?)?;
            same_env(ctx, env)?;
            distinct(&names).map_err(|n| side(&n, "bound twice"))?;
            let binders = new_binders(&a).map_err(|e| schema(e.to_string()))?;
            let body =
                peel_news(p, &names, &binders).ok_or_else(|| schema(format!("`{p}` does not create `{}` as `{a}`", names_list(&names))))?;
            same_process(prem(0).process(), body)?;
            if let Some(x) = names.iter().find(|x| env.mentions(x)) {
                return Err(side(x, "created name occurs in the environment"));
            }
        }
        (rule, p) => return Err(schema(format!("{rule} does not apply to `{p}`"))),
    }
    Ok(())
}

/// Names created by a `ν x̃ u<x̃>.P` prefix matching `binders`.
pub fn bound_output_names(p: &Process, binders: &[(Kind, Behaviour)]) -> Option<Vec<Name>> {
    let mut names = Vec::new();
    let mut cur = p;
    for (k, b) in binders {
        match cur {
            Process::New { binder, payload, kind, body } if payload == b && kind == k => {
                names.push(binder.clone());
                cur = body;
            }
            _ => return None,
        }
    }
    matches!(cur, Process::Out { .. }).then_some(names)
}

fn names_list(names: &[Name]) -> String {
    names.iter().map(Name::as_str).collect::<Vec<_>>().join(",")
}
