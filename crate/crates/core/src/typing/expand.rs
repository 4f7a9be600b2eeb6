//! Expansion of derived rules (out-async, out-bound, new*) into core rules.

use std::collections::BTreeSet;

use super::check::{bound_output_names, bracket, new_binders, tuple_names, wrap_news, TypingError};
use super::derivation::{Derivation, TypingRule};
use super::entail::discharge_or;
use crate::mell::{Budget, Profile};
use crate::syntax::{annotate, Atom, Behaviour, Formula, Kind, Literal, Name, Process};

fn malformed(d: &Derivation) -> TypingError {
    TypingError::SchemaMismatch { path: vec![], reason: format!("malformed {} node", d.rule) }
}

/// `sub` from `env` to the premiss, with a core proof.
fn sub_to(env: Formula, premise: Derivation, budget: Budget) -> Result<Derivation, TypingError> {
    let proof = discharge_or(&env, premise.env(), Profile::Core, budget)
        .map_err(|o| TypingError::ExpansionFailed(format!("{} <= {}", o.lhs, o.rhs)))?;
    Ok(Derivation::sub(env, proof, premise))
}

fn annotated(names: &[Name], a: &Behaviour) -> Result<Formula, TypingError> {
    annotate(names, a).map_err(|m| TypingError::SchemaMismatch {
        path: vec![],
        reason: format!("{} name(s) against a behaviour of arity {}", m.names, m.arity),
    })
}

/// Rewrites every derived-rule node (bottom-up) into core rules with the
/// same conclusion.
pub fn expand_derived(d: &Derivation, budget: Budget) -> Result<Derivation, TypingError> {
    let premises = d.premises.iter().map(|p| expand_derived(p, budget)).collect::<Result<Vec<_>, _>>()?;
    let node = Derivation { rule: d.rule, conclusion: d.conclusion.clone(), premises, proof: d.proof.clone() };
    match node.rule {
        TypingRule::DerivedOutAsync => out_async(node, budget),
        TypingRule::DerivedOutBound => out_bound(node, budget),
        TypingRule::DerivedNewStar => {
            let bad = malformed(&node);
            let [premise] = <[Derivation; 1]>::try_from(node.premises).map_err(|_| bad.clone())?;
            let Formula::Tensor(pair, _) = premise.env() else { return Err(bad) };
            let Formula::Par(left, _) = &**pair else { return Err(bad) };
            let a = left.erase_names().ok_or(bad)?;
            let names = tuple_names(left);
            new_star(&a, &names, node.conclusion.env, premise, budget)
        }
        _ => Ok(node),
    }
}

/// `u:↑A ⊗ ṽ:A ⊢ u<ṽ>` from `out` over `nop` and a `sub` by ⊥-neutrality.
fn out_async(node: Derivation, budget: Budget) -> Result<Derivation, TypingError> {
    let Formula::Tensor(head, tuple) = node.env() else { return Err(malformed(&node)) };
    let nop = Derivation::new(TypingRule::Nop, Formula::Bot, Process::Nop, vec![]);
    let out_env = Formula::tensor((**head).clone(), Formula::par((**tuple).clone(), Formula::Bot));
    let out = Derivation::new(TypingRule::Out, out_env, node.process().clone(), vec![nop]);
    sub_to(node.conclusion.env, out, budget)
}

/// `u:↑A ⊗ E ⊢ ν x̃ u<x̃>.P` from `out`, `sub` and `new*` on `x̃`.
fn out_bound(node: Derivation, budget: Budget) -> Result<Derivation, TypingError> {
    let bad = malformed(&node);
    let Formula::Tensor(head, ctx) = node.env() else { return Err(bad) };
    let Formula::Lit(Literal { atom: Atom::Assign(u, cap), .. }) = &**head else { return Err(bad) };
    let a = (*cap.payload).clone();
    let binders = new_binders(&a)?;
    let names = bound_output_names(node.process(), &binders).ok_or(bad.clone())?;
    let [premise] = <[Derivation; 1]>::try_from(node.premises.clone()).map_err(|_| bad)?;
    let (x_a, x_dual) = (annotated(&names, &a)?, annotated(&names, &a.dual())?);
    let out_env = Formula::tensor((**head).clone(), Formula::par(x_a.clone(), premise.env().clone()));
    let out_proc = Process::output(u.clone(), names.clone(), premise.process().clone());
    let out = Derivation::new(TypingRule::Out, out_env, out_proc, vec![premise]);
    let shaped = Formula::tensor(Formula::par(x_a, x_dual), Formula::tensor((**head).clone(), (**ctx).clone()));
    let s = sub_to(shaped, out, budget)?;
    new_star(&a, &names, node.conclusion.env, s, budget)
}

/// The generalised new by induction on `a`; `premise` concludes
/// `(x̃:A ⅋ x̃:dual(A)) ⊗ ctx ⊢ P` up to a `sub`.
pub fn new_star(a: &Behaviour, names: &[Name], ctx: Formula, premise: Derivation, budget: Budget) -> Result<Derivation, TypingError> {
    let mut seen = BTreeSet::new();
    if let Some(n) = names.iter().find(|n| !seen.insert(*n)) {
        return Err(TypingError::DuplicateNames((*n).clone()));
    }
    match a {
        Behaviour::Cap(_) | Behaviour::Bang(_) | Behaviour::Quest(_) => {
            let (kind, payload) = new_binders(a)?.remove(0);
            let x = &names[0];
            let want = Formula::tensor(bracket(x, &payload, kind), ctx.clone());
            let premise = if *premise.env() == want { premise } else { sub_to(want, premise, budget)? };
            let rule = if kind == Kind::Lin { TypingRule::NewLin } else { TypingRule::NewOmega };
            let p = Process::new_chan(x.clone(), payload, kind, premise.process().clone());
            Ok(Derivation::new(rule, ctx, p, vec![premise]))
        }
        Behaviour::One | Behaviour::Bot => sub_to(ctx, premise, budget),
        Behaviour::Tensor(b, c) | Behaviour::Par(b, c) => {
            let (ys, zs) = names.split_at(b.arity());
            let pair = |ns: &[Name], t: &Behaviour| -> Result<Formula, TypingError> {
                Ok(Formula::par(annotated(ns, t)?, annotated(ns, &t.dual())?))
            };
            let mid_ctx = Formula::tensor(pair(ys, b)?, ctx.clone());
            let mid = Formula::tensor(pair(zs, c)?, mid_ctx.clone());
            let s = sub_to(mid, premise, budget)?;
            let inner = new_star(c, zs, mid_ctx, s, budget)?;
            new_star(b, ys, ctx, inner, budget)
        }
    }
}

/// A `derived-new-star` node concluding `ctx ⊢ ν x̃ P`.
pub fn new_star_node(a: &Behaviour, names: &[Name], ctx: Formula, premise: Derivation) -> Result<Derivation, TypingError> {
    let binders = new_binders(a)?;
    let p = wrap_news(names, &binders, premise.process().clone());
    Ok(Derivation::new(TypingRule::DerivedNewStar, ctx, p, vec![premise]))
}
