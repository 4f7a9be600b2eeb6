//! HYB types and processes (replicated inputs and bound outputs only).
//! Every communicated name travels as a pair carrying its output and input
//! capabilities. Checked under the `hyb` profile.

use std::collections::HashMap;

use crate::syntax::{exp_literal, Behaviour, Capability, Exponent, Formula, Fresh, Kind, Name, Process};

use super::{EncodingError, HybType, Source, SourceJudgement, SrcProcess, Translated};

/// `⟦(τ̃)?⟧ = ↑dual⟦τ̃⟧`, `⟦(τ̃)!⟧ = ↓⟦τ̃⟧`.
pub fn hyb_translate(t: &HybType) -> Capability {
    match t {
        HybType::OutT(p) => Capability::output(hyb_translate_tuple(p).dual()),
        HybType::InT(p) => Capability::input(hyb_translate_tuple(p)),
    }
}

/// `⟦τ₁…τₙ⟧ = (!⟦τ₁⟧ ⅋ ?dual⟦τ₁⟧) ⊗ … ⊗ (!⟦τₙ⟧ ⅋ ?dual⟦τₙ⟧)`.
pub fn hyb_translate_tuple(ts: &[HybType]) -> Behaviour {
    ts.iter()
        .map(|t| {
            let c = hyb_translate(t);
            Behaviour::par(Behaviour::Bang(c.clone()), Behaviour::Quest(c.flipped()))
        })
        .reduce(Behaviour::tensor)
        .unwrap_or(Behaviour::One)
}

/// `⟦x:τ_O⟧ = !x:⟦τ_O⟧`, `⟦x:τ_I⟧ = !x:dual⟦τ_I⟧ ⅋ ?x:⟦τ_I⟧`, joined by ⊗.
pub fn hyb_translate_context(ctx: &[(Name, HybType)]) -> Formula {
    Formula::tensor_all(ctx.iter().map(|(x, t)| {
        let c = hyb_translate(t);
        match t {
            HybType::OutT(_) => exp_literal(Exponent::Bang, x.clone(), c),
            HybType::InT(_) => {
                Formula::par(exp_literal(Exponent::Bang, x.clone(), c.flipped()), exp_literal(Exponent::Quest, x.clone(), c))
            }
        }
    }))
}

fn payload(t: &HybType) -> &[HybType] {
    match t {
        HybType::OutT(p) | HybType::InT(p) => p,
    }
}

fn flip(t: &HybType) -> HybType {
    match t {
        HybType::OutT(p) => HybType::InT(p.clone()),
        HybType::InT(p) => HybType::OutT(p.clone()),
    }
}

struct Tr {
    fresh: Fresh,
}

impl Tr {
    fn go(&mut self, p: &SrcProcess<HybType>, types: &HashMap<Name, HybType>) -> Result<Process, EncodingError> {
        let type_of = |x: &Name| types.get(x).ok_or_else(|| EncodingError::NotInShape(format!("no HYB type for `{x}`")));
        let arity = |x: &Name, t: &HybType, n: usize| {
            if payload(t).len() == n {
                Ok(())
            } else {
                Err(EncodingError::NotInShape(format!("`{x}` carries {} name(s), {n} given", payload(t).len())))
            }
        };
        Ok(match p {
            SrcProcess::Nop => Process::Nop,
            SrcProcess::Par(a, b) => Process::par(self.go(a, types)?, self.go(b, types)?),
            SrcProcess::In { subject, .. } => return Err(EncodingError::NotInShape(format!("linear input on `{subject}`"))),
            SrcProcess::Out { subject, .. } => return Err(EncodingError::NotInShape(format!("free output on `{subject}`"))),
            // *x(ỹ).P  ↦  *x(y₁y′₁…yₙy′ₙ).⟦P⟧
            SrcProcess::RepIn { subject, binders, body } => {
                let t = type_of(subject)?.clone();
                arity(subject, &t, binders.len())?;
                let mut inner = types.clone();
                let mut doubled = Vec::new();
                for (y, ty) in binders.iter().zip(payload(&t)) {
                    inner.insert(y.clone(), ty.clone());
                    doubled.push(y.clone());
                    doubled.push(self.fresh.fresh(y));
                }
                Process::rep_input(subject.clone(), doubled, self.go(body, &inner)?)
            }
            // x(ỹ)P  ↦  νỹ (x⟨y₁y₁…yₙyₙ⟩ | ⟦P⟧)
            SrcProcess::BoundOut { subject, binders, cont } => {
                let t = type_of(subject)?.clone();
                arity(subject, &t, binders.len())?;
                let mut inner = types.clone();
                for (y, ty) in binders.iter().zip(payload(&t)) {
                    inner.insert(y.clone(), flip(ty));
                }
                let objects: Vec<Name> = binders.iter().flat_map(|y| [y.clone(), y.clone()]).collect();
                let msg = Process::output(subject.clone(), objects, Process::Nop);
                let mut q = match self.go(cont, &inner)? {
                    Process::Nop => msg,
                    rest => Process::par(msg, rest),
                };
                for (y, ty) in binders.iter().zip(payload(&t)).rev() {
                    q = Process::new_chan(y.clone(), (*hyb_translate(ty).payload).clone(), Kind::Omega, q);
                }
                q
            }
            SrcProcess::New { binder, ann, body } => {
                let HybType::InT(p) = ann else {
                    return Err(EncodingError::NotInShape(format!("`{binder}` must be created at an input type, found `{ann}`")));
                };
                let mut inner = types.clone();
                inner.insert(binder.clone(), ann.clone());
                Process::new_chan(binder.clone(), hyb_translate_tuple(p), Kind::Omega, self.go(body, &inner)?)
            }
        })
    }
}

/// Translates a process whose free names are typed by `ctx`. Fresh names
/// avoid every name of the source.
pub fn hyb_translate_process(p: &SrcProcess<HybType>, ctx: &[(Name, HybType)]) -> Result<Process, EncodingError> {
    let mut names = Vec::new();
    p.names(&mut names);
    names.extend(ctx.iter().map(|(x, _)| x.clone()));
    let mut tr = Tr { fresh: Fresh::avoiding(names) };
    tr.go(p, &ctx.iter().cloned().collect())
}

pub fn hyb_translate_judgement(j: &SourceJudgement<HybType>) -> Result<Translated, EncodingError> {
    Ok(Translated { source: Source::Hyb, env: hyb_translate_context(&j.context), process: hyb_translate_process(&j.process, &j.context)? })
}
