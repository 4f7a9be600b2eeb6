//! Session types as static channel types: each interaction step on `u`
//! continues on a fresh name `u′` sent along with the message. Checked under
//! the `core` profile.

use std::collections::BTreeMap;

use crate::syntax::{Behaviour, Capability, Formula, Fresh, Kind, Name, Process};

use super::{EncodingError, SessionFormula, Source, SourceJudgement, SrcProcess, Translated};

/// `⟦1⟧ = ↑⊥`, `⟦A⊗B⟧ = ↑(⟦A⊥⟧ ⅋ ⟦B⊥⟧)`, `⟦!A⟧ = ↑?⟦A⟧` and dually.
pub fn dcpt_translate(s: &SessionFormula) -> Capability {
    use SessionFormula as S;
    let cap = |c: Capability| Behaviour::Cap(c);
    match s {
        S::One => Capability::output(Behaviour::Bot),
        S::Bot => Capability::input(Behaviour::Bot),
        S::Tensor(a, b) => Capability::output(Behaviour::par(cap(dcpt_translate(&a.dual())), cap(dcpt_translate(&b.dual())))),
        S::Par(a, b) => Capability::input(Behaviour::par(cap(dcpt_translate(a)), cap(dcpt_translate(b)))),
        S::Bang(a) => Capability::output(Behaviour::Quest(dcpt_translate(a))),
        S::Quest(a) => Capability::input(Behaviour::Quest(dcpt_translate(a))),
    }
}

/// `⟦x₁:A₁ … xₙ:Aₙ⟧ = x₁:⟦A₁⟧ ⊗ … ⊗ xₙ:⟦Aₙ⟧`; the offered `x:A` adds `x:⟦A⊥⟧`.
pub fn dcpt_translate_context(ctx: &[(Name, SessionFormula)], offer: Option<&(Name, SessionFormula)>) -> Formula {
    let lits = ctx.iter().map(|(x, a)| Formula::assign(x.clone(), dcpt_translate(a)));
    let offered = offer.map(|(x, a)| Formula::assign(x.clone(), dcpt_translate(&a.dual())));
    Formula::tensor_all(lits.chain(offered))
}

/// Splits a two-step payload `↕A ⅋ ↕B` into its message and continuation.
fn two_step(b: &Behaviour) -> Option<(&Capability, &Capability)> {
    match b {
        Behaviour::Par(l, r) => match (&**l, &**r) {
            (Behaviour::Cap(m), Behaviour::Cap(k)) => Some((m, k)),
            _ => None,
        },
        _ => None,
    }
}

struct Tr {
    fresh: Fresh,
}

impl Tr {
    fn go(&mut self, p: &SrcProcess<SessionFormula>, payloads: &BTreeMap<Name, Behaviour>) -> Result<Process, EncodingError> {
        let payload_of = |u: &Name| payloads.get(u).ok_or_else(|| EncodingError::NotInShape(format!("no session type for `{u}`")));
        let monadic = |u: &Name, n: usize, b: &Behaviour| {
            let want = usize::from(b.arity() > 0);
            if n == want {
                Ok(())
            } else {
                Err(EncodingError::NotMonadic(format!("`{u}` carries {want} name(s), {n} given")))
            }
        };
        Ok(match p {
            SrcProcess::Nop => Process::Nop,
            SrcProcess::Par(a, b) => Process::par(self.go(a, payloads)?, self.go(b, payloads)?),
            SrcProcess::BoundOut { subject, .. } => return Err(EncodingError::NotInShape(format!("bound output on `{subject}`"))),
            SrcProcess::New { binder, ann, body } => {
                let payload = (*dcpt_translate(ann).payload).clone();
                let mut inner = payloads.clone();
                inner.insert(binder.clone(), payload.clone());
                Process::new_chan(binder.clone(), payload, Kind::Lin, self.go(body, &inner)?)
            }
            SrcProcess::In { subject: u, binders, body } | SrcProcess::RepIn { subject: u, binders, body } => {
                let b = payload_of(u)?.clone();
                monadic(u, binders.len(), &b)?;
                let replicated = matches!(p, SrcProcess::RepIn { .. });
                let mut inner = payloads.clone();
                match two_step(&b) {
                    // u(x).P  ↦  u(x u′).⟦P⟧[u′/u]
                    Some((m, k)) if !replicated => {
                        let next = self.fresh.fresh(u);
                        inner.insert(binders[0].clone(), (*m.payload).clone());
                        inner.insert(u.clone(), (*k.payload).clone());
                        let body = self.go(body, &inner)?.substitute(&BTreeMap::from([(u.clone(), next.clone())]));
                        Process::input(u.clone(), vec![binders[0].clone(), next], body)
                    }
                    _ => {
                        if let (Some(x), Some(c)) = (binders.first(), b.leaves().first()) {
                            inner.insert(x.clone(), (*c.1.payload).clone());
                        }
                        let body = self.go(body, &inner)?;
                        if replicated {
                            Process::rep_input(u.clone(), binders.clone(), body)
                        } else {
                            Process::input(u.clone(), binders.clone(), body)
                        }
                    }
                }
            }
            SrcProcess::Out { subject: u, objects, cont } => {
                let b = payload_of(u)?.clone();
                monadic(u, objects.len(), &b)?;
                match two_step(&b) {
                    // u⟨v⟩.P  ↦  νu′ (u⟨v u′⟩ | ⟦P⟧[u′/u])
                    Some((_, k)) => {
                        let next = self.fresh.fresh(u);
                        let mut inner = payloads.clone();
                        inner.insert(u.clone(), (*k.payload).clone());
                        let rest = self.go(cont, &inner)?.substitute(&BTreeMap::from([(u.clone(), next.clone())]));
                        let msg = Process::output(u.clone(), vec![objects[0].clone(), next.clone()], Process::Nop);
                        Process::new_chan(next, (*k.payload).clone(), Kind::Lin, Process::par(msg, rest))
                    }
                    None => {
                        let msg = Process::output(u.clone(), objects.clone(), Process::Nop);
                        match self.go(cont, payloads)? {
                            Process::Nop => msg,
                            rest => Process::par(msg, rest),
                        }
                    }
                }
            }
        })
    }
}

/// Translates a synchronous session process to its asynchronous, statically
/// typed form. `payloads` gives the payload of each free name's channel type.
pub fn dcpt_async_translate(p: &SrcProcess<SessionFormula>, payloads: &BTreeMap<Name, Behaviour>) -> Result<Process, EncodingError> {
    let mut names = Vec::new();
    p.names(&mut names);
    names.extend(payloads.keys().cloned());
    Tr { fresh: Fresh::avoiding(names) }.go(p, payloads)
}

pub fn dcpt_translate_judgement(j: &SourceJudgement<SessionFormula>) -> Result<Translated, EncodingError> {
    let mut payloads: BTreeMap<Name, Behaviour> =
        j.context.iter().map(|(x, a)| (x.clone(), (*dcpt_translate(a).payload).clone())).collect();
    if let Some((x, a)) = &j.offer {
        payloads.insert(x.clone(), (*dcpt_translate(&a.dual()).payload).clone());
    }
    Ok(Translated {
        source: Source::Dcpt,
        env: dcpt_translate_context(&j.context, j.offer.as_ref()),
        process: dcpt_async_translate(&j.process, &payloads)?,
    })
}
