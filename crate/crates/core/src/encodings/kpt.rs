//! i/o types with linearity, restricted to the fragment with pure
//! capabilities in channel types, two-sided linear creation and no booleans.
//! Checked under the `kpt` profile.

use crate::syntax::{exp_literal, Behaviour, Capability, Exponent, Formula, Kind, Name, Process};

use super::{EncodingError, KptType, Mode, Mult, Source, SourceJudgement, SrcProcess, Translated};

/// `⟦!¹T̃⟧ = ↑⟦T̃⟧`, `⟦?¹T̃⟧ = ↓⟦T̃⟧`, `⟦!ʷT̃⟧ = !↑⟦T̃⟧`, `⟦?ʷT̃⟧ = ?↓⟦T̃⟧`.
pub fn kpt_translate(t: &KptType) -> Result<Behaviour, EncodingError> {
    let (exp, cap) = leaf(t)?;
    Ok(Behaviour::with_exponent(exp, cap))
}

fn leaf(t: &KptType) -> Result<(Exponent, Capability), EncodingError> {
    match t {
        KptType::Bool => Err(EncodingError::NotInFragment("boolean type".into())),
        KptType::Chan { mode: Mode::Both, .. } => {
            Err(EncodingError::NotInFragment(format!("`{t}` carries both capabilities in a channel type")))
        }
        KptType::Chan { mode, mult, payload } => {
            let b = kpt_translate_tuple(payload)?;
            Ok(match (mode, mult) {
                (Mode::Out, Mult::One) => (Exponent::None, Capability::output(b)),
                (Mode::In, Mult::One) => (Exponent::None, Capability::input(b)),
                (Mode::Out, Mult::Omega) => (Exponent::Bang, Capability::output(b)),
                _ => (Exponent::Quest, Capability::input(b)),
            })
        }
    }
}

/// `⟦T₁…Tₙ⟧ = ⟦T₁⟧ ⊗ … ⊗ ⟦Tₙ⟧`, and `1` for the empty tuple.
pub fn kpt_translate_tuple(ts: &[KptType]) -> Result<Behaviour, EncodingError> {
    let parts = ts.iter().map(kpt_translate).collect::<Result<Vec<_>, _>>()?;
    Ok(parts.into_iter().reduce(Behaviour::tensor).unwrap_or(Behaviour::One))
}

fn assignment(x: &Name, t: &KptType) -> Result<Formula, EncodingError> {
    match t {
        KptType::Chan { mode: Mode::Both, mult, payload } => {
            let out = KptType::Chan { mode: Mode::Out, mult: *mult, payload: payload.clone() };
            let inp = KptType::Chan { mode: Mode::In, mult: *mult, payload: payload.clone() };
            Ok(Formula::par(assignment(x, &out)?, assignment(x, &inp)?))
        }
        _ => {
            let (exp, cap) = leaf(t)?;
            Ok(exp_literal(exp, x.clone(), cap))
        }
    }
}

/// Contexts become ⊗-chains; `x : <>ᵐT̃` becomes `x:⟦!ᵐT̃⟧ ⅋ x:⟦?ᵐT̃⟧`.
pub fn kpt_translate_context(ctx: &[(Name, KptType)]) -> Result<Formula, EncodingError> {
    let parts = ctx.iter().map(|(x, t)| assignment(x, t)).collect::<Result<Vec<_>, _>>()?;
    Ok(Formula::tensor_all(parts))
}

/// Processes are unchanged except for creation annotations.
pub fn kpt_translate_process(p: &SrcProcess<KptType>) -> Result<Process, EncodingError> {
    Ok(match p {
        SrcProcess::Nop => Process::Nop,
        SrcProcess::In { subject, binders, body } => Process::input(subject.clone(), binders.clone(), kpt_translate_process(body)?),
        SrcProcess::RepIn { subject, binders, body } => Process::rep_input(subject.clone(), binders.clone(), kpt_translate_process(body)?),
        SrcProcess::Out { subject, objects, cont } => Process::output(subject.clone(), objects.clone(), kpt_translate_process(cont)?),
        SrcProcess::BoundOut { subject, .. } => return Err(EncodingError::NotInFragment(format!("bound output on `{subject}`"))),
        SrcProcess::Par(a, b) => Process::par(kpt_translate_process(a)?, kpt_translate_process(b)?),
        SrcProcess::New { binder, ann, body } => {
            let KptType::Chan { mode: Mode::Both, mult, payload } = ann else {
                return Err(EncodingError::NotInFragment(format!("creation of `{binder}` must create both capabilities, found `{ann}`")));
            };
            let kind = if *mult == Mult::One { Kind::Lin } else { Kind::Omega };
            Process::new_chan(binder.clone(), kpt_translate_tuple(payload)?, kind, kpt_translate_process(body)?)
        }
    })
}

pub fn kpt_translate_judgement(j: &SourceJudgement<KptType>) -> Result<Translated, EncodingError> {
    Ok(Translated { source: Source::Kpt, env: kpt_translate_context(&j.context)?, process: kpt_translate_process(&j.process)? })
}
