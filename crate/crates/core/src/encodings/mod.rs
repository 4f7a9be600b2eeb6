//! Forward translations from i/o types with linearity (KPT), HYB and
//! session-typed processes (DCPT) into core judgements, each paired with
//! the profile it must be checked under.
//!
//! The source syntaxes are small dedicated grammars (see `source`); they are
//! not the notations of the original systems.

mod dcpt;
mod hyb;
mod kpt;
pub mod samples;
mod source;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::mell::Profile;
use crate::syntax::{Formula, Name, Process};

pub use dcpt::{dcpt_async_translate, dcpt_translate, dcpt_translate_context, dcpt_translate_judgement};
pub use hyb::{hyb_translate, hyb_translate_context, hyb_translate_judgement, hyb_translate_process, hyb_translate_tuple};
pub use kpt::{kpt_translate, kpt_translate_context, kpt_translate_judgement, kpt_translate_tuple};
pub use source::{parse_dcpt, parse_hyb, parse_kpt, parse_session_formula, SourceJudgement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodingError {
    #[error("not in the translatable fragment: {0}")]
    NotInFragment(String),
    #[error("process not in replicated-input/bound-output shape: {0}")]
    NotInShape(String),
    #[error("not monadic: {0}")]
    NotMonadic(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Kpt,
    Hyb,
    Dcpt,
}

impl Source {
    /// The profile a translated judgement is checked under.
    pub fn profile(self) -> Profile {
        match self {
            Source::Kpt => Profile::Kpt,
            Source::Hyb => Profile::Hyb,
            Source::Dcpt => Profile::Core,
        }
    }
}

impl std::str::FromStr for Source {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "kpt" => Ok(Source::Kpt),
            "hyb" => Ok(Source::Hyb),
            "dcpt" => Ok(Source::Dcpt),
            _ => Err(format!("unknown source system `{s}` (expected kpt, hyb or dcpt)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mult {
    One,
    Omega,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `!`: output
    Out,
    /// `?`: input
    In,
    /// `<>`: both, only at creation sites and in contexts
    Both,
}

/// KPT channel types; `Bool` is parsed only to be rejected.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KptType {
    Chan { mode: Mode, mult: Mult, payload: Vec<KptType> },
    Bool,
}

/// HYB types: `(τ̃)?` (output) and `(τ̃)!` (input).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum HybType {
    OutT(Vec<HybType>),
    InT(Vec<HybType>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SessionFormula {
    One,
    Bot,
    Tensor(Box<SessionFormula>, Box<SessionFormula>),
    Par(Box<SessionFormula>, Box<SessionFormula>),
    Bang(Box<SessionFormula>),
    Quest(Box<SessionFormula>),
}

impl SessionFormula {
    pub fn dual(&self) -> SessionFormula {
        use SessionFormula::*;
        match self {
            One => Bot,
            Bot => One,
            Tensor(a, b) => Par(Box::new(a.dual()), Box::new(b.dual())),
            Par(a, b) => Tensor(Box::new(a.dual()), Box::new(b.dual())),
            Bang(a) => Quest(Box::new(a.dual())),
            Quest(a) => Bang(Box::new(a.dual())),
        }
    }

    pub fn size(&self) -> usize {
        use SessionFormula::*;
        match self {
            One | Bot => 1,
            Tensor(a, b) | Par(a, b) => 1 + a.size() + b.size(),
            Bang(a) | Quest(a) => 1 + a.size(),
        }
    }

    pub fn has_exponentials(&self) -> bool {
        use SessionFormula::*;
        match self {
            One | Bot => false,
            Tensor(a, b) | Par(a, b) => a.has_exponentials() || b.has_exponentials(),
            Bang(_) | Quest(_) => true,
        }
    }
}

/// Source processes: core syntax plus HYB bound outputs, with creation
/// sites annotated by a source type `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SrcProcess<A> {
    Nop,
    In {
        subject: Name,
        binders: Vec<Name>,
        body: Box<SrcProcess<A>>,
    },
    RepIn {
        subject: Name,
        binders: Vec<Name>,
        body: Box<SrcProcess<A>>,
    },
    Out {
        subject: Name,
        objects: Vec<Name>,
        cont: Box<SrcProcess<A>>,
    },
    /// `x<(ỹ)>.P`: output of fresh names
    BoundOut {
        subject: Name,
        binders: Vec<Name>,
        cont: Box<SrcProcess<A>>,
    },
    Par(Box<SrcProcess<A>>, Box<SrcProcess<A>>),
    New {
        binder: Name,
        ann: A,
        body: Box<SrcProcess<A>>,
    },
}

impl<A> SrcProcess<A> {
    pub fn names(&self, out: &mut Vec<Name>) {
        let mut add = |n: &Name| {
            if !out.contains(n) {
                out.push(n.clone())
            }
        };
        match self {
            SrcProcess::Nop => {}
            SrcProcess::In { subject, binders, body } | SrcProcess::RepIn { subject, binders, body } => {
                add(subject);
                binders.iter().for_each(add);
                body.names(out);
            }
            SrcProcess::Out { subject, objects: binders, cont } | SrcProcess::BoundOut { subject, binders, cont } => {
                add(subject);
                binders.iter().for_each(add);
                cont.names(out);
            }
            SrcProcess::Par(a, b) => {
                a.names(out);
                b.names(out);
            }
            SrcProcess::New { binder, body, .. } => {
                add(binder);
                body.names(out);
            }
        }
    }
}

/// A translated judgement with its checking profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Translated {
    pub source: Source,
    pub env: Formula,
    pub process: Process,
}

impl Translated {
    pub fn profile(&self) -> Profile {
        self.source.profile()
    }

    /// As a core judgement file, preceded by a profile comment.
    pub fn to_judgement_text(&self) -> String {
        format!("# profile: {}\ngiven {} |- {}\n", self.profile(), self.env, self.process)
    }
}

impl fmt::Display for Mult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mult::One => "1",
            Mult::Omega => "w",
        })
    }
}

fn list<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for KptType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KptType::Bool => f.write_str("bool"),
            KptType::Chan { mode, mult, payload } => {
                let m = match mode {
                    Mode::Out => "!",
                    Mode::In => "?",
                    Mode::Both => "<>",
                };
                write!(f, "{m}{mult}({})", list(payload))
            }
        }
    }
}

impl fmt::Display for HybType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HybType::OutT(p) => write!(f, "({})?", list(p)),
            HybType::InT(p) => write!(f, "({})!", list(p)),
        }
    }
}

impl fmt::Display for SessionFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SessionFormula::*;
        match self {
            One => f.write_str("1"),
            Bot => f.write_str("bot"),
            Tensor(a, b) => write!(f, "({a} (*) {b})"),
            Par(a, b) => write!(f, "({a} (%) {b})"),
            Bang(a) => write!(f, "!{a}"),
            Quest(a) => write!(f, "?{a}"),
        }
    }
}
