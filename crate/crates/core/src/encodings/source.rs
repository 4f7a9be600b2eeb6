//! Source grammars (non-normative):
//!
//! ```text
//! KPT   T ::= !m(T, …) | ?m(T, …) | <>m(T, …) | bool        m ::= 1 | w
//! HYB   τ ::= (τ, …)? | (τ, …)!
//! DCPT  A ::= 1 | bot | A (*) A | A (%) A | !A | ?A
//!
//! judgement ::= given x : T, … |- P              (KPT, HYB)
//!             | given x : A, … |- P :: x : A     (DCPT)
//! ```
//!
//! Processes use the core syntax, except that creation is written
//! `new x : T. P` with a source type, and HYB adds bound output `x<(ỹ)>.P`.

use crate::surface::lexer::Tok;
use crate::surface::parser::Parser;
use crate::surface::ParseError;
use crate::syntax::{Formula, Name};

use super::{HybType, KptType, Mode, Mult, SessionFormula, SrcProcess};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceJudgement<T> {
    pub context: Vec<(Name, T)>,
    pub process: SrcProcess<T>,
    /// DCPT only: the offered channel `:: x : A`.
    pub offer: Option<(Name, T)>,
}

type Ann<'p, 'a, T> = &'p dyn Fn(&mut Parser<'a>) -> Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn mult(&mut self) -> Result<Mult, ParseError> {
        let m = match self.peek() {
            Tok::Num(n) if n == "1" => Mult::One,
            Tok::Ident(w) if w == "w" => Mult::Omega,
            _ => return Err(self.unexpected(&["`1`", "`w`"])),
        };
        self.bump();
        Ok(m)
    }

    fn type_list<T>(&mut self, item: Ann<'_, 'a, T>) -> Result<Vec<T>, ParseError> {
        self.expect(Tok::LParen)?;
        let mut out = Vec::new();
        if self.eat(&Tok::RParen) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(&Tok::Comma) {
                continue;
            }
            self.expect(Tok::RParen)?;
            return Ok(out);
        }
    }

    pub(crate) fn kpt_type(&mut self) -> Result<KptType, ParseError> {
        if self.is_keyword("bool") {
            self.bump();
            return Ok(KptType::Bool);
        }
        let mode = match self.peek() {
            Tok::Bang => Mode::Out,
            Tok::Quest => Mode::In,
            Tok::Lt => {
                self.bump();
                if *self.peek() != Tok::Gt {
                    return Err(self.unexpected(&["`>`"]));
                }
                Mode::Both
            }
            _ => return Err(self.unexpected(&["`!`", "`?`", "`<>`", "`bool`"])),
        };
        self.bump();
        let mult = self.mult()?;
        let payload = self.type_list(&|p| p.kpt_type())?;
        Ok(KptType::Chan { mode, mult, payload })
    }

    pub(crate) fn hyb_type(&mut self) -> Result<HybType, ParseError> {
        let payload = self.type_list(&|p| p.hyb_type())?;
        match self.peek() {
            Tok::Quest => {
                self.bump();
                Ok(HybType::OutT(payload))
            }
            Tok::Bang => {
                self.bump();
                Ok(HybType::InT(payload))
            }
            _ => Err(self.unexpected(&["`?`", "`!`"])),
        }
    }

    pub(crate) fn session_formula(&mut self) -> Result<SessionFormula, ParseError> {
        let at = self.span_here();
        let f = self.formula()?;
        to_session(&f).ok_or_else(|| ParseError {
            span: at,
            message: "session types are built from units and connectives only".into(),
            expected: Vec::new(),
        })
    }

    fn src_process<T>(&mut self, ann: Ann<'_, 'a, T>, bound: bool) -> Result<SrcProcess<T>, ParseError> {
        let mut acc = self.src_prefix(ann, bound)?;
        while self.eat(&Tok::Bar) {
            acc = SrcProcess::Par(Box::new(acc), Box::new(self.src_prefix(ann, bound)?));
        }
        Ok(acc)
    }

    fn src_prefix<T>(&mut self, ann: Ann<'_, 'a, T>, bound: bool) -> Result<SrcProcess<T>, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) if n == "0" => {
                self.bump();
                Ok(SrcProcess::Nop)
            }
            Tok::LParen => {
                self.bump();
                let p = self.src_process(ann, bound)?;
                self.expect(Tok::RParen)?;
                Ok(p)
            }
            Tok::Star => {
                self.bump();
                let subject = self.name()?;
                let binders = self.binders()?;
                self.expect(Tok::Dot)?;
                let body = Box::new(self.src_prefix(ann, bound)?);
                Ok(SrcProcess::RepIn { subject, binders, body })
            }
            Tok::Ident(s) if s == "new" => {
                self.bump();
                let binder = self.name()?;
                self.expect(Tok::Colon)?;
                let a = ann(self)?;
                self.expect(Tok::Dot)?;
                Ok(SrcProcess::New { binder, ann: a, body: Box::new(self.src_prefix(ann, bound)?) })
            }
            Tok::Ident(_) => {
                let subject = self.name()?;
                match self.peek() {
                    Tok::LParen => {
                        let binders = self.binders()?;
                        self.expect(Tok::Dot)?;
                        Ok(SrcProcess::In { subject, binders, body: Box::new(self.src_prefix(ann, bound)?) })
                    }
                    Tok::Lt => {
                        self.bump();
                        if bound && *self.peek() == Tok::LParen {
                            let binders = self.binders()?;
                            self.expect(Tok::Gt)?;
                            let cont = if self.eat(&Tok::Dot) { self.src_prefix(ann, bound)? } else { SrcProcess::Nop };
                            return Ok(SrcProcess::BoundOut { subject, binders, cont: Box::new(cont) });
                        }
                        let objects = self.names_until(Tok::Gt)?;
                        let cont = if self.eat(&Tok::Dot) { self.src_prefix(ann, bound)? } else { SrcProcess::Nop };
                        Ok(SrcProcess::Out { subject, objects, cont: Box::new(cont) })
                    }
                    _ => Err(self.unexpected(&["`(`", "`<`"])),
                }
            }
            _ => Err(self.unexpected(&["`0`", "`*`", "`new`", "name", "`(`"])),
        }
    }

    fn src_judgement<T>(&mut self, ann: Ann<'_, 'a, T>, bound: bool, offer: bool) -> Result<SourceJudgement<T>, ParseError> {
        if !self.is_keyword("given") {
            return Err(self.unexpected(&["`given`"]));
        }
        self.bump();
        let mut context = Vec::new();
        if *self.peek() != Tok::Turnstile {
            loop {
                let x = self.name()?;
                self.expect(Tok::Colon)?;
                context.push((x, ann(self)?));
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        self.expect(Tok::Turnstile)?;
        let process = self.src_process(ann, bound)?;
        let offer = if offer {
            self.expect(Tok::Colon)?;
            self.expect(Tok::Colon)?;
            let x = self.name()?;
            self.expect(Tok::Colon)?;
            Some((x, ann(self)?))
        } else {
            None
        };
        Ok(SourceJudgement { context, process, offer })
    }
}

fn to_session(f: &Formula) -> Option<SessionFormula> {
    use SessionFormula as S;
    Some(match f {
        Formula::One => S::One,
        Formula::Bot => S::Bot,
        Formula::Tensor(a, b) => S::Tensor(Box::new(to_session(a)?), Box::new(to_session(b)?)),
        Formula::Par(a, b) => S::Par(Box::new(to_session(a)?), Box::new(to_session(b)?)),
        Formula::Bang(a) => S::Bang(Box::new(to_session(a)?)),
        Formula::Quest(a) => S::Quest(Box::new(to_session(a)?)),
        Formula::Lit(_) => return None,
    })
}

fn run<T>(file: &str, text: &str, f: impl FnOnce(&mut Parser<'_>) -> Result<T, ParseError>) -> Result<T, ParseError> {
    let mut p = Parser::new(file, text)?;
    let out = f(&mut p)?;
    p.finish()?;
    Ok(out)
}

pub fn parse_kpt(file: &str, text: &str) -> Result<SourceJudgement<KptType>, ParseError> {
    run(file, text, |p| p.src_judgement(&|p| p.kpt_type(), false, false))
}

pub fn parse_hyb(file: &str, text: &str) -> Result<SourceJudgement<HybType>, ParseError> {
    run(file, text, |p| p.src_judgement(&|p| p.hyb_type(), true, false))
}

pub fn parse_dcpt(file: &str, text: &str) -> Result<SourceJudgement<SessionFormula>, ParseError> {
    run(file, text, |p| p.src_judgement(&|p| p.session_formula(), false, true))
}

pub fn parse_session_formula(text: &str) -> Result<SessionFormula, ParseError> {
    run("<input>", text, |p| p.session_formula())
}
