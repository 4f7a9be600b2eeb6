use crate::syntax::{Behaviour, Capability, Formula, Kind, Name, Polarity, Process};

use super::lexer::{tokenize, Tok, Token};
use super::{Judgement, ParseError, SourceSpan};

const KEYWORDS: &[&str] = &["in", "out", "bot", "new", "given"];

pub(crate) struct Parser<'a> {
    file: &'a str,
    toks: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(file: &'a str, text: &str) -> Result<Self, ParseError> {
        Ok(Parser { file, toks: tokenize(file, text)?, pos: 0 })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    pub(crate) fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn span_here(&self) -> SourceSpan {
        let t = &self.toks[self.pos];
        SourceSpan::new(self.file, t.start, t.end)
    }

    pub(crate) fn error(&self, message: impl Into<String>, expected: &[&str]) -> ParseError {
        ParseError { span: self.span_here(), message: message.into(), expected: expected.iter().map(|s| s.to_string()).collect() }
    }

    pub(crate) fn unexpected(&self, expected: &[&str]) -> ParseError {
        self.error(format!("unexpected {}", self.peek().describe()), expected)
    }

    pub(crate) fn expect(&mut self, tok: Tok) -> Result<Token, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            let d = tok.describe();
            Err(self.unexpected(&[d.as_str()]))
        }
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    pub(crate) fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected(&["end of input"]))
        }
    }

    pub(crate) fn name(&mut self) -> Result<Name, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(Name::new(s))
            }
            _ => Err(self.unexpected(&["name"])),
        }
    }

    pub(crate) fn names_until(&mut self, close: Tok) -> Result<Vec<Name>, ParseError> {
        let mut out = Vec::new();
        if self.eat(&close) {
            return Ok(out);
        }
        loop {
            out.push(self.name()?);
            if self.eat(&Tok::Comma) {
                continue;
            }
            let d = close.describe();
            if self.eat(&close) {
                return Ok(out);
            }
            return Err(self.unexpected(&["`,`", d.as_str()]));
        }
    }

    // ---- behaviours ----

    pub(crate) fn behaviour(&mut self) -> Result<Behaviour, ParseError> {
        let mut acc = self.behaviour_tensor()?;
        while self.eat(&Tok::ParOp) {
            acc = Behaviour::par(acc, self.behaviour_tensor()?);
        }
        Ok(acc)
    }

    fn behaviour_tensor(&mut self) -> Result<Behaviour, ParseError> {
        let mut acc = self.behaviour_atom()?;
        while self.eat(&Tok::Tensor) {
            acc = Behaviour::tensor(acc, self.behaviour_atom()?);
        }
        Ok(acc)
    }

    fn behaviour_atom(&mut self) -> Result<Behaviour, ParseError> {
        match self.peek() {
            Tok::Bang => {
                self.bump();
                Ok(Behaviour::Bang(self.capability()?))
            }
            Tok::Quest => {
                self.bump();
                Ok(Behaviour::Quest(self.capability()?))
            }
            Tok::Num(n) if n == "1" => {
                self.bump();
                Ok(Behaviour::One)
            }
            Tok::LParen => {
                self.bump();
                let b = self.behaviour()?;
                self.expect(Tok::RParen)?;
                Ok(b)
            }
            _ if self.is_keyword("bot") => {
                self.bump();
                Ok(Behaviour::Bot)
            }
            _ if self.is_keyword("in") || self.is_keyword("out") => Ok(Behaviour::Cap(self.capability()?)),
            _ => Err(self.unexpected(&["`in`", "`out`", "`!`", "`?`", "`1`", "`bot`", "`(`"])),
        }
    }

    fn capability(&mut self) -> Result<Capability, ParseError> {
        let polarity = if self.is_keyword("in") {
            Polarity::Input
        } else if self.is_keyword("out") {
            Polarity::Output
        } else {
            return Err(self.unexpected(&["`in`", "`out`"]));
        };
        self.bump();
        Ok(Capability::new(polarity, self.behaviour_atom()?))
    }

    // ---- formulas ----

    pub(crate) fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.formula_tensor()?;
        while self.eat(&Tok::ParOp) {
            acc = Formula::par(acc, self.formula_tensor()?);
        }
        Ok(acc)
    }

    fn formula_tensor(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.formula_unary()?;
        while self.eat(&Tok::Tensor) {
            acc = Formula::tensor(acc, self.formula_unary()?);
        }
        Ok(acc)
    }

    fn formula_unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(self.formula_unary()?.negate())
            }
            Tok::Bang => {
                self.bump();
                Ok(Formula::bang(self.formula_unary()?))
            }
            Tok::Quest => {
                self.bump();
                Ok(Formula::quest(self.formula_unary()?))
            }
            Tok::Num(n) if n == "1" => {
                self.bump();
                Ok(Formula::One)
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(s) if s == "bot" => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::Ident(_) => {
                let name = self.name()?;
                if self.eat(&Tok::Colon) {
                    Ok(Formula::assign(name, self.capability()?))
                } else {
                    Ok(Formula::var(name.as_str()))
                }
            }
            _ => Err(self.unexpected(&["name", "`~`", "`!`", "`?`", "`1`", "`bot`", "`(`"])),
        }
    }

    /// A formula in a position that must be an environment type.
    pub(crate) fn environment(&mut self) -> Result<Formula, ParseError> {
        let start = self.toks[self.pos].start;
        let f = self.formula()?;
        let end = self.toks[self.pos.saturating_sub(1)].end;
        if !f.is_environment_type() {
            return Err(ParseError {
                span: SourceSpan::new(self.file, start, end.max(start)),
                message: "not an environment type: only positive capability assignments, with `!`/`?` on assignments only".into(),
                expected: Vec::new(),
            });
        }
        Ok(f)
    }

    pub(crate) fn sequent(&mut self) -> Result<Vec<Formula>, ParseError> {
        self.expect(Tok::Turnstile)?;
        let mut out = Vec::new();
        if *self.peek() == Tok::Eof {
            return Ok(out);
        }
        loop {
            out.push(self.formula()?);
            if !self.eat(&Tok::Comma) {
                return Ok(out);
            }
        }
    }

    // ---- processes ----

    pub(crate) fn process(&mut self) -> Result<Process, ParseError> {
        let mut acc = self.process_prefix()?;
        while self.eat(&Tok::Bar) {
            acc = Process::par(acc, self.process_prefix()?);
        }
        Ok(acc)
    }

    pub(crate) fn binders(&mut self) -> Result<Vec<Name>, ParseError> {
        let start = self.span_here();
        self.expect(Tok::LParen)?;
        let names = self.names_until(Tok::RParen)?;
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(ParseError {
                    span: SourceSpan::new(self.file, start.start, self.toks[self.pos - 1].end),
                    message: format!("binder `{n}` repeated in input prefix"),
                    expected: Vec::new(),
                });
            }
        }
        Ok(names)
    }

    fn process_prefix(&mut self) -> Result<Process, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) if n == "0" => {
                self.bump();
                Ok(Process::Nop)
            }
            Tok::LParen => {
                self.bump();
                let p = self.process()?;
                self.expect(Tok::RParen)?;
                Ok(p)
            }
            Tok::Star => {
                self.bump();
                let subject = self.name()?;
                let binders = self.binders()?;
                self.expect(Tok::Dot)?;
                Ok(Process::rep_input(subject, binders, self.process_prefix()?))
            }
            Tok::Ident(s) if s == "new" => {
                self.bump();
                self.expect(Tok::LBrack)?;
                let kind = match self.peek().clone() {
                    Tok::Num(n) if n == "1" => Kind::Lin,
                    Tok::Ident(w) if w == "w" => Kind::Omega,
                    _ => return Err(self.unexpected(&["`1`", "`w`"])),
                };
                self.bump();
                self.expect(Tok::RBrack)?;
                let binder = self.name()?;
                self.expect(Tok::Colon)?;
                let payload = self.behaviour()?;
                self.expect(Tok::Dot)?;
                Ok(Process::new_chan(binder, payload, kind, self.process_prefix()?))
            }
            Tok::Ident(_) => {
                let subject = self.name()?;
                match self.peek() {
                    Tok::LParen => {
                        let binders = self.binders()?;
                        self.expect(Tok::Dot)?;
                        Ok(Process::input(subject, binders, self.process_prefix()?))
                    }
                    Tok::Lt => {
                        self.bump();
                        let objects = self.names_until(Tok::Gt)?;
                        let cont = if self.eat(&Tok::Dot) { self.process_prefix()? } else { Process::Nop };
                        Ok(Process::output(subject, objects, cont))
                    }
                    _ => Err(self.unexpected(&["`(`", "`<`"])),
                }
            }
            _ => Err(self.unexpected(&["`0`", "`*`", "`new`", "name", "`(`"])),
        }
    }

    pub(crate) fn judgement(&mut self) -> Result<Judgement, ParseError> {
        if !self.is_keyword("given") {
            return Err(self.unexpected(&["`given`"]));
        }
        self.bump();
        let env = if *self.peek() == Tok::Turnstile {
            Formula::Bot
        } else {
            let mut parts = vec![self.environment()?];
            while self.eat(&Tok::Comma) {
                parts.push(self.environment()?);
            }
            Formula::tensor_all(parts)
        };
        self.expect(Tok::Turnstile)?;
        let process = self.process()?;
        Ok(Judgement { env, process })
    }

    pub(crate) fn at_keyword(&self, kw: &str) -> bool {
        self.is_keyword(kw)
    }

    pub(crate) fn at_turnstile(&self) -> bool {
        *self.peek() == Tok::Turnstile
    }

    #[allow(dead_code)]
    pub(crate) fn lookahead(&self, k: usize) -> &Tok {
        self.peek_at(k)
    }
}
