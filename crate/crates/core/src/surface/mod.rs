//! Plain-text syntax for behaviours, formulas, sequents, processes and typing
//! judgements, with printers that round-trip through the parser.
//!
//! ```text
//! behaviour  in 1 (*) out (in 1)      !in bot      ?out 1
//! formula    x:in 1 (%) ~y:out 1      !z:in 1      a (*) ~b
//! sequent    |- ~a, a (%) 1
//! process    new[1] x : 1. (u<x> | *v(y, z).y<z>)
//! judgement  given u:out (out 1), v:!in 1 |- u<v>
//! ```

pub(crate) mod lexer;
pub(crate) mod parser;
mod print;
mod serde_impls;

use std::fmt;

use thiserror::Error;

use crate::syntax::{Behaviour, Formula, Process};

pub use print::sequent_to_string;

/// Byte range into a named source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceSpan {
    pub file: String,
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(file: &str, start: usize, end: usize) -> Self {
        SourceSpan { file: file.to_string(), start, end }
    }

    /// 1-based line and column of `start` within `text`.
    pub fn line_col(&self, text: &str) -> (usize, usize) {
        let upto = &text[..self.start.min(text.len())];
        let line = upto.matches('\n').count() + 1;
        let col = upto.rfind('\n').map_or(upto.len(), |i| upto.len() - i - 1) + 1;
        (line, col)
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}..{}", self.file, self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {message}{}", expected_suffix(.expected))]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    pub expected: Vec<String>,
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected {})", expected.join(" or "))
    }
}

impl ParseError {
    /// Multi-line diagnostic with `file:line:col` and a caret under the span.
    pub fn render(&self, text: &str) -> String {
        let (line, col) = self.span.line_col(text);
        let src = text.lines().nth(line - 1).unwrap_or("");
        let width = self.span.end.saturating_sub(self.span.start).max(1);
        let width = width.min(src.len().saturating_sub(col - 1).max(1));
        format!(
            "{}:{line}:{col}: {}{}\n  {src}\n  {}{}",
            self.span.file,
            self.message,
            expected_suffix(&self.expected),
            " ".repeat(col - 1),
            "^".repeat(width)
        )
    }
}

/// `given E |- P`. An empty `given` list means the environment `⊥`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Judgement {
    pub env: Formula,
    pub process: Process,
}

impl fmt::Display for Judgement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.env == Formula::Bot {
            write!(f, "given |- {}", self.process)
        } else {
            write!(f, "given {} |- {}", self.env, self.process)
        }
    }
}

fn run<T>(file: &str, text: &str, f: impl FnOnce(&mut parser::Parser<'_>) -> Result<T, ParseError>) -> Result<T, ParseError> {
    let mut p = parser::Parser::new(file, text)?;
    let out = f(&mut p)?;
    p.finish()?;
    Ok(out)
}

pub fn parse_behaviour(text: &str) -> Result<Behaviour, ParseError> {
    run("<input>", text, |p| p.behaviour())
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    run("<input>", text, |p| p.formula())
}

/// A formula restricted to environment types (positive assignments only).
pub fn parse_environment(text: &str) -> Result<Formula, ParseError> {
    run("<input>", text, |p| p.environment())
}

pub fn parse_sequent(text: &str) -> Result<Vec<Formula>, ParseError> {
    run("<input>", text, |p| p.sequent())
}

/// Accepts either `|- F, ...` or a bare comma-free formula (read as `|- F`).
pub fn parse_sequent_or_formula(file: &str, text: &str) -> Result<Vec<Formula>, ParseError> {
    run(file, text, |p| if p.at_turnstile() { p.sequent() } else { Ok(vec![p.formula()?]) })
}

pub fn parse_process(text: &str) -> Result<Process, ParseError> {
    parse_process_in("<input>", text)
}

pub fn parse_process_in(file: &str, text: &str) -> Result<Process, ParseError> {
    run(file, text, |p| p.process())
}

pub fn parse_judgement(file: &str, text: &str) -> Result<Judgement, ParseError> {
    run(file, text, |p| p.judgement())
}

/// A `.pic` file holds either a judgement (`given ... |- P`) or a bare
/// process, whose environment is then inferred.
pub fn parse_program(file: &str, text: &str) -> Result<(Option<Formula>, Process), ParseError> {
    run(file, text, |p| {
        if p.at_keyword("given") {
            let j = p.judgement()?;
            Ok((Some(j.env), j.process))
        } else {
            Ok((None, p.process()?))
        }
    })
}
