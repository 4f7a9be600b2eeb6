//! Typing derivations over judgements `E ⊢ P`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::mell::Proof;
use crate::syntax::{Formula, Process};

pub const DERIVATION_FORMAT: &str = "pict-derivation/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TypingRule {
    Nop,
    Para,
    Sub,
    In,
    InBang,
    Out,
    NewLin,
    NewOmega,
    DerivedOutAsync,
    DerivedOutBound,
    DerivedNewStar,
}

impl TypingRule {
    pub fn name(self) -> &'static str {
        match self {
            TypingRule::Nop => "nop",
            TypingRule::Para => "para",
            TypingRule::Sub => "sub",
            TypingRule::In => "in",
            TypingRule::InBang => "in-bang",
            TypingRule::Out => "out",
            TypingRule::NewLin => "new-lin",
            TypingRule::NewOmega => "new-omega",
            TypingRule::DerivedOutAsync => "derived-out-async",
            TypingRule::DerivedOutBound => "derived-out-bound",
            TypingRule::DerivedNewStar => "derived-new-star",
        }
    }

    pub fn is_derived(self) -> bool {
        matches!(self, TypingRule::DerivedOutAsync | TypingRule::DerivedOutBound | TypingRule::DerivedNewStar)
    }

    /// Rules whose premiss may sit under a `sub` in normal form.
    pub fn constrains_premiss(self) -> bool {
        matches!(self, TypingRule::In | TypingRule::InBang | TypingRule::NewLin | TypingRule::NewOmega)
    }
}

impl fmt::Display for TypingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusion {
    pub env: Formula,
    pub process: Process,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub rule: TypingRule,
    pub conclusion: Conclusion,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<Derivation>,
    /// For `sub`: a proof of `⊢ E⊥, F`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proof: Option<Proof>,
}

impl Derivation {
    pub fn new(rule: TypingRule, env: Formula, process: Process, premises: Vec<Derivation>) -> Self {
        Derivation { rule, conclusion: Conclusion { env, process }, premises, proof: None }
    }

    pub fn sub(env: Formula, proof: Proof, premise: Derivation) -> Self {
        let process = premise.process().clone();
        Derivation { rule: TypingRule::Sub, conclusion: Conclusion { env, process }, premises: vec![premise], proof: Some(proof) }
    }

    pub fn env(&self) -> &Formula {
        &self.conclusion.env
    }

    pub fn process(&self) -> &Process {
        &self.conclusion.process
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    /// Pre-order traversal with paths (premiss indices from the root).
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&[usize], &'a Derivation)) {
        fn go<'a>(d: &'a Derivation, path: &mut Vec<usize>, f: &mut impl FnMut(&[usize], &'a Derivation)) {
            f(path, d);
            for (i, p) in d.premises.iter().enumerate() {
                path.push(i);
                go(p, path, f);
                path.pop();
            }
        }
        go(self, &mut Vec::new(), f)
    }

    pub fn has_derived_rules(&self) -> bool {
        let mut found = false;
        self.walk(&mut |_, d| found |= d.rule.is_derived());
        found
    }

    /// `sub` only at the root and right above `in`, `in-bang` and `new`
    /// rules, never twice in a row.
    pub fn is_sub_normal(&self) -> bool {
        fn go(d: &Derivation, parent: Option<TypingRule>) -> bool {
            if d.rule == TypingRule::Sub && !parent.is_none_or(TypingRule::constrains_premiss) {
                return false;
            }
            d.premises.iter().all(|p| go(p, Some(d.rule)))
        }
        go(self, None)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "format": DERIVATION_FORMAT, "derivation": self })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Derivation, String> {
        match v.get("format").and_then(|f| f.as_str()) {
            Some(DERIVATION_FORMAT) => {}
            Some(other) => return Err(format!("unsupported derivation format `{other}`")),
            None => return Err("missing `format` field".into()),
        }
        let d = v.get("derivation").ok_or("missing `derivation` field")?;
        serde_json::from_value(d.clone()).map_err(|e| e.to_string())
    }

    /// Indented tree, conclusion first.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.walk(&mut |path, d| {
            out.push_str(&"  ".repeat(path.len()));
            out.push_str(&format!("[{}] {} |- {}\n", d.rule, d.env(), d.process()));
        });
        out
    }
}
