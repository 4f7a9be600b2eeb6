use serde::{Deserialize, Serialize};

use super::profile::Schema;
use crate::syntax::Formula;

/// One inference. Premiss layouts are fixed so a node can be checked from
/// its own conclusion and the conclusions of its premisses:
///
/// * the *context* of a node is its conclusion with `principal` removed,
///   order preserved;
/// * `par`, `dereliction`, `promotion`: premiss = context ++ [subformula(s)];
/// * `bot`, `weakening`: premiss = context;
/// * `contraction`: premiss = context ++ [?A, ?A];
/// * `tensor`: premiss 0 = context at `left` ++ [A], premiss 1 = remaining
///   context ++ [B];
/// * `cut`: premiss 0 = Γ ++ [A], premiss 1 = [A⊥] ++ Δ, conclusion Γ ++ Δ;
/// * `exchange`: conclusion[i] = premiss[perm[i]].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Rule {
    Ax,
    Cut { formula: Formula },
    Tensor { principal: usize, left: Vec<usize> },
    Par { principal: usize },
    One,
    Bot { principal: usize },
    Dereliction { principal: usize },
    Weakening { principal: usize },
    Contraction { principal: usize },
    Promotion { principal: usize },
    Exchange { perm: Vec<usize> },
    ProfileAxiom { schema: Schema },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Ax => "ax",
            Rule::Cut { .. } => "cut",
            Rule::Tensor { .. } => "tensor",
            Rule::Par { .. } => "par",
            Rule::One => "one",
            Rule::Bot { .. } => "bot",
            Rule::Dereliction { .. } => "dereliction",
            Rule::Weakening { .. } => "weakening",
            Rule::Contraction { .. } => "contraction",
            Rule::Promotion { .. } => "promotion",
            Rule::Exchange { .. } => "exchange",
            Rule::ProfileAxiom { .. } => "profile-axiom",
        }
    }

    pub fn principal(&self) -> Option<usize> {
        match self {
            Rule::Tensor { principal, .. }
            | Rule::Par { principal }
            | Rule::Bot { principal }
            | Rule::Dereliction { principal }
            | Rule::Weakening { principal }
            | Rule::Contraction { principal }
            | Rule::Promotion { principal } => Some(*principal),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Proof {
    #[serde(flatten)]
    pub rule: Rule,
    pub conclusion: Vec<Formula>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<Proof>,
}

pub const PROOF_FORMAT: &str = "pict-proof/1";

#[derive(Serialize, Deserialize)]
struct Envelope {
    format: String,
    proof: Proof,
}

fn without(gamma: &[Formula], i: usize) -> Vec<Formula> {
    let mut v = gamma.to_vec();
    v.remove(i);
    v
}

impl Proof {
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Proof::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(Proof::depth).max().unwrap_or(0)
    }

    /// Indented tree, conclusion first.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.walk(&mut |path, p| {
            out.push_str(&"  ".repeat(path.len()));
            out.push_str(&format!("[{}] {}\n", p.rule.name(), crate::surface::sequent_to_string(&p.conclusion)));
        });
        out
    }

    pub fn is_cut_free(&self) -> bool {
        !matches!(self.rule, Rule::Cut { .. }) && self.premises.iter().all(Proof::is_cut_free)
    }

    pub fn uses_profile_axioms(&self) -> bool {
        matches!(self.rule, Rule::ProfileAxiom { .. }) || self.premises.iter().any(Proof::uses_profile_axioms)
    }

    /// Pre-order walk with the path (premiss indices) to each node.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&[usize], &'a Proof)) {
        fn go<'a>(p: &'a Proof, path: &mut Vec<usize>, f: &mut impl FnMut(&[usize], &'a Proof)) {
            f(path, p);
            for (i, q) in p.premises.iter().enumerate() {
                path.push(i);
                go(q, path, f);
                path.pop();
            }
        }
        go(self, &mut Vec::new(), f)
    }

    pub fn node_mut(&mut self, path: &[usize]) -> Option<&mut Proof> {
        let mut p = self;
        for &i in path {
            p = p.premises.get_mut(i)?;
        }
        Some(p)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(Envelope { format: PROOF_FORMAT.into(), proof: self.clone() }).expect("proof serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Proof, String> {
        let env: Envelope = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
        if env.format != PROOF_FORMAT {
            return Err(format!("unsupported proof format `{}`", env.format));
        }
        Ok(env.proof)
    }

    // ---- builders: each produces a node in the canonical layout ----

    /// `⊢ A⊥, A`.
    pub fn ax(a: &Formula) -> Proof {
        Proof { rule: Rule::Ax, conclusion: vec![a.negate(), a.clone()], premises: vec![] }
    }

    pub fn one() -> Proof {
        Proof { rule: Rule::One, conclusion: vec![Formula::One], premises: vec![] }
    }

    /// Premiss `⊢ Γ, A, B` (last two) to `⊢ Γ, A⅋B`.
    pub fn par_last(p: Proof) -> Proof {
        let mut c = p.conclusion.clone();
        let b = c.pop().expect("par premiss has two formulas");
        let a = c.pop().expect("par premiss has two formulas");
        c.push(Formula::par(a, b));
        let principal = c.len() - 1;
        Proof { rule: Rule::Par { principal }, conclusion: c, premises: vec![p] }
    }

    /// `⊢ Γ` to `⊢ Γ, ⊥`.
    pub fn bot_last(p: Proof) -> Proof {
        let mut c = p.conclusion.clone();
        c.push(Formula::Bot);
        let principal = c.len() - 1;
        Proof { rule: Rule::Bot { principal }, conclusion: c, premises: vec![p] }
    }

    /// `⊢ Γ, A` and `⊢ Δ, B` (principal formulas last) to `⊢ Γ, Δ, A⊗B`.
    pub fn tensor(p0: Proof, p1: Proof) -> Proof {
        let mut g = p0.conclusion.clone();
        let a = g.pop().expect("tensor premiss is non-empty");
        let mut d = p1.conclusion.clone();
        let b = d.pop().expect("tensor premiss is non-empty");
        let left = (0..g.len()).collect();
        g.extend(d);
        g.push(Formula::tensor(a, b));
        let principal = g.len() - 1;
        Proof { rule: Rule::Tensor { principal, left }, conclusion: g, premises: vec![p0, p1] }
    }

    /// `⊢ Γ, A` to `⊢ Γ, ?A`.
    pub fn dereliction_last(p: Proof) -> Proof {
        let mut c = p.conclusion.clone();
        let a = c.pop().expect("dereliction premiss is non-empty");
        c.push(Formula::quest(a));
        let principal = c.len() - 1;
        Proof { rule: Rule::Dereliction { principal }, conclusion: c, premises: vec![p] }
    }

    /// `⊢ Γ` to `⊢ Γ, ?A`; `qa` must be `?`-headed.
    pub fn weakening_last(p: Proof, qa: Formula) -> Proof {
        debug_assert!(qa.is_quest());
        let mut c = p.conclusion.clone();
        c.push(qa);
        let principal = c.len() - 1;
        Proof { rule: Rule::Weakening { principal }, conclusion: c, premises: vec![p] }
    }

    /// `⊢ Γ, ?A, ?A` (last two) to `⊢ Γ, ?A`.
    pub fn contraction_last(p: Proof) -> Proof {
        let mut c = p.conclusion.clone();
        c.pop();
        let principal = c.len() - 1;
        Proof { rule: Rule::Contraction { principal }, conclusion: c, premises: vec![p] }
    }

    /// `⊢ ?Γ, B` to `⊢ ?Γ, !B`.
    pub fn promotion_last(p: Proof) -> Proof {
        let mut c = p.conclusion.clone();
        let b = c.pop().expect("promotion premiss is non-empty");
        c.push(Formula::bang(b));
        let principal = c.len() - 1;
        Proof { rule: Rule::Promotion { principal }, conclusion: c, premises: vec![p] }
    }

    /// `⊢ Γ, A` and `⊢ A⊥, Δ` to `⊢ Γ, Δ`; the caller guarantees the shapes.
    pub fn cut_raw(p0: Proof, p1: Proof) -> Proof {
        let mut g = p0.conclusion.clone();
        let a = g.pop().expect("cut premiss is non-empty");
        g.extend(p1.conclusion.iter().skip(1).cloned());
        Proof { rule: Rule::Cut { formula: a }, conclusion: g, premises: vec![p0, p1] }
    }

    pub fn profile_axiom(schema: Schema, conclusion: Vec<Formula>) -> Proof {
        Proof { rule: Rule::ProfileAxiom { schema }, conclusion, premises: vec![] }
    }

    /// Permutes the conclusion to `target`, which must be a rearrangement of
    /// it. Identity permutations add no node.
    pub fn reorder(self, target: &[Formula]) -> Proof {
        assert_eq!(self.conclusion.len(), target.len(), "reorder: different lengths");
        let mut used = vec![false; target.len()];
        let mut perm = Vec::with_capacity(target.len());
        for t in target {
            let j = (0..self.conclusion.len())
                .find(|&j| !used[j] && self.conclusion[j] == *t)
                .unwrap_or_else(|| panic!("reorder: `{t}` missing from conclusion"));
            used[j] = true;
            perm.push(j);
        }
        if perm.iter().enumerate().all(|(i, &j)| i == j) {
            return self;
        }
        Proof { rule: Rule::Exchange { perm }, conclusion: target.to_vec(), premises: vec![self] }
    }

    /// Moves position `i` to the end.
    pub fn to_back(self, i: usize) -> Proof {
        let mut t = without(&self.conclusion, i);
        t.push(self.conclusion[i].clone());
        self.reorder(&t)
    }

    /// Moves position `i` to the front.
    pub fn to_front(self, i: usize) -> Proof {
        let mut t = without(&self.conclusion, i);
        t.insert(0, self.conclusion[i].clone());
        self.reorder(&t)
    }

    /// Adjusts the conclusion to `target` using only structural rules:
    /// surplus copies of `?`-formulas are contracted, missing `?`-formulas are
    /// weakened, then the result is permuted. Non-`?` formulas must agree as
    /// multisets.
    pub fn fit(self, target: &[Formula]) -> Proof {
        let mut p = self;
        // contract surplus
        loop {
            let surplus = p.conclusion.iter().enumerate().find_map(|(i, f)| {
                if !f.is_quest() {
                    return None;
                }
                let have = p.conclusion.iter().filter(|g| *g == f).count();
                let want = target.iter().filter(|g| *g == f).count();
                (have > want.max(1)).then_some(i)
            });
            let Some(i) = surplus else { break };
            let f = p.conclusion[i].clone();
            let j = (i + 1..p.conclusion.len()).find(|&j| p.conclusion[j] == f).expect("second copy");
            let mut t = without(&p.conclusion, j);
            let i2 = t.iter().position(|g| *g == f).expect("first copy");
            t.remove(i2);
            t.push(f.clone());
            t.push(f);
            p = Proof::contraction_last(p.reorder(&t));
        }
        // weaken missing
        for f in target {
            let have = p.conclusion.iter().filter(|g| *g == f).count();
            let want = target.iter().filter(|g| *g == f).count();
            for _ in have..want {
                p = Proof::weakening_last(p, f.clone());
            }
        }
        // formulas present but absent from the target: only ?-formulas can go
        if let Some(f) = p.conclusion.iter().find(|f| !target.contains(f)) {
            panic!("fit: `{f}` not in target");
        }
        p.reorder(target)
    }
}

/// `⊢ A⊥, A` built from atomic axioms only.
pub fn eta_expand(a: &Formula) -> Proof {
    match a {
        Formula::Lit(_) => Proof::ax(a),
        Formula::Tensor(x, y) => {
            // ⊢ A⊥⅋B⊥, A⊗B
            let t = Proof::tensor(eta_expand(x), eta_expand(y));
            // t: ⊢ x⊥, y⊥, x⊗y
            let t = t.to_front(2);
            Proof::par_last(t).to_front(1)
        }
        Formula::Par(..) => eta_expand(&a.negate()).to_front(1),
        Formula::One => Proof::bot_last(Proof::one()).to_front(1),
        Formula::Bot => Proof::bot_last(Proof::one()),
        Formula::Bang(x) => {
            // ⊢ ?x⊥, !x
            let d = Proof::dereliction_last(eta_expand(x).to_back(0));
            Proof::promotion_last(d.to_back(0))
        }
        Formula::Quest(_) => eta_expand(&a.negate()).to_front(1),
    }
}
