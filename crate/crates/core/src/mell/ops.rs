use thiserror::Error;

use super::profile::Schema;
use super::proof::{eta_expand, Proof, Rule};
use crate::syntax::{Atom, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cut mismatch: `{left}` is not the negation of `{right}`")]
pub struct CutMismatch {
    pub left: Formula,
    pub right: Formula,
}

/// Cuts `p1: ⊢ Γ, A` (A last) against `p2: ⊢ A⊥, Δ` (A⊥ first), giving
/// `⊢ Γ, Δ`. This is transitivity of `≤` on `⊢ E⊥, F` and `⊢ F⊥, G`.
pub fn cut_compose(p1: Proof, p2: Proof) -> Result<Proof, CutMismatch> {
    let (Some(a), Some(b)) = (p1.conclusion.last(), p2.conclusion.first()) else {
        return Err(CutMismatch { left: Formula::Bot, right: Formula::Bot });
    };
    if *a != b.negate() {
        return Err(CutMismatch { left: a.clone(), right: b.clone() });
    }
    Ok(Proof::cut_raw(p1, p2))
}

/// Cuts position `i` of `p1` against position `j` of `p2`; the conclusion is
/// `p1` without `i` followed by `p2` without `j`.
pub fn cut_on(p1: Proof, i: usize, p2: Proof, j: usize) -> Result<Proof, CutMismatch> {
    cut_compose(p1.to_back(i), p2.to_front(j))
}

/// Replaces position `i` of `p: ⊢ Γ, F, Γ'` by `G` using `q: ⊢ F⊥, G`, i.e.
/// `F ≤ G`, keeping positions.
pub fn rewrite_at(p: Proof, i: usize, q: Proof) -> Proof {
    let mut target = p.conclusion.clone();
    target[i] = q.conclusion[1].clone();
    let r = cut_on(p, i, q, 0).expect("rewrite_at: cut formulas agree");
    r.reorder(&target)
}

/// Replaces the atom everywhere in the proof by `with`; atomic axioms on it
/// become η-expanded axioms on `with`.
pub fn substitute_proof(p: &Proof, atom: &Atom, with: &Formula) -> Proof {
    let sub = |f: &Formula| f.substitute_atom(atom, with);
    if matches!(p.rule, Rule::Ax) {
        if let [_, Formula::Lit(l)] = p.conclusion.as_slice() {
            if l.atom == *atom {
                return eta_expand(&sub(&p.conclusion[1]));
            }
        }
    }
    let rule = match &p.rule {
        Rule::Cut { formula } => Rule::Cut { formula: sub(formula) },
        r => r.clone(),
    };
    Proof {
        rule,
        conclusion: p.conclusion.iter().map(sub).collect(),
        premises: p.premises.iter().map(|q| substitute_proof(q, atom, with)).collect(),
    }
}

/// `⊢ Γ` and `⊢ Δ` to `⊢ Γ, Δ`, using the `⊥ ≤ 1` axiom:
/// `⊢ Γ, ⊥` cut against `⊢ 1, Δ` (itself `⊢ Δ, ⊥` cut against `⊢ 1, 1`).
pub fn mix(p: Proof, q: Proof) -> Proof {
    let n = p.conclusion.len();
    let m = q.conclusion.len();
    let left = Proof::bot_last(p);
    let q_bot = Proof::bot_last(q);
    let ones = Proof::profile_axiom(Schema::BotOne, vec![Formula::One, Formula::One]);
    // ⊢ Δ, 1
    let q_one = Proof::cut_raw(q_bot, ones);
    let right = q_one.to_front(m);
    let r = Proof::cut_raw(left, right);
    debug_assert_eq!(r.conclusion.len(), n + m);
    r
}

/// The empty sequent, using the `1 ≤ ⊥` axiom: `⊢ 1` cut against `⊢ ⊥, ⊥`
/// gives `⊢ ⊥`, which cut against `⊢ 1` gives `⊢`.
pub fn empty() -> Proof {
    let bots = Proof::profile_axiom(Schema::OneBot, vec![Formula::Bot, Formula::Bot]);
    let bot = Proof::cut_raw(Proof::one(), bots);
    Proof::cut_raw(Proof::one(), bot)
}
