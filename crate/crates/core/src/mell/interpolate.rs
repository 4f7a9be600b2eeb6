//! Interpolation by induction on cut-free proofs: for `⊢ Γ, Δ` find `F` with
//! `⊢ Γ, F` and `⊢ F⊥, Δ`, whose literals occur in both `Γ⊥` and `Δ`.

use thiserror::Error;

use super::proof::{Proof, Rule};
use crate::syntax::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpolationError {
    #[error("proof contains a cut at {}", fmt_path(.path))]
    NotCutFree { path: Vec<usize> },
    /// A profile axiom with one formula on each side of the split.
    #[error("profile axiom at {} straddles the partition", fmt_path(.path))]
    InterpolationUnsupported { path: Vec<usize> },
    #[error("partition index {0} out of range")]
    BadPartition(usize),
}

fn fmt_path(path: &[usize]) -> String {
    if path.is_empty() {
        "root".into()
    } else {
        path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpolant {
    pub formula: Formula,
    /// `⊢ Γ, F` with Γ in conclusion order.
    pub left: Proof,
    /// `⊢ F⊥, Δ` with Δ in conclusion order.
    pub right: Proof,
}

/// `gamma` lists the conclusion positions forming Γ; the rest is Δ.
pub fn interpolate(p: &Proof, gamma: &[usize]) -> Result<Interpolant, InterpolationError> {
    let mut side = vec![false; p.conclusion.len()];
    for &i in gamma {
        *side.get_mut(i).ok_or(InterpolationError::BadPartition(i))? = true;
    }
    let mut path = Vec::new();
    let (formula, left, right) = go(p, &side, &mut path)?;
    Ok(Interpolant { formula, left, right })
}

fn split(c: &[Formula], side: &[bool]) -> (Vec<Formula>, Vec<Formula>) {
    let mut g = Vec::new();
    let mut d = Vec::new();
    for (f, &s) in c.iter().zip(side) {
        if s {
            g.push(f.clone())
        } else {
            d.push(f.clone())
        }
    }
    (g, d)
}

fn targets(p: &Proof, side: &[bool], f: &Formula) -> (Vec<Formula>, Vec<Formula>) {
    let (mut g, d) = split(&p.conclusion, side);
    g.push(f.clone());
    let mut r = vec![f.negate()];
    r.extend(d);
    (g, r)
}

/// Side assignment for a unary premiss `context ++ news`.
fn premiss_side(side: &[bool], principal: usize, news: usize) -> Vec<bool> {
    let mut s: Vec<bool> = side.to_vec();
    let ps = s.remove(principal);
    s.extend(std::iter::repeat_n(ps, news));
    s
}

type Triple = (Formula, Proof, Proof);

fn go(p: &Proof, side: &[bool], path: &mut Vec<usize>) -> Result<Triple, InterpolationError> {
    let c = &p.conclusion;
    match &p.rule {
        Rule::Cut { .. } => Err(InterpolationError::NotCutFree { path: path.clone() }),
        Rule::Ax | Rule::ProfileAxiom { .. } => {
            let axiom = matches!(p.rule, Rule::Ax);
            match (side[0], side[1]) {
                (true, true) => Ok((Formula::Bot, Proof::bot_last(p.clone()), Proof::one())),
                (false, false) => Ok((Formula::One, Proof::one(), Proof::bot_last(p.clone()).to_front(2))),
                (true, false) | (false, true) if axiom => {
                    // Γ = {A⊥} or {A}, Δ the other one: F := Δ
                    let d = if side[0] { &c[1] } else { &c[0] };
                    Ok((d.clone(), Proof::ax(d), Proof::ax(d)))
                }
                _ => Err(InterpolationError::InterpolationUnsupported { path: path.clone() }),
            }
        }
        Rule::One => {
            if side[0] {
                Ok((Formula::Bot, Proof::bot_last(Proof::one()), Proof::one()))
            } else {
                Ok((Formula::One, Proof::one(), Proof::bot_last(Proof::one()).to_front(1)))
            }
        }
        Rule::Exchange { perm } => {
            let mut ps = vec![false; perm.len()];
            for (i, &j) in perm.iter().enumerate() {
                ps[j] = side[i];
            }
            path.push(0);
            let (f, l, r) = go(&p.premises[0], &ps, path)?;
            path.pop();
            let (tg, td) = targets(p, side, &f);
            Ok((f, l.reorder(&tg), r.reorder(&td)))
        }
        Rule::Tensor { principal, left } => {
            let mut s0 = Vec::new();
            let mut s1 = Vec::new();
            for (j, &s) in side.iter().enumerate() {
                if j == *principal {
                    continue;
                }
                if left.contains(&j) {
                    s0.push(s)
                } else {
                    s1.push(s)
                }
            }
            let ps = side[*principal];
            s0.push(ps);
            s1.push(ps);
            path.push(0);
            let (f1, l1, r1) = go(&p.premises[0], &s0, path)?;
            path.pop();
            path.push(1);
            let (f2, l2, r2) = go(&p.premises[1], &s1, path)?;
            path.pop();
            let (f, l, r) = if !ps {
                // ⊢ Γ1, F1 / ⊢ Γ2, F2 and ⊢ F1⊥, Δ1, A / ⊢ F2⊥, Δ2, B
                let f = Formula::tensor(f1, f2);
                let l = Proof::tensor(l1, l2);
                let t = Proof::tensor(r1, r2);
                (f, l, par_pair(t, 0, count(&s0, false)))
            } else {
                // ⊢ Γ1, A, F1 / ⊢ Γ2, B, F2 and ⊢ F1⊥, Δ1 / ⊢ F2⊥, Δ2
                let f = Formula::par(f1, f2);
                let t = Proof::tensor(swap_last_two(l1), swap_last_two(l2));
                let i1 = count(&s0, true) - 1;
                let l = par_pair(t, i1, i1 + count(&s1, true));
                (f, l, Proof::tensor(r1.to_back(0), r2.to_back(0)))
            };
            let (tg, td) = targets(p, side, &f);
            Ok((f, l.reorder(&tg), r.reorder(&td)))
        }
        Rule::Promotion { principal } => {
            let ps = premiss_side(side, *principal, 1);
            path.push(0);
            let (f, l, r) = go(&p.premises[0], &ps, path)?;
            path.pop();
            let n = r.conclusion.len();
            if !side[*principal] {
                // ⊢ ?Γ', F  and  ⊢ F⊥, ?Δ', B
                let fo = Formula::bang(f.clone());
                let (tg, td) = targets(p, side, &fo);
                let l = Proof::promotion_last(l).reorder(&tg);
                let d = Proof::dereliction_last(r.to_back(0)).to_back(n - 2);
                let r = Proof::promotion_last(d).reorder(&td);
                Ok((fo, l, r))
            } else {
                // ⊢ ?Γ', B, F  and  ⊢ F⊥, ?Δ'
                let fo = Formula::quest(f.clone());
                let (tg, td) = targets(p, side, &fo);
                let m = l.conclusion.len();
                let d = Proof::dereliction_last(l).to_back(m - 2);
                let l = Proof::promotion_last(d).reorder(&tg);
                let r = Proof::promotion_last(r.to_back(0)).reorder(&td);
                Ok((fo, l, r))
            }
        }
        Rule::Par { principal }
        | Rule::Bot { principal }
        | Rule::Dereliction { principal }
        | Rule::Weakening { principal }
        | Rule::Contraction { principal } => {
            let news = match &p.rule {
                Rule::Par { .. } | Rule::Contraction { .. } => 2,
                Rule::Dereliction { .. } => 1,
                _ => 0,
            };
            let ps = premiss_side(side, *principal, news);
            path.push(0);
            let (f, l, r) = go(&p.premises[0], &ps, path)?;
            path.pop();
            let (tg, td) = targets(p, side, &f);
            let build = |q: Proof| -> Proof {
                match &p.rule {
                    Rule::Par { .. } => Proof::par_last(q),
                    Rule::Bot { .. } => Proof::bot_last(q),
                    Rule::Dereliction { .. } => Proof::dereliction_last(q),
                    Rule::Weakening { .. } => Proof::weakening_last(q, c[*principal].clone()),
                    _ => Proof::contraction_last(q),
                }
            };
            if side[*principal] {
                // l: ⊢ ctxΓ, news, F  →  ⊢ ctxΓ, F, news
                let m = l.conclusion.len();
                let mut order = l.conclusion.clone();
                let fo = order.remove(m - 1);
                order.insert(m - 1 - news, fo);
                Ok((f, build(l.reorder(&order)).reorder(&tg), r.reorder(&td)))
            } else {
                Ok((f, l.reorder(&tg), build(r).reorder(&td)))
            }
        }
    }
}

fn count(s: &[bool], which: bool) -> usize {
    s.iter().filter(|b| **b == which).count()
}

/// Moves positions `i < j` to the end and joins them with ⅋.
fn par_pair(p: Proof, i: usize, j: usize) -> Proof {
    let mut order = p.conclusion.clone();
    let b = order.remove(j);
    let a = order.remove(i);
    order.push(a);
    order.push(b);
    Proof::par_last(p.reorder(&order))
}

/// `⊢ Γ, A, F` to `⊢ Γ, F, A`.
fn swap_last_two(p: Proof) -> Proof {
    let n = p.conclusion.len();
    let mut order = p.conclusion.clone();
    order.swap(n - 2, n - 1);
    p.reorder(&order)
}
