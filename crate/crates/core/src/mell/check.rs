use thiserror::Error;

use super::profile::Profile;
use super::proof::{Proof, Rule};
use crate::syntax::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    /// `path` lists premiss indices from the root to the offending node.
    #[error("rule mismatch at {}: {reason}", fmt_path(.path))]
    RuleMismatch { path: Vec<usize>, reason: String },
}

fn fmt_path(path: &[usize]) -> String {
    if path.is_empty() {
        "root".into()
    } else {
        path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
    }
}

fn show(gamma: &[Formula]) -> String {
    crate::surface::sequent_to_string(gamma)
}

/// Checks every node against its rule schema (or a profile axiom). Reports
/// the first failing node in pre-order.
pub fn check_proof(p: &Proof, profile: Profile) -> Result<(), ProofError> {
    let mut stack = vec![(p, Vec::new())];
    while let Some((node, path)) = stack.pop() {
        if let Err(reason) = check_node(node, profile) {
            return Err(ProofError::RuleMismatch { path, reason });
        }
        for (i, q) in node.premises.iter().enumerate().rev() {
            let mut qp = path.clone();
            qp.push(i);
            stack.push((q, qp));
        }
    }
    Ok(())
}

fn arity(p: &Proof, n: usize) -> Result<(), String> {
    if p.premises.len() == n {
        Ok(())
    } else {
        Err(format!("{} expects {n} premiss(es), found {}", p.rule.name(), p.premises.len()))
    }
}

fn expect_premiss(p: &Proof, i: usize, want: &[Formula]) -> Result<(), String> {
    let got = &p.premises[i].conclusion;
    if got.as_slice() == want {
        Ok(())
    } else {
        Err(format!("{}: premiss {i} should conclude `{}`, found `{}`", p.rule.name(), show(want), show(got)))
    }
}

fn principal(p: &Proof, i: usize) -> Result<(&Formula, Vec<Formula>), String> {
    let c = &p.conclusion;
    let f = c.get(i).ok_or_else(|| format!("{}: principal index {i} out of range", p.rule.name()))?;
    let mut ctx = c.clone();
    ctx.remove(i);
    Ok((f, ctx))
}

fn shape_error(p: &Proof, f: &Formula, want: &str) -> String {
    format!("{}: principal formula `{f}` is not {want}", p.rule.name())
}

fn check_node(p: &Proof, profile: Profile) -> Result<(), String> {
    let c = &p.conclusion;
    match &p.rule {
        Rule::Ax => {
            arity(p, 0)?;
            match c.as_slice() {
                [a, b] if *a == b.negate() => Ok(()),
                _ => Err(format!("ax: `{}` is not of the form ⊢ A⊥, A", show(c))),
            }
        }
        Rule::One => {
            arity(p, 0)?;
            if c.as_slice() == [Formula::One] {
                Ok(())
            } else {
                Err(format!("one: conclusion `{}` is not ⊢ 1", show(c)))
            }
        }
        Rule::ProfileAxiom { schema } => {
            arity(p, 0)?;
            if !profile.allows(*schema) {
                return Err(format!("profile {profile} has no axiom {}", schema.name()));
            }
            if schema.matches(c) {
                Ok(())
            } else {
                Err(format!("`{}` is not an instance of {}", show(c), schema.name()))
            }
        }
        Rule::Par { principal: i } => {
            arity(p, 1)?;
            let (f, mut ctx) = principal(p, *i)?;
            let Formula::Par(a, b) = f else { return Err(shape_error(p, f, "a par")) };
            ctx.push((**a).clone());
            ctx.push((**b).clone());
            expect_premiss(p, 0, &ctx)
        }
        Rule::Bot { principal: i } => {
            arity(p, 1)?;
            let (f, ctx) = principal(p, *i)?;
            if *f != Formula::Bot {
                return Err(shape_error(p, f, "⊥"));
            }
            expect_premiss(p, 0, &ctx)
        }
        Rule::Dereliction { principal: i } => {
            arity(p, 1)?;
            let (f, mut ctx) = principal(p, *i)?;
            let Formula::Quest(a) = f else { return Err(shape_error(p, f, "?-headed")) };
            ctx.push((**a).clone());
            expect_premiss(p, 0, &ctx)
        }
        Rule::Weakening { principal: i } => {
            arity(p, 1)?;
            let (f, ctx) = principal(p, *i)?;
            if !f.is_quest() {
                return Err(shape_error(p, f, "?-headed"));
            }
            expect_premiss(p, 0, &ctx)
        }
        Rule::Contraction { principal: i } => {
            arity(p, 1)?;
            let (f, mut ctx) = principal(p, *i)?;
            if !f.is_quest() {
                return Err(shape_error(p, f, "?-headed"));
            }
            ctx.push(f.clone());
            ctx.push(f.clone());
            expect_premiss(p, 0, &ctx)
        }
        Rule::Promotion { principal: i } => {
            arity(p, 1)?;
            let (f, mut ctx) = principal(p, *i)?;
            let Formula::Bang(b) = f else { return Err(shape_error(p, f, "!-headed")) };
            if let Some(g) = ctx.iter().find(|g| !g.is_quest()) {
                return Err(format!("promotion: side formula `{g}` is not ?-headed"));
            }
            ctx.push((**b).clone());
            expect_premiss(p, 0, &ctx)
        }
        Rule::Tensor { principal: i, left } => {
            arity(p, 2)?;
            let (f, _) = principal(p, *i)?;
            let Formula::Tensor(a, b) = f else { return Err(shape_error(p, f, "a tensor")) };
            let mut seen = vec![false; c.len()];
            for &j in left {
                if j >= c.len() || j == *i || seen[j] {
                    return Err(format!("tensor: bad left index {j}"));
                }
                seen[j] = true;
            }
            let mut l: Vec<Formula> = Vec::new();
            let mut r: Vec<Formula> = Vec::new();
            for (j, g) in c.iter().enumerate() {
                if j == *i {
                    continue;
                }
                if seen[j] {
                    l.push(g.clone())
                } else {
                    r.push(g.clone())
                }
            }
            l.push((**a).clone());
            r.push((**b).clone());
            expect_premiss(p, 0, &l)?;
            expect_premiss(p, 1, &r)
        }
        Rule::Cut { formula } => {
            arity(p, 2)?;
            let p0 = &p.premises[0].conclusion;
            let p1 = &p.premises[1].conclusion;
            if p0.last() != Some(formula) {
                return Err(format!("cut: left premiss must end with the cut formula `{formula}`"));
            }
            if p1.first() != Some(&formula.negate()) {
                return Err(format!("cut: right premiss must start with `{}`", formula.negate()));
            }
            let mut want = p0[..p0.len() - 1].to_vec();
            want.extend(p1[1..].iter().cloned());
            if *c == want {
                Ok(())
            } else {
                Err(format!("cut: conclusion should be `{}`, found `{}`", show(&want), show(c)))
            }
        }
        Rule::Exchange { perm } => {
            arity(p, 1)?;
            let prem = &p.premises[0].conclusion;
            if perm.len() != c.len() || prem.len() != c.len() {
                return Err("exchange: permutation length mismatch".into());
            }
            let mut seen = vec![false; perm.len()];
            for (i, &j) in perm.iter().enumerate() {
                if j >= perm.len() || seen[j] {
                    return Err("exchange: not a permutation".into());
                }
                seen[j] = true;
                if c[i] != prem[j] {
                    return Err(format!("exchange: position {i} should be `{}`", prem[j]));
                }
            }
            Ok(())
        }
    }
}
