//! Criteria on proof objects: checker mutation, interpolation, substitution.

use std::time::Instant;

use pict::mell::{check_proof, interpolate, prove, substitute_proof, Budget, Profile, Proof, ProveOutcome, Rule};
use pict::{Atom, Formula, Literal};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::oracle::{self, Oracle, B, N};
use crate::Report;

/// Oracle-provable sequents of weight <= 7 with at least `min_len`
/// formulas, sampled at `rate` and returned in a seeded random order.
pub fn provable_sequents(rng: &mut ChaCha8Rng, min_len: usize, rate: f64, count: usize) -> Vec<Vec<N>> {
    let mut pool = vec![];
    oracle::enumerate(7, |n| {
        if n.sequent().len() >= min_len && rng.gen_bool(rate) {
            pool.push(n.sequent());
        }
    });
    pool.shuffle(rng);
    let mut o = Oracle::default();
    pool.into_iter().filter(|s| o.provable(&s.iter().map(B::from_n).collect::<Vec<_>>())).take(count).collect()
}

fn formulas(s: &[N]) -> Vec<Formula> {
    s.iter().map(N::to_formula).collect()
}

fn proved(fs: &[Formula]) -> Proof {
    match prove(fs, Profile::Core, Budget::default()) {
        ProveOutcome::Proved(p) => p,
        other => panic!("oracle-provable sequent not proved: {} ({})", pict::surface::sequent_to_string(fs), other.label()),
    }
}

fn small_formula(rng: &mut ChaCha8Rng, depth: u32) -> Formula {
    let atoms = ["a", "b", "c", "d"];
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..6) {
            0 => Formula::One,
            1 => Formula::Bot,
            k => {
                let f = Formula::var(atoms[k - 2]);
                if rng.gen() {
                    f
                } else {
                    f.negate()
                }
            }
        };
    }
    let a = small_formula(rng, depth - 1);
    match rng.gen_range(0..4) {
        0 => Formula::tensor(a, small_formula(rng, depth - 1)),
        1 => Formula::par(a, small_formula(rng, depth - 1)),
        2 => Formula::bang(a),
        _ => Formula::quest(a),
    }
}

/// A prover proof extended by a few random rule applications, so the pool
/// covers every rule (exponentials, cut, exchange) and not only search output.
fn grow(rng: &mut ChaCha8Rng, base: &[Proof]) -> Proof {
    let mut p = base.choose(rng).unwrap().clone();
    for _ in 0..rng.gen_range(0..5) {
        let last = p.conclusion.last().cloned();
        p = match rng.gen_range(0..9) {
            0 => Proof::bot_last(p),
            1 => Proof::weakening_last(p, Formula::quest(small_formula(rng, 2))),
            2 => Proof::dereliction_last(p),
            3 if p.conclusion.len() >= 2 => Proof::par_last(p),
            4 => Proof::tensor(p, base.choose(rng).unwrap().clone()),
            5 if p.conclusion[..p.conclusion.len() - 1].iter().all(Formula::is_quest) => Proof::promotion_last(p),
            6 if last.as_ref().is_some_and(Formula::is_quest) => Proof::contraction_last(Proof::weakening_last(p, last.unwrap())),
            7 => {
                let a = last.unwrap();
                Proof::cut_raw(p, Proof::ax(&a))
            }
            8 => {
                let mut target = p.conclusion.clone();
                target.shuffle(rng);
                p.reorder(&target)
            }
            _ => p,
        };
    }
    p
}

pub fn proof_pool(rng: &mut ChaCha8Rng, n: usize) -> Vec<Proof> {
    let base: Vec<Proof> = provable_sequents(rng, 1, 0.01, 150).iter().map(|s| proved(&formulas(s))).collect();
    (0..n).map(|_| grow(rng, &base)).collect()
}

#[derive(Clone, Copy, Debug)]
enum Mutation {
    SwapTag,
    DropPremiss,
    PermutePrincipal,
}

/// Each mutation provably changes what the node claims: swapped tags differ
/// in premiss count, premiss length or principal connective; a moved
/// principal points at a different formula.
fn mutate_node(node: &mut Proof, m: Mutation, rng: &mut ChaCha8Rng) -> bool {
    match m {
        Mutation::SwapTag => {
            node.rule = match node.rule.clone() {
                Rule::Ax => Rule::One,
                Rule::One => Rule::Ax,
                Rule::Par { principal } => Rule::Tensor { principal, left: vec![] },
                Rule::Tensor { principal, .. } => Rule::Par { principal },
                Rule::Bot { principal } => Rule::Weakening { principal },
                Rule::Weakening { principal } => Rule::Bot { principal },
                Rule::Dereliction { principal } => Rule::Promotion { principal },
                Rule::Promotion { principal } => Rule::Dereliction { principal },
                Rule::Contraction { principal } => Rule::Weakening { principal },
                _ => return false,
            };
            true
        }
        Mutation::DropPremiss => {
            if node.premises.is_empty() {
                return false;
            }
            let i = rng.gen_range(0..node.premises.len());
            node.premises.remove(i);
            true
        }
        Mutation::PermutePrincipal => {
            let Some(i) = node.rule.principal() else { return false };
            let others: Vec<usize> = (0..node.conclusion.len()).filter(|&j| node.conclusion[j] != node.conclusion[i]).collect();
            let Some(&j) = others.choose(rng) else { return false };
            match &mut node.rule {
                Rule::Tensor { principal, .. }
                | Rule::Par { principal }
                | Rule::Bot { principal }
                | Rule::Dereliction { principal }
                | Rule::Weakening { principal }
                | Rule::Contraction { principal }
                | Rule::Promotion { principal } => *principal = j,
                _ => unreachable!(),
            }
            true
        }
    }
}

fn mutate(p: &Proof, rng: &mut ChaCha8Rng) -> (Proof, Mutation) {
    let mut paths = vec![];
    p.walk(&mut |path, _| paths.push(path.to_vec()));
    loop {
        let m = *[Mutation::SwapTag, Mutation::DropPremiss, Mutation::PermutePrincipal].choose(rng).unwrap();
        let path = paths.choose(rng).unwrap();
        let mut q = p.clone();
        if mutate_node(q.node_mut(path).unwrap(), m, rng) {
            return (q, m);
        }
    }
}

pub fn c2_mutation(r: &mut Report, rng: &mut ChaCha8Rng) {
    let pool = proof_pool(rng, 500);
    let valid = pool.iter().filter(|p| check_proof(p, Profile::Core).is_ok()).count();
    let mut rejected = 0;
    let mut kinds = [0usize; 3];
    let mut first_bad = None;
    for p in &pool {
        let (q, m) = mutate(p, rng);
        kinds[m as usize] += 1;
        if check_proof(&q, Profile::Core).is_err() {
            rejected += 1;
        } else if first_bad.is_none() {
            first_bad = Some(format!("{m:?} accepted:\n{}", q.render()));
        }
    }
    let mut rules = std::collections::BTreeSet::new();
    pool.iter().for_each(|p| {
        p.walk(&mut |_, n| {
            rules.insert(n.rule.name());
        })
    });
    r.line(
        2,
        "proof checker: valid proofs accepted, mutants rejected",
        valid == 500 && rejected == 500,
        format!(
            "{valid}/500 valid re-check, {rejected}/500 mutants rejected (swap {}, drop {}, permute {}; rules covered: {}){}",
            kinds[0],
            kinds[1],
            kinds[2],
            rules.into_iter().collect::<Vec<_>>().join(","),
            first_bad.map(|b| format!("; {b}")).unwrap_or_default()
        ),
    );
}

fn to_b(f: &Formula) -> B {
    match f {
        Formula::Lit(Literal { atom: Atom::Var(n), positive }) => B::Lit(u8::from(n.as_str() == "b"), *positive),
        Formula::One => B::One,
        Formula::Bot => B::Bot,
        Formula::Tensor(x, y) => B::T(Box::new(to_b(x)), Box::new(to_b(y))),
        Formula::Par(x, y) => B::P(Box::new(to_b(x)), Box::new(to_b(y))),
        other => panic!("interpolant outside MLL over a, b: {other}"),
    }
}

pub fn c3_interpolation(r: &mut Report, rng: &mut ChaCha8Rng) {
    let start = Instant::now();
    let seqs = provable_sequents(rng, 2, 1.0, 200);
    let mut oracle = Oracle::default();
    let (mut ok, mut first_bad) = (0, None);
    for s in &seqs {
        let fs = formulas(s);
        let gamma: Vec<usize> = (0..fs.len()).filter(|_| rng.gen()).collect();
        let g: Vec<Formula> = gamma.iter().map(|&i| fs[i].clone()).collect();
        let d: Vec<Formula> = (0..fs.len()).filter(|i| !gamma.contains(i)).map(|i| fs[i].clone()).collect();
        let verdict = match interpolate(&proved(&fs), &gamma) {
            Err(e) => Err(e.to_string()),
            Ok(i) => {
                let f = i.formula.clone();
                let g_dual: Vec<Literal> = g.iter().flat_map(Formula::literals).map(|l| l.negated()).collect();
                let d_lits: Vec<Literal> = d.iter().flat_map(Formula::literals).collect();
                let lits_ok = f.literals().iter().all(|l| g_dual.contains(l) && d_lits.contains(l));
                let mut left = g.clone();
                left.push(f.clone());
                let mut right = vec![f.negate()];
                right.extend(d.iter().cloned());
                let shapes = i.left.conclusion == left && i.right.conclusion == right;
                let checks = check_proof(&i.left, Profile::Core).is_ok() && check_proof(&i.right, Profile::Core).is_ok();
                let b = |xs: &[Formula]| xs.iter().map(to_b).collect::<Vec<_>>();
                let independent = oracle.provable(&b(&left)) && oracle.provable(&b(&right));
                if lits_ok && shapes && checks && independent {
                    Ok(())
                } else {
                    Err(format!("F = {f}: literals {lits_ok}, shapes {shapes}, proofs {checks}, oracle {independent}"))
                }
            }
        };
        match verdict {
            Ok(()) => ok += 1,
            Err(e) if first_bad.is_none() => first_bad = Some(format!("{} split {gamma:?}: {e}", pict::surface::sequent_to_string(&fs))),
            Err(_) => {}
        }
    }
    let t = start.elapsed().as_secs_f64();
    r.line(
        3,
        "interpolation contract on random partitions",
        ok == 200 && seqs.len() == 200 && t < 120.0,
        format!("{ok}/{} interpolants valid, {t:.1}s{}", seqs.len(), first_bad.map(|b| format!("; {b}")).unwrap_or_default()),
    );
}

pub fn c4_substitution(r: &mut Report, rng: &mut ChaCha8Rng) {
    let pool = proof_pool(rng, 100);
    let (mut ok, mut first_bad) = (0, None);
    for p in &pool {
        let atom = Atom::var(if rng.gen() { "a" } else { "b" });
        let with = small_formula(rng, 3);
        let q = substitute_proof(p, &atom, &with);
        let expected: Vec<Formula> = p.conclusion.iter().map(|f| f.substitute_atom(&atom, &with)).collect();
        match check_proof(&q, Profile::Core) {
            Ok(()) if q.conclusion == expected => ok += 1,
            res if first_bad.is_none() => {
                first_bad = Some(format!("[{with}/{atom:?}] {}: {res:?}", pict::surface::sequent_to_string(&p.conclusion)))
            }
            _ => {}
        }
    }
    r.line(
        4,
        "substituted proofs re-check",
        ok == 100,
        format!("{ok}/100 substituted proofs valid{}", first_bad.map(|b| format!("; {b}")).unwrap_or_default()),
    );
}
