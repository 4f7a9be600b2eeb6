//! Bounded proof search.
//!
//! Invertible rules (⅋, ⊥, discarding duplicate `?A`) are applied eagerly.
//! `?`-formulas then form a zone shared by both sides of a tensor (contracted
//! before the split, weakened at the leaves). A `?A` may be derelicted while
//! kept at most `contractions` times per branch, and once more without
//! keeping it. Exponential-free sequents need none of this, so a failure
//! there with no budget hit is a refutation.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::ops::{cut_compose, empty, mix, rewrite_at};
use super::profile::{Profile, Schema};
use super::proof::Proof;
use crate::syntax::{Atom, Formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum branch length, applied to sequents with exponentials.
    pub depth: usize,
    /// Kept derelictions of one `?`-formula along a branch.
    pub contractions: usize,
    /// Search nodes per search.
    pub nodes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { depth: 64, contractions: 2, nodes: 200_000 }
    }
}

pub const BUDGET_ENV: &str = "PICT_MELL_BUDGET";

impl Budget {
    /// Overrides from `depth=..,contractions=..,nodes=..` (any subset).
    pub fn with_spec(mut self, spec: &str) -> Result<Budget, String> {
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| format!("budget item `{part}` is not key=value"))?;
            let v: usize = v.trim().parse().map_err(|_| format!("budget value `{v}` is not a number"))?;
            match k.trim() {
                "depth" => self.depth = v,
                "contractions" => self.contractions = v,
                "nodes" => self.nodes = v,
                other => return Err(format!("unknown budget key `{other}`")),
            }
        }
        Ok(self)
    }

    /// Defaults overridden by `PICT_MELL_BUDGET` when set.
    pub fn from_env() -> Result<Budget, String> {
        match std::env::var(BUDGET_ENV) {
            Ok(s) => Budget::default().with_spec(&s),
            Err(_) => Ok(Budget::default()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Diagnostics {
    pub nodes: usize,
    pub node_budget_hit: bool,
    pub depth_bound_hit: bool,
    pub contraction_bound_hit: bool,
    /// Failure in a relaxed profile, where the search is not claimed complete.
    pub relaxed_incomplete: bool,
}

impl Diagnostics {
    pub fn summary(&self) -> String {
        let mut why = Vec::new();
        if self.node_budget_hit {
            why.push("node budget exhausted");
        }
        if self.depth_bound_hit {
            why.push("depth bound reached");
        }
        if self.contraction_bound_hit {
            why.push("contraction bound reached");
        }
        if self.relaxed_incomplete {
            why.push("relaxed-profile search is incomplete");
        }
        if why.is_empty() {
            why.push("search incomplete");
        }
        format!("{} after {} nodes", why.join(", "), self.nodes)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProveOutcome {
    Proved(Proof),
    /// No cut-free proof exists (only reported when the search was complete).
    Refuted,
    Unknown(Diagnostics),
}

impl ProveOutcome {
    pub fn is_proved(&self) -> bool {
        matches!(self, ProveOutcome::Proved(_))
    }

    pub fn proof(&self) -> Option<&Proof> {
        match self {
            ProveOutcome::Proved(p) => Some(p),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ProveOutcome::Proved(_) => "proved",
            ProveOutcome::Refuted => "refuted",
            ProveOutcome::Unknown(_) => "unknown",
        }
    }
}

/// Searches for a proof of `⊢ seq`. Core proofs are tried first under every
/// profile, so anything proved under `core` is proved under `kpt` and `hyb`.
pub fn prove(seq: &[Formula], profile: Profile, budget: Budget) -> ProveOutcome {
    let mut s = Search::new(budget, false);
    if let Some(p) = s.run(seq.to_vec(), 0, &Uses::default()) {
        return ProveOutcome::Proved(p);
    }
    if profile == Profile::Core {
        return if s.incomplete == 0 { ProveOutcome::Refuted } else { ProveOutcome::Unknown(s.diagnostics()) };
    }
    let canon: Vec<(Formula, Proof)> = seq.iter().map(|f| canonical(f, profile)).collect();
    let cseq: Vec<Formula> = canon.iter().map(|(c, _)| c.clone()).collect();
    let mut r = Search::new(budget, true);
    match r.run(cseq, 0, &Uses::default()) {
        Some(mut p) => {
            for (i, (_, eq)) in canon.into_iter().enumerate() {
                if p.conclusion[i] != seq[i] {
                    p = rewrite_at(p, i, eq);
                }
            }
            ProveOutcome::Proved(p)
        }
        None => {
            let mut d = r.diagnostics();
            d.nodes += s.nodes;
            d.relaxed_incomplete = true;
            ProveOutcome::Unknown(d)
        }
    }
}

/// `e ≤ f`, i.e. `⊢ e⊥, f`.
pub fn entails(e: &Formula, f: &Formula, profile: Profile, budget: Budget) -> ProveOutcome {
    prove(&[e.negate(), f.clone()], profile, budget)
}

/// The relaxed normal form of `f` (⊗ to ⅋, 1 to ⊥, and under `kpt` ! to ?)
/// with a proof of `⊢ c(f)⊥, f`, i.e. `c(f) ≤ f`.
pub fn canonical(f: &Formula, profile: Profile) -> (Formula, Proof) {
    match f {
        Formula::Lit(_) => (f.clone(), Proof::ax(f)),
        Formula::One => (Formula::Bot, Proof::profile_axiom(Schema::BotOne, vec![Formula::One, Formula::One])),
        Formula::Bot => (Formula::Bot, Proof::ax(f)),
        Formula::Par(a, b) => {
            let (ca, pa) = canonical(a, profile);
            let (cb, pb) = canonical(b, profile);
            let t = Proof::tensor(pa.to_front(1), pb.to_front(1)).to_front(2);
            (Formula::par(ca, cb), Proof::par_last(t))
        }
        Formula::Tensor(a, b) => {
            let (ca, pa) = canonical(a, profile);
            let (cb, pb) = canonical(b, profile);
            // ca⊗cb ≤ a⊗b
            let q = Proof::par_last(Proof::tensor(pa, pb).to_front(2)).to_front(1);
            // ca⅋cb ≤ ca⊗cb
            let inst = Schema::ParTensor.instance(Some(&ca), Some(&cb));
            let ax = Proof::profile_axiom(Schema::ParTensor, inst);
            (Formula::par(ca, cb), cut_compose(ax, q).expect("canonical tensor cut"))
        }
        Formula::Bang(a) => {
            let (ca, pa) = canonical(a, profile);
            // !ca ≤ !a
            let q = Proof::promotion_last(Proof::dereliction_last(pa.to_back(0)).to_back(0));
            if profile == Profile::Kpt {
                let inst = Schema::QuestBang.instance(Some(&ca), None);
                let ax = Proof::profile_axiom(Schema::QuestBang, inst);
                (Formula::quest(ca), cut_compose(ax, q).expect("canonical bang cut"))
            } else {
                (Formula::bang(ca), q)
            }
        }
        Formula::Quest(a) => {
            let (ca, pa) = canonical(a, profile);
            let p = Proof::promotion_last(Proof::dereliction_last(pa).to_front(1)).to_front(1);
            (Formula::quest(ca), p)
        }
    }
}

/// Kept-dereliction counts per `?`-formula along the current branch.
#[derive(Debug, Clone, Default)]
struct Uses(Vec<(Formula, usize)>);

impl Uses {
    fn get(&self, f: &Formula) -> usize {
        self.0.iter().find(|(g, _)| g == f).map_or(0, |(_, n)| *n)
    }

    fn bumped(&self, f: &Formula) -> Uses {
        let mut u = self.clone();
        match u.0.iter_mut().find(|(g, _)| g == f) {
            Some((_, n)) => *n += 1,
            None => u.0.push((f.clone(), 1)),
        }
        u
    }
}

struct Search {
    budget: Budget,
    relaxed: bool,
    nodes: usize,
    /// Incremented whenever a budget cut the search short.
    incomplete: usize,
    diag: Diagnostics,
    failed: HashSet<Vec<Formula>>,
}

fn without(seq: &[Formula], i: usize) -> Vec<Formula> {
    let mut v = seq.to_vec();
    v.remove(i);
    v
}

/// Necessary condition for provability. A literal outside every `?` is
/// consumed by exactly one axiom, so per atom the free positive and negative
/// occurrences must balance, except that copies from under a `?` can make up
/// for missing partners.
fn feasible(fs: &[&Formula]) -> bool {
    #[derive(Default, Clone, Copy)]
    struct C {
        pos: i32,
        neg: i32,
        pos_q: bool,
        neg_q: bool,
    }
    let mut acc: Vec<(&Atom, C)> = Vec::new();
    fn go<'a>(f: &'a Formula, q: bool, acc: &mut Vec<(&'a Atom, C)>) {
        match f {
            Formula::Lit(l) => {
                let i = match acc.iter().position(|(a, _)| *a == &l.atom) {
                    Some(i) => i,
                    None => {
                        acc.push((&l.atom, C::default()));
                        acc.len() - 1
                    }
                };
                let c = &mut acc[i].1;
                match (l.positive, q) {
                    (true, false) => c.pos += 1,
                    (false, false) => c.neg += 1,
                    (true, true) => c.pos_q = true,
                    (false, true) => c.neg_q = true,
                }
            }
            Formula::Tensor(a, b) | Formula::Par(a, b) => {
                go(a, q, acc);
                go(b, q, acc);
            }
            Formula::Bang(a) => go(a, q, acc),
            Formula::Quest(a) => go(a, true, acc),
            Formula::One | Formula::Bot => {}
        }
    }
    for f in fs {
        go(f, false, &mut acc);
    }
    acc.iter().all(|(_, c)| (c.neg_q || c.pos <= c.neg) && (c.pos_q || c.neg <= c.pos))
}

impl Search {
    fn new(budget: Budget, relaxed: bool) -> Self {
        Search { budget, relaxed, nodes: 0, incomplete: 0, diag: Diagnostics::default(), failed: HashSet::new() }
    }

    fn diagnostics(&self) -> Diagnostics {
        Diagnostics { nodes: self.nodes, ..self.diag.clone() }
    }

    fn run(&mut self, seq: Vec<Formula>, depth: usize, uses: &Uses) -> Option<Proof> {
        self.nodes += 1;
        if self.nodes > self.budget.nodes {
            self.diag.node_budget_hit = true;
            self.incomplete += 1;
            return None;
        }

        // invertible phase
        if let Some(i) = seq.iter().position(|f| matches!(f, Formula::Par(..) | Formula::Bot)) {
            let mut prem = without(&seq, i);
            return match &seq[i] {
                Formula::Par(a, b) => {
                    prem.push((**a).clone());
                    prem.push((**b).clone());
                    let p = self.run(prem, depth + 1, uses)?;
                    Some(Proof::par_last(p).reorder(&seq))
                }
                _ => {
                    let p = self.run(prem, depth + 1, uses)?;
                    Some(Proof::bot_last(p).reorder(&seq))
                }
            };
        }
        if let Some(j) = (0..seq.len()).find(|&j| seq[j].is_quest() && seq[..j].contains(&seq[j])) {
            let p = self.run(without(&seq, j), depth, uses)?;
            return Some(Proof::weakening_last(p, seq[j].clone()).reorder(&seq));
        }

        let exp_free = !seq.iter().any(Formula::has_exponentials);
        let key = if self.relaxed {
            None
        } else {
            let mut k = seq.clone();
            k.sort();
            if self.failed.contains(&k) {
                return None;
            }
            Some(k)
        };
        if !exp_free && depth >= self.budget.depth {
            self.diag.depth_bound_hit = true;
            self.incomplete += 1;
            return None;
        }

        let before = self.incomplete;
        let found = self.decide(&seq, depth, uses);
        if found.is_none() && self.incomplete == before {
            if let Some(k) = key {
                self.failed.insert(k);
            }
        }
        found
    }

    fn decide(&mut self, seq: &[Formula], depth: usize, uses: &Uses) -> Option<Proof> {
        if !feasible(&seq.iter().collect::<Vec<_>>()) {
            return None;
        }
        let zone: Vec<usize> = (0..seq.len()).filter(|&i| seq[i].is_quest()).collect();
        let lin: Vec<usize> = (0..seq.len()).filter(|&i| !seq[i].is_quest()).collect();

        // axiom, possibly with weakenings
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                let others_quest = lin.iter().all(|&k| k == i || k == j);
                if others_quest && seq[i] == seq[j].negate() {
                    return Some(Proof::ax(&seq[j]).fit(seq));
                }
            }
        }
        if lin.len() == 1 && seq[lin[0]] == Formula::One {
            return Some(Proof::one().fit(seq));
        }
        if self.relaxed && lin.is_empty() {
            return Some(empty().fit(seq));
        }
        if lin.len() == 1 {
            if let Formula::Bang(b) = &seq[lin[0]] {
                let mut prem = without(seq, lin[0]);
                prem.push((**b).clone());
                if let Some(p) = self.run(prem, depth + 1, uses) {
                    return Some(Proof::promotion_last(p).reorder(seq));
                }
            }
        }

        if self.relaxed {
            if let Some(p) = self.relaxed_step(seq, &lin, depth, uses) {
                return Some(p);
            }
        } else {
            for &k in &lin {
                if let Some(p) = self.tensor(seq, k, &zone, &lin, depth, uses) {
                    return Some(p);
                }
            }
        }

        self.derelict(seq, &zone, depth, uses)
    }

    fn tensor(&mut self, seq: &[Formula], k: usize, zone: &[usize], lin: &[usize], depth: usize, uses: &Uses) -> Option<Proof> {
        let Formula::Tensor(a, b) = &seq[k] else { return None };
        // group equal linear formulas so splits are enumerated as multisets
        let mut groups: Vec<(Formula, usize)> = Vec::new();
        for &i in lin.iter().filter(|&&i| i != k) {
            match groups.iter_mut().find(|(f, _)| *f == seq[i]) {
                Some((_, n)) => *n += 1,
                None => groups.push((seq[i].clone(), 1)),
            }
        }
        let zone_fs: Vec<Formula> = zone.iter().map(|&i| seq[i].clone()).collect();
        let mut counts = vec![0usize; groups.len()];
        loop {
            let mut left: Vec<Formula> = Vec::new();
            let mut right: Vec<Formula> = Vec::new();
            for (g, &c) in groups.iter().zip(&counts) {
                for n in 0..g.1 {
                    if n < c {
                        left.push(g.0.clone())
                    } else {
                        right.push(g.0.clone())
                    }
                }
            }
            let ok = {
                let mut l: Vec<&Formula> = left.iter().collect();
                l.push(a);
                let mut r: Vec<&Formula> = right.iter().collect();
                r.push(b);
                feasible(&l) && feasible(&r)
            };
            if ok {
                left.extend(zone_fs.iter().cloned());
                left.push((**a).clone());
                right.extend(zone_fs.iter().cloned());
                right.push((**b).clone());
                if let Some(pl) = self.run(left, depth + 1, uses) {
                    if let Some(pr) = self.run(right, depth + 1, uses) {
                        return Some(Proof::tensor(pl, pr).fit(seq));
                    }
                }
            }
            // next split
            let mut g = 0;
            loop {
                if g == groups.len() {
                    return None;
                }
                if counts[g] < groups[g].1 {
                    counts[g] += 1;
                    break;
                }
                counts[g] = 0;
                g += 1;
            }
        }
    }

    /// With mix and the empty sequent available: close the first linear
    /// formula by an axiom or a promotion and prove the rest separately.
    fn relaxed_step(&mut self, seq: &[Formula], lin: &[usize], depth: usize, uses: &Uses) -> Option<Proof> {
        let x = *lin.first()?;
        let neg = seq[x].negate();
        for j in 0..seq.len() {
            if j == x || seq[j] != neg {
                continue;
            }
            let rest: Vec<Formula> = (0..seq.len()).filter(|&i| i != x && (i != j || seq[j].is_quest())).map(|i| seq[i].clone()).collect();
            if let Some(p) = self.run(rest, depth + 1, uses) {
                return Some(mix(Proof::ax(&seq[j]), p).fit(seq));
            }
        }
        if let Formula::Bang(b) = &seq[x] {
            let mut prem: Vec<Formula> = seq.iter().filter(|f| f.is_quest()).cloned().collect();
            prem.push((**b).clone());
            if let Some(p) = self.run(prem, depth + 1, uses) {
                let rest = without(seq, x);
                if let Some(q) = self.run(rest, depth + 1, uses) {
                    return Some(mix(Proof::promotion_last(p), q).fit(seq));
                }
            }
        }
        None
    }

    fn derelict(&mut self, seq: &[Formula], zone: &[usize], depth: usize, uses: &Uses) -> Option<Proof> {
        for &z in zone {
            let Formula::Quest(a) = &seq[z] else { continue };
            if uses.get(&seq[z]) < self.budget.contractions {
                let mut prem = seq.to_vec();
                prem.push((**a).clone());
                if let Some(p) = self.run(prem, depth + 1, &uses.bumped(&seq[z])) {
                    return Some(Proof::dereliction_last(p).fit(seq));
                }
            } else {
                self.diag.contraction_bound_hit = true;
                self.incomplete += 1;
                let mut prem = without(seq, z);
                prem.push((**a).clone());
                if let Some(p) = self.run(prem, depth + 1, uses) {
                    return Some(Proof::dereliction_last(p).reorder(seq));
                }
            }
        }
        None
    }
}
