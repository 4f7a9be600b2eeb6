//! Exhaustive MLL enumeration and an independent brute-force cut-free prover.
//!
//! Formulas are enumerated up to associativity/commutativity of ⊗ and ⅋ and
//! up to the symmetries of the two atoms (swapping them, negating either);
//! provability is invariant under both. Weight = binary connectives + units.

use std::collections::HashMap;
use std::rc::Rc;

use pict::Formula;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum N {
    Lit(u8, bool),
    One,
    Bot,
    /// `true` = ⊗, `false` = ⅋; children sorted, none with the same operator.
    Op(bool, Vec<Rc<N>>),
}

impl N {
    /// Applies an atom symmetry and re-sorts.
    fn map(&self, swap: bool, neg: [bool; 2]) -> N {
        match self {
            N::Lit(a, p) => {
                let b = if swap { 1 - a } else { *a };
                N::Lit(b, *p ^ neg[b as usize])
            }
            N::One => N::One,
            N::Bot => N::Bot,
            N::Op(t, cs) => {
                let mut v: Vec<Rc<N>> = cs.iter().map(|c| Rc::new(c.map(swap, neg))).collect();
                v.sort();
                N::Op(*t, v)
            }
        }
    }

    fn count(&self, c: &mut [u8; 4]) {
        match self {
            N::Lit(a, p) => c[2 * *a as usize + usize::from(*p)] += 1,
            N::One | N::Bot => {}
            N::Op(_, cs) => cs.iter().for_each(|x| x.count(c)),
        }
    }

    /// Orbit representative: least under (literal counts, tree order). The
    /// counts reject most non-representatives without rebuilding the tree.
    fn is_canonical(&self) -> bool {
        let mut c = [0u8; 4];
        self.count(&mut c);
        for swap in [false, true] {
            for n0 in [false, true] {
                for n1 in [false, true] {
                    if (swap, n0, n1) == (false, false, false) {
                        continue;
                    }
                    let neg = [n0, n1];
                    let mut m = [0u8; 4];
                    for a in 0..2u8 {
                        for p in [false, true] {
                            let b = if swap { 1 - a } else { a };
                            m[2 * b as usize + usize::from(p ^ neg[b as usize])] = c[2 * a as usize + usize::from(p)];
                        }
                    }
                    match m.cmp(&c) {
                        std::cmp::Ordering::Less => return false,
                        std::cmp::Ordering::Greater => {}
                        std::cmp::Ordering::Equal => {
                            if self.map(swap, neg) < *self {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    pub fn to_formula(&self) -> Formula {
        match self {
            N::Lit(a, p) => {
                let f = Formula::var(if *a == 0 { "a" } else { "b" });
                if *p {
                    f
                } else {
                    f.negate()
                }
            }
            N::One => Formula::One,
            N::Bot => Formula::Bot,
            N::Op(t, cs) => {
                let items = cs.iter().map(|c| c.to_formula());
                if *t {
                    items.reduce(Formula::tensor).unwrap()
                } else {
                    items.reduce(Formula::par).unwrap()
                }
            }
        }
    }

    /// The sequent: top-level ⅋ children, or the formula alone.
    pub fn sequent(&self) -> Vec<N> {
        match self {
            N::Op(false, cs) => cs.iter().map(|c| (**c).clone()).collect(),
            _ => vec![self.clone()],
        }
    }
}

/// Formulas of each weight, split by root: [leaf-or-other, tensor, par].
struct Table {
    tensor: Vec<Vec<Rc<N>>>,
    par: Vec<Vec<Rc<N>>>,
    leaf: Vec<Vec<Rc<N>>>,
}

impl Table {
    fn not_rooted(&self, op: bool, w: usize) -> impl Iterator<Item = &Rc<N>> {
        let other = if op { &self.par[w] } else { &self.tensor[w] };
        self.leaf[w].iter().chain(other.iter())
    }
}

/// Multisets (≥2 items, nondecreasing by candidate index) of children with
/// total weight `w` for an `op` node.
fn op_nodes(t: &Table, op: bool, w: usize, emit: &mut impl FnMut(Vec<Rc<N>>)) {
    // candidates: (weight, item) with weight ≤ w - 1
    let mut cands: Vec<(usize, Rc<N>)> = Vec::new();
    for cw in 0..w {
        for n in t.not_rooted(op, cw) {
            cands.push((cw, n.clone()));
        }
    }
    fn rec(cands: &[(usize, Rc<N>)], start: usize, remaining: usize, cur: &mut Vec<Rc<N>>, emit: &mut impl FnMut(Vec<Rc<N>>)) {
        // adding a child costs its weight plus one connective (after the first)
        if cur.len() >= 2 && remaining == 0 {
            emit(cur.clone());
        }
        for i in start..cands.len() {
            let cost = cands[i].0 + usize::from(!cur.is_empty());
            if cost > remaining {
                break; // candidates are sorted by weight
            }
            cur.push(cands[i].1.clone());
            rec(cands, i, remaining - cost, cur, emit);
            cur.pop();
        }
    }
    rec(&cands, 0, w, &mut Vec::new(), emit);
}

/// Calls `f` on every canonical formula of weight ≤ `max_w`.
pub fn enumerate(max_w: usize, mut f: impl FnMut(&N)) {
    let mut t = Table { tensor: vec![], par: vec![], leaf: vec![] };
    for w in 0..=max_w {
        let mut leaf = Vec::new();
        if w == 0 {
            for a in 0..2 {
                for p in [true, false] {
                    leaf.push(Rc::new(N::Lit(a, p)));
                }
            }
        }
        if w == 1 {
            leaf.push(Rc::new(N::One));
            leaf.push(Rc::new(N::Bot));
        }
        t.leaf.push(leaf);
        let store = w < max_w;
        let mut ten = Vec::new();
        let mut par = Vec::new();
        for op in [true, false] {
            op_nodes(&t, op, w, &mut |cs| {
                let mut cs = cs;
                cs.sort();
                let n = N::Op(op, cs);
                if store {
                    if op {
                        ten.push(Rc::new(n.clone()))
                    } else {
                        par.push(Rc::new(n.clone()))
                    }
                }
                if n.is_canonical() {
                    f(&n);
                }
            });
        }
        for n in &t.leaf[w] {
            if n.is_canonical() {
                f(n);
            }
        }
        t.tensor.push(ten);
        t.par.push(par);
    }
}

// ---- brute-force cut-free prover over binary trees ----

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum B {
    Lit(u8, bool),
    One,
    Bot,
    T(Box<B>, Box<B>),
    P(Box<B>, Box<B>),
}

impl B {
    pub fn from_n(n: &N) -> B {
        match n {
            N::Lit(a, p) => B::Lit(*a, *p),
            N::One => B::One,
            N::Bot => B::Bot,
            N::Op(t, cs) => {
                let mut it = cs.iter().map(|c| B::from_n(c));
                let first = it.next().unwrap();
                it.fold(first, |acc, c| if *t { B::T(Box::new(acc), Box::new(c)) } else { B::P(Box::new(acc), Box::new(c)) })
            }
        }
    }
}

/// Tries every rule on every formula, every split for ⊗; memoised on the
/// sorted sequent.
#[derive(Default)]
pub struct Oracle {
    memo: HashMap<Vec<B>, bool>,
}

impl Oracle {
    pub fn provable(&mut self, seq: &[B]) -> bool {
        let mut key = seq.to_vec();
        key.sort();
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let r = self.search(&key);
        self.memo.insert(key, r);
        r
    }

    fn search(&mut self, seq: &[B]) -> bool {
        if let [B::Lit(a, p), B::Lit(b, q)] = seq {
            if a == b && p != q {
                return true;
            }
        }
        if seq == [B::One] {
            return true;
        }
        for i in 0..seq.len() {
            let mut rest = seq.to_vec();
            let f = rest.remove(i);
            match f {
                B::Bot => {
                    if self.provable(&rest) {
                        return true;
                    }
                }
                B::P(a, b) => {
                    let mut s = rest.clone();
                    s.push(*a);
                    s.push(*b);
                    if self.provable(&s) {
                        return true;
                    }
                }
                B::T(a, b) => {
                    let n = rest.len();
                    for mask in 0u32..(1 << n) {
                        let mut l: Vec<B> = Vec::new();
                        let mut r: Vec<B> = Vec::new();
                        for (k, g) in rest.iter().enumerate() {
                            if mask & (1 << k) != 0 {
                                l.push(g.clone())
                            } else {
                                r.push(g.clone())
                            }
                        }
                        l.push((*a).clone());
                        r.push((*b).clone());
                        if self.provable(&l) && self.provable(&r) {
                            return true;
                        }
                    }
                }
                _ => {}
            }
        }
        false
    }

    pub fn clear(&mut self) {
        self.memo.clear();
    }
}
