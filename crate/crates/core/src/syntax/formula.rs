//! MELL formulas over capability-assignment literals.
//!
//! Formulas are kept in negation normal form: negation only ever sits on a
//! literal. Environment formulas are the formulas whose exponentials apply
//! only to literals; environment types are the negation-free ones.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::name::Name;
use super::types::{Behaviour, Capability, Exponent};

/// An atomic proposition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// A plain propositional variable, used by the prover front end.
    Var(Name),
    /// A capability assignment `x : T`.
    Assign(Name, Capability),
}

impl Atom {
    pub fn assign(name: impl Into<Name>, cap: Capability) -> Self {
        Atom::Assign(name.into(), cap)
    }

    pub fn var(name: impl Into<Name>) -> Self {
        Atom::Var(name.into())
    }

    pub fn channel(&self) -> Option<&Name> {
        match self {
            Atom::Var(_) => None,
            Atom::Assign(n, _) => Some(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal { atom, positive: true }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal { atom, positive: false }
    }

    pub fn negated(&self) -> Literal {
        Literal { atom: self.atom.clone(), positive: !self.positive }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Lit(Literal),
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
    One,
    Bot,
    Bang(Box<Formula>),
    Quest(Box<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("arity mismatch: {names} name(s) for a behaviour with {arity} capabilities")]
pub struct ArityMismatch {
    pub names: usize,
    pub arity: usize,
}

impl Formula {
    pub fn atom(atom: Atom) -> Self {
        Formula::Lit(Literal::pos(atom))
    }

    pub fn var(name: &str) -> Self {
        Formula::atom(Atom::var(name))
    }

    pub fn assign(name: impl Into<Name>, cap: Capability) -> Self {
        Formula::atom(Atom::assign(name, cap))
    }

    pub fn tensor(a: Formula, b: Formula) -> Self {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Self {
        Formula::Par(Box::new(a), Box::new(b))
    }

    pub fn bang(a: Formula) -> Self {
        Formula::Bang(Box::new(a))
    }

    pub fn quest(a: Formula) -> Self {
        Formula::Quest(Box::new(a))
    }

    /// Left-nested tensor of the items; `1` when empty.
    pub fn tensor_all<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items.into_iter().reduce(Formula::tensor).unwrap_or(Formula::One)
    }

    /// Left-nested par of the items; `⊥` when empty.
    pub fn par_all<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items.into_iter().reduce(Formula::par).unwrap_or(Formula::Bot)
    }

    /// Linear negation.
    pub fn negate(&self) -> Formula {
        match self {
            Formula::Lit(l) => Formula::Lit(l.negated()),
            Formula::Tensor(a, b) => Formula::par(a.negate(), b.negate()),
            Formula::Par(a, b) => Formula::tensor(a.negate(), b.negate()),
            Formula::One => Formula::Bot,
            Formula::Bot => Formula::One,
            Formula::Bang(a) => Formula::quest(a.negate()),
            Formula::Quest(a) => Formula::bang(a.negate()),
        }
    }

    pub fn is_quest(&self) -> bool {
        matches!(self, Formula::Quest(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Formula::Lit(_))
    }

    pub fn has_exponentials(&self) -> bool {
        match self {
            Formula::Lit(_) | Formula::One | Formula::Bot => false,
            Formula::Tensor(a, b) | Formula::Par(a, b) => a.has_exponentials() || b.has_exponentials(),
            Formula::Bang(_) | Formula::Quest(_) => true,
        }
    }

    /// Number of connective nodes (units count, literals do not).
    pub fn connectives(&self) -> usize {
        match self {
            Formula::Lit(_) => 0,
            Formula::One | Formula::Bot => 1,
            Formula::Tensor(a, b) | Formula::Par(a, b) => 1 + a.connectives() + b.connectives(),
            Formula::Bang(a) | Formula::Quest(a) => 1 + a.connectives(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Lit(_) | Formula::One | Formula::Bot => 1,
            Formula::Tensor(a, b) | Formula::Par(a, b) => 1 + a.size() + b.size(),
            Formula::Bang(a) | Formula::Quest(a) => 1 + a.size(),
        }
    }

    /// Exponentials only on literals.
    pub fn is_environment_formula(&self) -> bool {
        match self {
            Formula::Lit(_) | Formula::One | Formula::Bot => true,
            Formula::Tensor(a, b) | Formula::Par(a, b) => a.is_environment_formula() && b.is_environment_formula(),
            Formula::Bang(a) | Formula::Quest(a) => a.is_literal(),
        }
    }

    /// Environment formula with positive capability-assignment literals only.
    pub fn is_environment_type(&self) -> bool {
        self.is_environment_formula() && self.literals().iter().all(|l| l.positive && matches!(l.atom, Atom::Assign(..)))
    }

    /// Literal occurrences, ignoring connective structure (a multiset).
    pub fn literals(&self) -> Vec<Literal> {
        let mut out = Vec::new();
        self.collect_literals(&mut out);
        out
    }

    fn collect_literals(&self, out: &mut Vec<Literal>) {
        match self {
            Formula::Lit(l) => out.push(l.clone()),
            Formula::Tensor(a, b) | Formula::Par(a, b) => {
                a.collect_literals(out);
                b.collect_literals(out);
            }
            Formula::One | Formula::Bot => {}
            Formula::Bang(a) | Formula::Quest(a) => a.collect_literals(out),
        }
    }

    /// Channel names mentioned by capability-assignment literals.
    pub fn names(&self) -> BTreeSet<Name> {
        self.literals().into_iter().filter_map(|l| l.atom.channel().cloned()).collect()
    }

    pub fn mentions(&self, name: &Name) -> bool {
        match self {
            Formula::Lit(l) => l.atom.channel() == Some(name),
            Formula::Tensor(a, b) | Formula::Par(a, b) => a.mentions(name) || b.mentions(name),
            Formula::One | Formula::Bot => false,
            Formula::Bang(a) | Formula::Quest(a) => a.mentions(name),
        }
    }

    /// Renames channel names in capability assignments. Substitutions may
    /// identify names.
    pub fn rename(&self, subst: &BTreeMap<Name, Name>) -> Formula {
        self.map_literals(&mut |l| {
            let atom = match &l.atom {
                Atom::Assign(n, c) => Atom::Assign(subst.get(n).unwrap_or(n).clone(), c.clone()),
                a => a.clone(),
            };
            Formula::Lit(Literal { atom, positive: l.positive })
        })
    }

    /// Replaces every occurrence of `atom` by `with` (and its negation by
    /// the negation of `with`).
    pub fn substitute_atom(&self, atom: &Atom, with: &Formula) -> Formula {
        self.map_literals(&mut |l| {
            if &l.atom == atom {
                if l.positive {
                    with.clone()
                } else {
                    with.negate()
                }
            } else {
                Formula::Lit(l.clone())
            }
        })
    }

    pub fn map_literals(&self, f: &mut impl FnMut(&Literal) -> Formula) -> Formula {
        match self {
            Formula::Lit(l) => f(l),
            Formula::Tensor(a, b) => Formula::tensor(a.map_literals(f), b.map_literals(f)),
            Formula::Par(a, b) => Formula::par(a.map_literals(f), b.map_literals(f)),
            Formula::One => Formula::One,
            Formula::Bot => Formula::Bot,
            Formula::Bang(a) => Formula::bang(a.map_literals(f)),
            Formula::Quest(a) => Formula::quest(a.map_literals(f)),
        }
    }

    /// Drops neutral units: `A ⊗ 1`, `1 ⊗ A`, `A ⅋ ⊥`, `⊥ ⅋ A` all become `A`.
    pub fn drop_neutral_units(&self) -> Formula {
        match self {
            Formula::Tensor(a, b) => match (a.drop_neutral_units(), b.drop_neutral_units()) {
                (Formula::One, x) | (x, Formula::One) => x,
                (x, y) => Formula::tensor(x, y),
            },
            Formula::Par(a, b) => match (a.drop_neutral_units(), b.drop_neutral_units()) {
                (Formula::Bot, x) | (x, Formula::Bot) => x,
                (x, y) => Formula::par(x, y),
            },
            Formula::Bang(a) => Formula::bang(a.drop_neutral_units()),
            Formula::Quest(a) => Formula::quest(a.drop_neutral_units()),
            other => other.clone(),
        }
    }

    /// Reads an environment formula built by [`annotate`] back as a behaviour
    /// type, forgetting the names.
    pub fn erase_names(&self) -> Option<Behaviour> {
        fn cap_of(f: &Formula) -> Option<&Capability> {
            match f {
                Formula::Lit(Literal { atom: Atom::Assign(_, c), positive: true }) => Some(c),
                _ => None,
            }
        }
        Some(match self {
            Formula::Lit(_) => Behaviour::Cap(cap_of(self)?.clone()),
            Formula::Bang(a) => Behaviour::Bang(cap_of(a)?.clone()),
            Formula::Quest(a) => Behaviour::Quest(cap_of(a)?.clone()),
            Formula::Tensor(a, b) => Behaviour::tensor(a.erase_names()?, b.erase_names()?),
            Formula::Par(a, b) => Behaviour::par(a.erase_names()?, b.erase_names()?),
            Formula::One => Behaviour::One,
            Formula::Bot => Behaviour::Bot,
        })
    }
}

/// Builds `x̃ : A` by labelling each capability of `behaviour`, left to
/// right, with the corresponding name.
pub fn annotate(names: &[Name], behaviour: &Behaviour) -> Result<Formula, ArityMismatch> {
    let arity = behaviour.arity();
    if names.len() != arity {
        return Err(ArityMismatch { names: names.len(), arity });
    }
    let mut it = names.iter();
    Ok(annotate_with(&mut it, behaviour))
}

fn annotate_with<'a>(names: &mut impl Iterator<Item = &'a Name>, b: &Behaviour) -> Formula {
    let lit = |c: &Capability, names: &mut dyn Iterator<Item = &'a Name>| {
        let n = names.next().expect("arity checked");
        Formula::assign(n.clone(), c.clone())
    };
    match b {
        Behaviour::Cap(c) => lit(c, names),
        Behaviour::Bang(c) => Formula::bang(lit(c, names)),
        Behaviour::Quest(c) => Formula::quest(lit(c, names)),
        Behaviour::Tensor(a, b) => {
            let l = annotate_with(names, a);
            Formula::tensor(l, annotate_with(names, b))
        }
        Behaviour::Par(a, b) => {
            let l = annotate_with(names, a);
            Formula::par(l, annotate_with(names, b))
        }
        Behaviour::One => Formula::One,
        Behaviour::Bot => Formula::Bot,
    }
}

/// Literal wrapper carrying an exponent, for environment literals.
pub fn exp_literal(exp: Exponent, name: Name, cap: Capability) -> Formula {
    let lit = Formula::assign(name, cap);
    match exp {
        Exponent::None => lit,
        Exponent::Bang => Formula::bang(lit),
        Exponent::Quest => Formula::quest(lit),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::types::Polarity;

    fn cap(p: Polarity) -> Capability {
        Capability::new(p, Behaviour::One)
    }

    fn n(s: &str) -> Name {
        Name::new(s)
    }

    #[test]
    fn negate_tensor_is_par_of_negations() {
        let a = Formula::var("a");
        let b = Formula::var("b");
        let f = Formula::tensor(a.clone(), b.clone());
        assert_eq!(f.negate(), Formula::par(a.negate(), b.negate()));
        assert_eq!(f.negate().negate(), f);
    }

    #[test]
    fn negate_bang_literal() {
        let lit = Formula::assign("x", cap(Polarity::Input));
        let f = Formula::bang(lit.clone());
        match f.negate() {
            Formula::Quest(inner) => assert_eq!(*inner, lit.negate()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn annotate_worked_example() {
        // xyz : (T ⅋ 1) ⊗ ?U ⊗ ⊥ ⊗ V
        let t = cap(Polarity::Output);
        let u = cap(Polarity::Input);
        let v = Capability::output(Behaviour::Bot);
        let beh = Behaviour::tensor(
            Behaviour::tensor(
                Behaviour::tensor(Behaviour::par(Behaviour::Cap(t.clone()), Behaviour::One), Behaviour::Quest(u.clone())),
                Behaviour::Bot,
            ),
            Behaviour::Cap(v.clone()),
        );
        let got = annotate(&[n("x"), n("y"), n("z")], &beh).unwrap();
        let expected = Formula::tensor(
            Formula::tensor(
                Formula::tensor(Formula::par(Formula::assign("x", t), Formula::One), Formula::quest(Formula::assign("y", u))),
                Formula::Bot,
            ),
            Formula::assign("z", v),
        );
        assert_eq!(got, expected);
        assert_eq!(got.erase_names(), Some(beh));
    }

    #[test]
    fn annotate_zero_arity_and_mismatch() {
        assert_eq!(annotate(&[], &Behaviour::One).unwrap(), Formula::One);
        let beh = Behaviour::tensor(Behaviour::Cap(cap(Polarity::Input)), Behaviour::Cap(cap(Polarity::Output)));
        assert_eq!(annotate(&[n("x")], &beh), Err(ArityMismatch { names: 1, arity: 2 }));
    }

    #[test]
    fn equalising_rename_is_legal() {
        let f = Formula::tensor(Formula::assign("x", cap(Polarity::Input)), Formula::assign("y", cap(Polarity::Output)));
        let s: BTreeMap<Name, Name> = [(n("x"), n("y"))].into_iter().collect();
        let g = f.rename(&s);
        assert_eq!(g, Formula::tensor(Formula::assign("y", cap(Polarity::Input)), Formula::assign("y", cap(Polarity::Output)),));
    }

    #[test]
    fn literals_ignore_structure() {
        let f = Formula::par(Formula::assign("x", cap(Polarity::Output)), Formula::One);
        assert_eq!(f.literals(), vec![Literal::pos(Atom::assign("x", cap(Polarity::Output)))]);
        assert!(f.is_environment_type());
        assert!(!f.negate().is_environment_type());
    }

    #[test]
    fn environment_formula_rejects_compound_exponentials() {
        let f = Formula::bang(Formula::tensor(Formula::One, Formula::One));
        assert!(!f.is_environment_formula());
    }

    #[test]
    fn drop_units() {
        let x = Formula::assign("x", cap(Polarity::Output));
        let f = Formula::par(Formula::tensor(Formula::One, x.clone()), Formula::Bot);
        assert_eq!(f.drop_neutral_units(), x);
    }
}
