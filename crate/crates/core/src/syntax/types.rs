//! Capability and behaviour types.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Polarity {
    /// `↓A`
    Input,
    /// `↑A`
    Output,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Input => Polarity::Output,
            Polarity::Output => Polarity::Input,
        }
    }
}

/// A capability: the right to perform one communication carrying `payload`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Capability {
    pub polarity: Polarity,
    pub payload: Box<Behaviour>,
}

impl Capability {
    pub fn new(polarity: Polarity, payload: Behaviour) -> Self {
        Capability { polarity, payload: Box::new(payload) }
    }

    pub fn input(payload: Behaviour) -> Self {
        Self::new(Polarity::Input, payload)
    }

    pub fn output(payload: Behaviour) -> Self {
        Self::new(Polarity::Output, payload)
    }

    /// Same payload, opposite direction.
    pub fn flipped(&self) -> Capability {
        Capability { polarity: self.polarity.flip(), payload: self.payload.clone() }
    }
}

/// Exponential marker on a capability (or on a literal).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Exponent {
    None,
    Bang,
    Quest,
}

/// Behaviour types: the type of a tuple of communicated names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Behaviour {
    Cap(Capability),
    Bang(Capability),
    Quest(Capability),
    Tensor(Box<Behaviour>, Box<Behaviour>),
    Par(Box<Behaviour>, Box<Behaviour>),
    One,
    Bot,
}

impl Behaviour {
    pub fn tensor(a: Behaviour, b: Behaviour) -> Self {
        Behaviour::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Behaviour, b: Behaviour) -> Self {
        Behaviour::Par(Box::new(a), Box::new(b))
    }

    pub fn with_exponent(exp: Exponent, cap: Capability) -> Self {
        match exp {
            Exponent::None => Behaviour::Cap(cap),
            Exponent::Bang => Behaviour::Bang(cap),
            Exponent::Quest => Behaviour::Quest(cap),
        }
    }

    /// Number of capability leaves.
    pub fn arity(&self) -> usize {
        match self {
            Behaviour::Cap(_) | Behaviour::Bang(_) | Behaviour::Quest(_) => 1,
            Behaviour::Tensor(a, b) | Behaviour::Par(a, b) => a.arity() + b.arity(),
            Behaviour::One | Behaviour::Bot => 0,
        }
    }

    /// Capability leaves left to right, with their exponents.
    pub fn leaves(&self) -> Vec<(Exponent, &Capability)> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<(Exponent, &'a Capability)>) {
        match self {
            Behaviour::Cap(c) => out.push((Exponent::None, c)),
            Behaviour::Bang(c) => out.push((Exponent::Bang, c)),
            Behaviour::Quest(c) => out.push((Exponent::Quest, c)),
            Behaviour::Tensor(a, b) | Behaviour::Par(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
            Behaviour::One | Behaviour::Bot => {}
        }
    }

    /// Duality on behaviours: swaps connectives and flips the polarity of
    /// each capability, leaving payloads untouched.
    pub fn dual(&self) -> Behaviour {
        match self {
            Behaviour::Cap(c) => Behaviour::Cap(c.flipped()),
            Behaviour::Bang(c) => Behaviour::Quest(c.flipped()),
            Behaviour::Quest(c) => Behaviour::Bang(c.flipped()),
            Behaviour::Tensor(a, b) => Behaviour::par(a.dual(), b.dual()),
            Behaviour::Par(a, b) => Behaviour::tensor(a.dual(), b.dual()),
            Behaviour::One => Behaviour::Bot,
            Behaviour::Bot => Behaviour::One,
        }
    }

    /// Number of nodes, counting capabilities and their payloads.
    pub fn size(&self) -> usize {
        match self {
            Behaviour::Cap(c) | Behaviour::Bang(c) | Behaviour::Quest(c) => 1 + c.payload.size(),
            Behaviour::Tensor(a, b) | Behaviour::Par(a, b) => 1 + a.size() + b.size(),
            Behaviour::One | Behaviour::Bot => 1,
        }
    }
}
