//! Precedence-aware printers. Binary connectives are left-associative, so a
//! right operand at the same level gets parentheses; `parse(print(x)) == x`.

use std::fmt::{self, Display, Formatter, Write};

use crate::syntax::{Atom, Behaviour, Capability, Formula, Kind, Literal, Polarity, Process};

const PAR: u8 = 1;
const TENSOR: u8 = 2;
const UNARY: u8 = 3;

fn join<T: Display>(xs: &[T]) -> String {
    let mut s = String::new();
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{x}");
    }
    s
}

fn behaviour(f: &mut Formatter<'_>, b: &Behaviour, ctx: u8) -> fmt::Result {
    let (level, left, op, right) = match b {
        Behaviour::Par(l, r) => (PAR, l, "(%)", r),
        Behaviour::Tensor(l, r) => (TENSOR, l, "(*)", r),
        Behaviour::Cap(c) => return capability(f, c),
        Behaviour::Bang(c) => {
            f.write_str("!")?;
            return capability(f, c);
        }
        Behaviour::Quest(c) => {
            f.write_str("?")?;
            return capability(f, c);
        }
        Behaviour::One => return f.write_str("1"),
        Behaviour::Bot => return f.write_str("bot"),
    };
    let paren = level < ctx;
    if paren {
        f.write_str("(")?;
    }
    behaviour(f, left, level)?;
    write!(f, " {op} ")?;
    behaviour(f, right, level + 1)?;
    if paren {
        f.write_str(")")?;
    }
    Ok(())
}

fn capability(f: &mut Formatter<'_>, c: &Capability) -> fmt::Result {
    f.write_str(match c.polarity {
        Polarity::Input => "in ",
        Polarity::Output => "out ",
    })?;
    behaviour(f, &c.payload, UNARY)
}

fn formula(f: &mut Formatter<'_>, x: &Formula, ctx: u8) -> fmt::Result {
    let (level, left, op, right) = match x {
        Formula::Par(l, r) => (PAR, l, "(%)", r),
        Formula::Tensor(l, r) => (TENSOR, l, "(*)", r),
        Formula::Lit(l) => return write!(f, "{l}"),
        Formula::One => return f.write_str("1"),
        Formula::Bot => return f.write_str("bot"),
        Formula::Bang(a) => {
            f.write_str("!")?;
            return formula(f, a, UNARY);
        }
        Formula::Quest(a) => {
            f.write_str("?")?;
            return formula(f, a, UNARY);
        }
    };
    let paren = level < ctx;
    if paren {
        f.write_str("(")?;
    }
    formula(f, left, level)?;
    write!(f, " {op} ")?;
    formula(f, right, level + 1)?;
    if paren {
        f.write_str(")")?;
    }
    Ok(())
}

impl Display for Behaviour {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        behaviour(f, self, PAR)
    }
}

impl Display for Capability {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        capability(f, self)
    }
}

impl Display for Atom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Var(n) => write!(f, "{n}"),
            Atom::Assign(n, c) => write!(f, "{n}:{c}"),
        }
    }
}

impl Display for Literal {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("~")?;
        }
        write!(f, "{}", self.atom)
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        formula(f, self, PAR)
    }
}

/// Prints `⊢ Γ` as `|- F1, F2`.
pub fn sequent_to_string(gamma: &[Formula]) -> String {
    if gamma.is_empty() {
        "|-".into()
    } else {
        format!("|- {}", join(gamma))
    }
}

fn process(f: &mut Formatter<'_>, p: &Process, prefix_only: bool) -> fmt::Result {
    match p {
        Process::Nop => f.write_str("0"),
        Process::Par(l, r) => {
            if prefix_only {
                f.write_str("(")?;
            }
            process(f, l, false)?;
            f.write_str(" | ")?;
            process(f, r, true)?;
            if prefix_only {
                f.write_str(")")?;
            }
            Ok(())
        }
        Process::In { subject, binders, body } => {
            write!(f, "{subject}({}).", join(binders))?;
            process(f, body, true)
        }
        Process::RepIn { subject, binders, body } => {
            write!(f, "*{subject}({}).", join(binders))?;
            process(f, body, true)
        }
        Process::Out { subject, objects, cont } => {
            write!(f, "{subject}<{}>", join(objects))?;
            if **cont == Process::Nop {
                Ok(())
            } else {
                f.write_str(".")?;
                process(f, cont, true)
            }
        }
        Process::New { binder, payload, kind, body } => {
            let k = match kind {
                Kind::Lin => "1",
                Kind::Omega => "w",
            };
            write!(f, "new[{k}] {binder} : {payload}. ")?;
            process(f, body, true)
        }
    }
}

impl Display for Process {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        process(f, self, false)
    }
}
