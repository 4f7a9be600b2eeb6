use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// An opaque channel name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: impl AsRef<str>) -> Self {
        Name(Arc::from(s.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Strips a trailing `'<digits>` freshness suffix, if any.
    pub fn base(&self) -> &str {
        match self.0.rfind('\'') {
            Some(i) if i > 0 && self.0[i + 1..].chars().all(|c| c.is_ascii_digit()) && i + 1 < self.0.len() => &self.0[..i],
            _ => &self.0,
        }
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name::new(s)
    }
}

/// Produces names that avoid a growing set of used names.
///
/// Fresh names are the base name followed by `'` and a counter, so they stay
/// valid identifiers for the concrete syntax.
#[derive(Debug, Clone, Default)]
pub struct Fresh {
    used: BTreeSet<Name>,
    counter: u64,
}

impl Fresh {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn avoiding<I: IntoIterator<Item = Name>>(names: I) -> Self {
        Fresh { used: names.into_iter().collect(), counter: 0 }
    }

    pub fn reserve(&mut self, name: &Name) {
        self.used.insert(name.clone());
    }

    pub fn reserve_all<'a, I: IntoIterator<Item = &'a Name>>(&mut self, names: I) {
        for n in names {
            self.used.insert(n.clone());
        }
    }

    pub fn is_used(&self, name: &Name) -> bool {
        self.used.contains(name)
    }

    pub fn fresh(&mut self, base: &Name) -> Name {
        let stem = base.base().to_string();
        loop {
            self.counter += 1;
            let candidate = Name::new(format!("{}'{}", stem, self.counter));
            if !self.used.contains(&candidate) {
                self.used.insert(candidate.clone());
                return candidate;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_avoids_reserved() {
        let mut f = Fresh::avoiding([Name::new("x'1"), Name::new("x")]);
        let n = f.fresh(&Name::new("x"));
        assert_eq!(n.as_str(), "x'2");
        assert_eq!(f.fresh(&n).as_str(), "x'3");
    }

    #[test]
    fn base_strips_counter_only() {
        assert_eq!(Name::new("u'12").base(), "u");
        assert_eq!(Name::new("u'").base(), "u'");
        assert_eq!(Name::new("u").base(), "u");
    }
}
