//! Formulas, behaviours and processes serialize as their surface syntax.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::syntax::{Behaviour, Formula, Process};

macro_rules! via_text {
    ($ty:ty, $parse:path) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let text = String::deserialize(d)?;
                $parse(&text).map_err(D::Error::custom)
            }
        }
    };
}

via_text!(Formula, super::parse_formula);
via_text!(Behaviour, super::parse_behaviour);
via_text!(Process, super::parse_process);

impl Serialize for crate::syntax::Name {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for crate::syntax::Name {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(crate::syntax::Name::new(String::deserialize(d)?))
    }
}
