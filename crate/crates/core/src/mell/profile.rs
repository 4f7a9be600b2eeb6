use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::syntax::Formula;

/// Which extra axioms the logic is extended with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// Plain MELL.
    #[default]
    Core,
    /// `A⊗B ≃ A⅋B`, `1 ≃ ⊥`, `!A ≃ ?A` (i/o types with linearity).
    Kpt,
    /// `A⊗B ≃ A⅋B`, `1 ≃ ⊥` (control / sequentiality).
    Hyb,
}

/// An entailment direction `E ≤ F`, used as the axiom leaf `⊢ E⊥, F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Schema {
    /// `A⊗B ≤ A⅋B`, leaf `⊢ A⊥⅋B⊥, A⅋B`.
    TensorPar,
    /// `A⅋B ≤ A⊗B`, leaf `⊢ A⊥⊗B⊥, A⊗B`.
    ParTensor,
    /// `1 ≤ ⊥`, leaf `⊢ ⊥, ⊥`.
    OneBot,
    /// `⊥ ≤ 1`, leaf `⊢ 1, 1`.
    BotOne,
    /// `!A ≤ ?A`, leaf `⊢ ?A⊥, ?A`.
    BangQuest,
    /// `?A ≤ !A`, leaf `⊢ !A⊥, !A`.
    QuestBang,
}

const KPT: &[Schema] = &[Schema::TensorPar, Schema::ParTensor, Schema::OneBot, Schema::BotOne, Schema::BangQuest, Schema::QuestBang];
const HYB: &[Schema] = &[Schema::TensorPar, Schema::ParTensor, Schema::OneBot, Schema::BotOne];

impl Profile {
    pub fn schemas(self) -> &'static [Schema] {
        match self {
            Profile::Core => &[],
            Profile::Kpt => KPT,
            Profile::Hyb => HYB,
        }
    }

    pub fn allows(self, s: Schema) -> bool {
        self.schemas().contains(&s)
    }

    pub fn name(self) -> &'static str {
        match self {
            Profile::Core => "core",
            Profile::Kpt => "kpt",
            Profile::Hyb => "hyb",
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Profile {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "core" => Ok(Profile::Core),
            "kpt" => Ok(Profile::Kpt),
            "hyb" => Ok(Profile::Hyb),
            _ => Err(format!("unknown profile `{s}` (expected core, kpt or hyb)")),
        }
    }
}

impl Schema {
    pub fn name(self) -> &'static str {
        match self {
            Schema::TensorPar => "tensor-par",
            Schema::ParTensor => "par-tensor",
            Schema::OneBot => "one-bot",
            Schema::BotOne => "bot-one",
            Schema::BangQuest => "bang-quest",
            Schema::QuestBang => "quest-bang",
        }
    }

    /// The leaf for the given metavariables. Binary schemas take `a, b`,
    /// exponential schemas take `a` only, unit schemas take none.
    pub fn instance(self, a: Option<&Formula>, b: Option<&Formula>) -> Vec<Formula> {
        let a = || a.expect("schema needs A").clone();
        let b = || b.expect("schema needs B").clone();
        match self {
            Schema::TensorPar => vec![Formula::tensor(a(), b()).negate(), Formula::par(a(), b())],
            Schema::ParTensor => vec![Formula::par(a(), b()).negate(), Formula::tensor(a(), b())],
            Schema::OneBot => vec![Formula::Bot, Formula::Bot],
            Schema::BotOne => vec![Formula::One, Formula::One],
            Schema::BangQuest => vec![Formula::bang(a()).negate(), Formula::quest(a())],
            Schema::QuestBang => vec![Formula::quest(a()).negate(), Formula::bang(a())],
        }
    }

    /// Whether `⊢ c0, c1` is an instance (in this order).
    pub fn matches(self, conclusion: &[Formula]) -> bool {
        let [l, r] = conclusion else { return false };
        match (self, r) {
            (Schema::TensorPar, Formula::Par(a, b)) | (Schema::ParTensor, Formula::Tensor(a, b)) => {
                *l == self.instance(Some(a), Some(b))[0]
            }
            (Schema::OneBot, Formula::Bot) => *l == Formula::Bot,
            (Schema::BotOne, Formula::One) => *l == Formula::One,
            (Schema::BangQuest, Formula::Quest(a)) | (Schema::QuestBang, Formula::Bang(a)) => *l == self.instance(Some(a), None)[0],
            _ => false,
        }
    }
}
