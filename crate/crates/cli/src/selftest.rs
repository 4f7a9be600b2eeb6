use pict::encodings::{
    dcpt_translate_judgement, hyb_translate_judgement, kpt_translate_judgement, parse_dcpt, parse_hyb, parse_kpt, samples,
};
use pict::mell::{prove, Budget, Profile};
use pict::surface::{parse_judgement, parse_sequent};
use pict::typing::check;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Check,
    Prove,
    Kpt,
    Hyb,
    Dcpt,
}

#[derive(Debug, Clone)]
pub struct SelftestCase {
    pub name: &'static str,
    pub kind: Kind,
    pub profile: Profile,
    pub text: &'static str,
    pub expected: &'static str,
}

impl SelftestCase {
    /// The outcome label, or `error: ...` when the input does not go through.
    pub fn run(&self, budget: Budget) -> String {
        let judged = |r: Result<(pict::Formula, pict::Process, Profile), String>| match r {
            Ok((e, p, profile)) => match check(&e, &p, profile, budget) {
                Ok(o) => o.label().to_string(),
                Err(e) => format!("error: {e}"),
            },
            Err(e) => format!("error: {e}"),
        };
        match self.kind {
            Kind::Check => {
                judged(parse_judgement(self.name, self.text).map(|j| (j.env, j.process, self.profile)).map_err(|e| e.to_string()))
            }
            Kind::Prove => match parse_sequent(self.text) {
                Ok(seq) => prove(&seq, self.profile, budget).label().to_string(),
                Err(e) => format!("error: {e}"),
            },
            Kind::Kpt => judged(
                parse_kpt(self.name, self.text)
                    .map_err(|e| e.to_string())
                    .and_then(|j| kpt_translate_judgement(&j).map_err(|e| e.to_string()))
                    .map(|t| (t.env.clone(), t.process.clone(), t.profile())),
            ),
            Kind::Hyb => judged(
                parse_hyb(self.name, self.text)
                    .map_err(|e| e.to_string())
                    .and_then(|j| hyb_translate_judgement(&j).map_err(|e| e.to_string()))
                    .map(|t| (t.env.clone(), t.process.clone(), t.profile())),
            ),
            Kind::Dcpt => judged(
                parse_dcpt(self.name, self.text)
                    .map_err(|e| e.to_string())
                    .and_then(|j| dcpt_translate_judgement(&j).map_err(|e| e.to_string()))
                    .map(|t| (t.env.clone(), t.process.clone(), t.profile())),
            ),
        }
    }
}

const fn case(name: &'static str, kind: Kind, profile: Profile, text: &'static str, expected: &'static str) -> SelftestCase {
    SelftestCase { name, kind, profile, text, expected }
}

use Kind::*;
use Profile::{Core, Kpt as KptP};

const WORKED: &[SelftestCase] = &[
    case("nop", Check, Core, "given |- 0", "Typed"),
    case("out-async", Check, Core, "given u : out (out 1) (*) v : out 1 |- u<v>", "Typed"),
    case("out-async-pair", Check, Core, "given u : out (out 1 (*) in 1) (*) (v : out 1 (*) w : in 1) |- u<v, w>", "Typed"),
    case("out-on-input-capability", Check, Core, "given u : in (out 1) (*) v : out 1 |- u<v>", "Untyped"),
    case("out-with-continuation", Check, Core, "given u : out (out 1) (*) (v : out 1 (%) w : out 1 (*) 1) |- u<v>.w<>", "Typed"),
    case(
        "mismatched-composition",
        Check,
        Core,
        "given (u : out (out 1) (*) v : out 1) (%) (u : in (in 1) (*) (w : out (out 1) (*) z : out 1)) |- u<v> | u(x).x().w<z>",
        "Typed",
    ),
    case(
        "mismatched-composition-under-new",
        Check,
        Core,
        "given v : out 1 (*) w : out (out 1) (*) z : out 1 |- new[1] u : out 1. (u<v> | u(x).x().w<z>)",
        // the mismatch is found under a factored premiss, so it is not reported as definitive
        "Unknown",
    ),
    case("new-lin-pair", Check, Core, "given v : out 1 |- new[1] u : out 1. (u<v> | u(x).x<>)", "Typed"),
    case("replicated-server", Check, Core, "given w : out 1 |- new[w] s : out 1. (*s(k).k<> | new[1] r : 1. (s<r> | r().w<>))", "Typed"),
    case("prefix-order-uv", Check, Core, "given u : in (out (out bot)) (*) v : in (out bot) |- u(x).v(y).x<y>", "Typed"),
    case("prefix-order-vu", Check, Core, "given u : in (out (out bot)) (*) v : in (out bot) |- v(y).u(x).x<y>", "Typed"),
    case("tensor-par-kpt", Prove, KptP, "|- ~(a (*) b), a (%) b", "proved"),
    case("tensor-par-core", Prove, Core, "|- ~(a (*) b), a (%) b", "refuted"),
    case("par-tensor-kpt", Prove, KptP, "|- ~(a (%) b), a (*) b", "proved"),
    case("par-tensor-core", Prove, Core, "|- ~(a (%) b), a (*) b", "refuted"),
    case("one-bot-kpt", Prove, KptP, "|- ~1, bot", "proved"),
    case("one-bot-core", Prove, Core, "|- ~1, bot", "refuted"),
    case("bot-one-core", Prove, Core, "|- ~bot, 1", "refuted"),
    case("bang-quest-core", Prove, Core, "|- ~(!a), ?a", "proved"),
    case("quest-bang-kpt", Prove, KptP, "|- ~(?a), !a", "proved"),
];

pub fn selftest_cases() -> Vec<SelftestCase> {
    let mut out = WORKED.to_vec();
    let corpora: [(Kind, &[&'static str]); 3] = [(Kpt, samples::KPT), (Hyb, samples::HYB), (Dcpt, samples::DCPT)];
    for (kind, corpus) in corpora {
        let name = match kind {
            Kpt => "kpt-sample",
            Hyb => "hyb-sample",
            _ => "dcpt-sample",
        };
        out.extend(corpus.iter().map(|&text| case(name, kind, Core, text, "Typed")));
    }
    out
}
