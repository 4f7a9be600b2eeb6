//! Criteria on reduction: subject reduction, congruence, private traces.

use std::time::Instant;

use pict::dynamics::corpus::{generate_corpus, CorpusTerm};
use pict::dynamics::{congruence_normalize, congruent, private_run_length, subject_reduction_check};
use pict::mell::{Budget, Profile};
use pict::surface::{parse_environment, parse_process};
use pict::typing::check;
use pict::{Formula, Process};

use crate::Report;

pub fn corpus() -> Vec<CorpusTerm> {
    generate_corpus(7, 120, 25, Profile::Core, Budget::default())
}

pub fn c6_subject_reduction(r: &mut Report, corpus: &[CorpusTerm]) {
    let start = Instant::now();
    let (mut steps, mut failures, mut first_bad) = (0, 0, None);
    for t in corpus {
        let rep = subject_reduction_check(&t.env, &t.process, 8, Profile::Core, Budget::default());
        steps += rep.steps;
        failures += rep.failures.len();
        if let (Some(f), None) = (rep.failures.first(), &first_bad) {
            first_bad = Some(format!("{} |- {} reaches {} ({})", t.env, t.process, f.path.last().unwrap(), f.outcome));
        }
    }
    let t = start.elapsed().as_secs_f64();
    let max = corpus.iter().map(|t| t.process.size()).max().unwrap_or(0);
    r.line(
        6,
        "subject reduction on the generated corpus",
        corpus.len() >= 100 && max <= 25 && failures == 0 && t < 600.0,
        format!(
            "{} terms (size <= {max}), {steps} tau-steps to depth 8, {failures} failures, {t:.1}s{}",
            corpus.len(),
            first_bad.map(|b| format!("; {b}")).unwrap_or_default()
        ),
    );
}

/// `E ⅋ F ⊢ P | new x.Q` and its extruded form `new x.(P | Q)`; typing the
/// latter means factoring `[x]` out of a parallel composition.
const EXTRUSION: &[(&str, &str, &str)] = &[
    ("(u : out (out 1) (*) v : out 1) (%) w : out 1", "u<v> | new[1] r : 1. (r<> | r().w<>)", "new[1] r : 1. (u<v> | r<> | r().w<>)"),
    (
        "(u : out (out 1) (*) v : out 1) (%) w : out 1",
        "u<v> | new[w] s : out 1. (*s(k).k<> | new[1] r : 1. (s<r> | r().w<>))",
        "new[w] s : out 1. (u<v> | *s(k).k<> | new[1] r : 1. (s<r> | r().w<>))",
    ),
];

pub fn c7_congruence(r: &mut Report, corpus: &[CorpusTerm]) {
    let budget = Budget::default();
    let label =
        |e: &Formula, p: &Process| check(e, p, Profile::Core, budget).map(|o| o.label().to_string()).unwrap_or_else(|e| e.to_string());
    let (mut agree, mut first_bad) = (0, None);
    for t in corpus {
        let n = congruence_normalize(&t.process);
        let (a, b) = (label(&t.env, &t.process), label(&t.env, &n));
        if a == b {
            agree += 1;
        } else if first_bad.is_none() {
            first_bad = Some(format!("{} ({a}) vs {n} ({b})", t.process));
        }
    }
    let mut extrusion = 0;
    for (e, inner, outer) in EXTRUSION {
        let (e, p, q) = (parse_environment(e).unwrap(), parse_process(inner).unwrap(), parse_process(outer).unwrap());
        let (a, b) = (label(&e, &p), label(&e, &q));
        if congruent(&p, &q) && a == "Typed" && b == "Typed" {
            extrusion += 1;
        } else if first_bad.is_none() {
            first_bad = Some(format!("extrusion {p} ({a}) vs {q} ({b})"));
        }
    }
    r.line(
        7,
        "typing is invariant under structural congruence",
        agree == corpus.len() && extrusion == EXTRUSION.len(),
        format!(
            "{agree}/{} corpus terms agree with their normal form, {extrusion}/{} extrusion scenarios typed both ways{}",
            corpus.len(),
            EXTRUSION.len(),
            first_bad.map(|b| format!("; {b}")).unwrap_or_default()
        ),
    );
}

pub fn c10_private_traces(r: &mut Report, corpus: &[CorpusTerm]) {
    let lengths: Vec<Option<usize>> = corpus.iter().map(|t| private_run_length(&t.process, 200)).collect();
    let over = lengths.iter().filter(|l| l.is_none()).count();
    let longest = lengths.iter().flatten().max().copied().unwrap_or(0);
    r.line(
        10,
        "private-name traces stay under 200 steps",
        over == 0,
        format!("{}/{} terms terminate within 200 tau-steps (longest {longest})", corpus.len() - over, corpus.len()),
    );
}
