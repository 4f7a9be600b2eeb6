//! Criteria on the type system: worked examples, profiles, prefix commutation.

use pict::encodings::{
    dcpt_translate_judgement, hyb_translate_judgement, kpt_translate_judgement, parse_dcpt, parse_hyb, parse_kpt, samples,
};
use pict::mell::{prove, Budget, Profile, ProveOutcome};
use pict::surface::{parse_behaviour, parse_environment, parse_process, parse_sequent};
use pict::typing::{check, check_derivation, expand_derived, new_binders, new_star_node, synthesize, wrap_news, Derivation, TypingRule};
use pict::{annotate, Behaviour, Capability, Formula, Kind, Name, Polarity, Process};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::oracle::{Oracle, B};
use crate::Report;

fn env(s: &str) -> Formula {
    parse_environment(s).unwrap()
}

fn proc(s: &str) -> Process {
    parse_process(s).unwrap()
}

fn beh(s: &str) -> Behaviour {
    parse_behaviour(s).unwrap()
}

/// Valid as written, and valid again once derived rules are expanded.
fn sound(d: &Derivation) -> Result<(), String> {
    check_derivation(d, Profile::Core).map_err(|e| e.to_string())?;
    let x = expand_derived(d, Budget::default()).map_err(|e| e.to_string())?;
    if x.conclusion != d.conclusion || x.has_derived_rules() {
        return Err("expansion changed the conclusion or kept derived rules".into());
    }
    check_derivation(&x, Profile::Core).map_err(|e| format!("expanded: {e}"))
}

fn example_nop() -> Result<(), String> {
    let o = synthesize(&Process::Nop, None, Profile::Core, Budget::default()).map_err(|e| e.to_string())?;
    let d = o.derivation().ok_or("0 not typed")?;
    if *d.env() != Formula::Bot || d.rule != TypingRule::Nop {
        return Err(format!("0 typed at {} by {}", d.env(), d.rule.name()));
    }
    sound(d)
}

fn example_out_async() -> Result<(), String> {
    let e = env("u : out (out 1) (*) v : out 1");
    let o = check(&e, &proc("u<v>"), Profile::Core, Budget::default()).map_err(|e| e.to_string())?;
    sound(o.derivation().ok_or_else(|| format!("u<v> is {}", o.label()))?)
}

fn example_out_bound() -> Result<(), String> {
    let a = beh("out 1");
    let names = vec![Name::new("x")];
    let body = proc("x().w<>");
    let prem = check(&env("x : in 1 (*) w : out 1"), &body, Profile::Core, Budget::default()).map_err(|e| e.to_string())?;
    let prem = prem.derivation().ok_or("premiss not typed")?.clone();
    let binders = new_binders(&a).map_err(|e| e.to_string())?;
    let p = wrap_news(&names, &binders, Process::output("u", names.clone(), body));
    let e = Formula::tensor(Formula::assign("u", Capability::output(a)), env("w : out 1"));
    sound(&Derivation::new(TypingRule::DerivedOutBound, e, p, vec![prem]))
}

/// `new*` over `x̃ : A` for a process using each capability of the pair once;
/// returns the number of `new` nodes in the expansion.
fn expansion(a: &str, names: &[&str], ctx: &str, p: &str) -> Result<usize, String> {
    let a = beh(a);
    let names: Vec<Name> = names.iter().map(|n| Name::new(*n)).collect();
    let pair = Formula::par(annotate(&names, &a).unwrap(), annotate(&names, &a.dual()).unwrap());
    let ctx = env(ctx);
    let o = check(&Formula::tensor(pair, ctx.clone()), &proc(p), Profile::Core, Budget::default()).map_err(|e| e.to_string())?;
    let prem = o.derivation().ok_or_else(|| format!("premiss {}", o.label()))?.clone();
    let d = new_star_node(&a, &names, ctx, prem).map_err(|e| e.to_string())?;
    sound(&d)?;
    let x = expand_derived(&d, Budget::default()).map_err(|e| e.to_string())?;
    let mut n = 0;
    x.walk(&mut |_, d| n += usize::from(matches!(d.rule, TypingRule::NewLin | TypingRule::NewOmega)));
    Ok(n)
}

fn example_mismatch() -> Result<(), String> {
    let hint = env("u : out (out 1) (*) v : out 1 (*) u : in (in 1) (*) w : out (out 1) (*) z : out 1");
    let p = proc("u<v> | u(x).x().w<z>");
    let o = synthesize(&p, Some(&hint), Profile::Core, Budget::default()).map_err(|e| e.to_string())?;
    let d = o.derivation().ok_or_else(|| format!("parallel {}", o.label()))?;
    if d.rule != TypingRule::Para {
        return Err(format!("parallel typed by {}", d.rule.name()));
    }
    sound(d)?;
    let scoped = Process::new_chan("u", beh("out 1"), Kind::Lin, p);
    let o = synthesize(&scoped, Some(&hint), Profile::Core, Budget::default()).map_err(|e| e.to_string())?;
    if o.is_typed() {
        return Err("new-lin over the mismatch was typed".into());
    }
    Ok(())
}

pub fn c5_examples(r: &mut Report) {
    let mut results: Vec<(&str, Result<(), String>)> =
        vec![("nop", example_nop()), ("out-async", example_out_async()), ("out-bound", example_out_bound())];
    // (label, A, names, context, process, new nodes after expansion)
    type Case<'a> = (&'a str, &'a str, &'a [&'a str], &'a str, &'a str, usize);
    let expansions: [Case; 5] = [
        ("new* in", "in (out 1)", &["x"], "w : out 1", "x<w> | x(k).k<>", 1),
        ("new* 1", "1", &[], "bot", "0", 0),
        ("new* bot", "bot", &[], "bot", "0", 0),
        ("new* par", "in (out 1) (%) out (out 1)", &["y", "z"], "w : out 1", "y(k).k<> | z<w> | z(k).y<k>", 2),
        ("new* tensor", "in (out 1) (*) out (out 1)", &["y", "z"], "w : out 1", "y(k).z<k> | y<w> | z(k).k<>", 2),
    ];
    for (label, a, names, ctx, p, news) in expansions {
        let res = expansion(a, names, ctx, p).and_then(|n| if n == news { Ok(()) } else { Err(format!("{n} new nodes, expected {news}")) });
        results.push((label, res));
    }
    results.push(("mismatched composition", example_mismatch()));
    let failed: Vec<String> = results.iter().filter_map(|(l, r)| r.as_ref().err().map(|e| format!("{l}: {e}"))).collect();
    r.line(
        5,
        "worked typing examples",
        failed.is_empty(),
        if failed.is_empty() { format!("{}/{} examples as stated", results.len(), results.len()) } else { failed.join("; ") },
    );
}

fn to_b(f: &Formula) -> Option<B> {
    Some(match f {
        Formula::Lit(l) => B::Lit(u8::from(l.atom == pict::Atom::var("b")), l.positive),
        Formula::One => B::One,
        Formula::Bot => B::Bot,
        Formula::Tensor(x, y) => B::T(Box::new(to_b(x)?), Box::new(to_b(y)?)),
        Formula::Par(x, y) => B::P(Box::new(to_b(x)?), Box::new(to_b(y)?)),
        _ => return None,
    })
}

pub fn c8_profiles(r: &mut Report) {
    let directions = ["|- ~(a (*) b), a (%) b", "|- ~(a (%) b), a (*) b", "|- ~1, bot", "|- ~bot, 1", "|- ~(!a), ?a", "|- ~(?a), !a"];
    let mut problems = vec![];
    let mut oracle = Oracle::default();
    for d in directions {
        let seq = parse_sequent(d).unwrap();
        let kpt = prove(&seq, Profile::Kpt, Budget::default());
        if !matches!(kpt, ProveOutcome::Proved(_)) {
            problems.push(format!("kpt {d}: {}", kpt.label()));
        }
        let core = prove(&seq, Profile::Core, Budget::default());
        let b: Option<Vec<B>> = seq.iter().map(to_b).collect();
        let ok = match &b {
            // exponential-free: the oracle decides, and must refute
            Some(b) => !oracle.provable(b) && matches!(core, ProveOutcome::Refuted),
            // `!a ≤ ?a` is provable in MELL itself (two derelictions); the
            // other exponential direction must not be proved
            None if d == "|- ~(!a), ?a" => matches!(core, ProveOutcome::Proved(_)),
            None => !matches!(core, ProveOutcome::Proved(_)),
        };
        if !ok {
            problems.push(format!("core {d}: {}", core.label()));
        }
    }
    let mut typed = [0usize; 3];
    let budget = Budget::default();
    let mut tally = |i: usize, name: &str, res: Result<(Formula, Process, Profile), String>| match res {
        Ok((e, p, profile)) => match check(&e, &p, profile, budget) {
            Ok(o) if o.is_typed() => typed[i] += 1,
            Ok(o) => problems.push(format!("{name}: {}", o.label())),
            Err(e) => problems.push(format!("{name}: {e}")),
        },
        Err(e) => problems.push(format!("{name}: {e}")),
    };
    for s in samples::KPT {
        let t = parse_kpt("kpt", s).map_err(|e| e.to_string()).and_then(|j| kpt_translate_judgement(&j).map_err(|e| e.to_string()));
        tally(0, s, t.map(|t| (t.env.clone(), t.process.clone(), t.profile())));
    }
    for s in samples::HYB {
        let t = parse_hyb("hyb", s).map_err(|e| e.to_string()).and_then(|j| hyb_translate_judgement(&j).map_err(|e| e.to_string()));
        tally(1, s, t.map(|t| (t.env.clone(), t.process.clone(), t.profile())));
    }
    for s in samples::DCPT {
        let t = parse_dcpt("dcpt", s).map_err(|e| e.to_string()).and_then(|j| dcpt_translate_judgement(&j).map_err(|e| e.to_string()));
        tally(2, s, t.map(|t| (t.env.clone(), t.process.clone(), t.profile())));
    }
    let sizes = [samples::KPT.len(), samples::HYB.len(), samples::DCPT.len()];
    let ok = problems.is_empty() && typed == sizes && sizes.iter().all(|&n| n >= 10);
    r.line(
        8,
        "profile equivalences and translated sample corpora",
        ok,
        format!(
            "6/6 kpt directions proved, core as expected; samples typed kpt {}/{}, hyb {}/{}, dcpt {}/{}{}",
            typed[0],
            sizes[0],
            typed[1],
            sizes[1],
            typed[2],
            sizes[2],
            if problems.is_empty() { String::new() } else { format!("; {}", problems.join("; ")) }
        ),
    );
}

/// A capability behaviour `E pol B` with a random payload `B` of unary
/// capabilities over units.
fn unary(rng: &mut ChaCha8Rng, depth: u32) -> Behaviour {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen() { Behaviour::One } else { Behaviour::Bot };
    }
    let pol = if rng.gen() { Polarity::Input } else { Polarity::Output };
    let cap = Capability::new(pol, unary(rng, depth - 1));
    match rng.gen_range(0..4) {
        0 => Behaviour::Bang(cap),
        1 => Behaviour::Quest(cap),
        _ => Behaviour::Cap(cap),
    }
}

pub fn c9_prefix_commutation(r: &mut Report, rng: &mut ChaCha8Rng) {
    let pool = ["u", "v", "x", "y", "a", "b", "c", "k", "m", "n", "s", "t"];
    let (mut ok, mut first_bad) = (0, None);
    for _ in 0..20 {
        let picked: Vec<&str> = pool.choose_multiple(rng, 4).copied().collect();
        let [u, v, x, y] = [picked[0], picked[1], picked[2], picked[3]];
        let b = unary(rng, 3);
        // u delivers a channel x on which to send; v delivers the y to send
        let yt = Capability::output(b);
        let xt = Capability::output(Behaviour::Cap(yt.clone()));
        let e = Formula::tensor(
            Formula::assign(u, Capability::input(Behaviour::Cap(xt))),
            Formula::assign(v, Capability::input(Behaviour::Cap(yt))),
        );
        let send = Process::output(x, vec![Name::new(y)], Process::Nop);
        let uv = Process::input(u, vec![Name::new(x)], Process::input(v, vec![Name::new(y)], send.clone()));
        let vu = Process::input(v, vec![Name::new(y)], Process::input(u, vec![Name::new(x)], send));
        let budget = Budget::default();
        let l1 = check(&e, &uv, Profile::Core, budget).map(|o| o.label()).unwrap_or("error");
        let l2 = check(&e, &vu, Profile::Core, budget).map(|o| o.label()).unwrap_or("error");
        if l1 == "Typed" && l2 == "Typed" {
            ok += 1;
        } else if first_bad.is_none() {
            first_bad = Some(format!("{e} |- {uv}: {l1}, {vu}: {l2}"));
        }
    }
    r.line(
        9,
        "prefix commutation preserves typing",
        ok == 20,
        format!("{ok}/20 instances typed in both orders{}", first_bad.map(|b| format!("; {b}")).unwrap_or_default()),
    );
}
