use pict::mell::{Budget, Profile};
use pict::surface::{parse_behaviour, parse_environment, parse_process};
use pict::typing::*;
use pict::{Behaviour, Formula, Name, Process};

fn env(s: &str) -> Formula {
    parse_environment(s).unwrap()
}

fn proc(s: &str) -> Process {
    parse_process(s).unwrap()
}

fn beh(s: &str) -> Behaviour {
    parse_behaviour(s).unwrap()
}

fn core_check(e: &str, p: &str) -> CheckOutcome {
    check(&env(e), &proc(p), Profile::Core, Budget::default()).unwrap()
}

fn assert_valid(d: &Derivation) {
    check_derivation(d, Profile::Core).unwrap_or_else(|e| panic!("{e}\n{}", d.render()));
    let x = expand_derived(d, Budget::default()).unwrap();
    assert_eq!(x.conclusion, d.conclusion);
    assert!(!x.has_derived_rules());
    check_derivation(&x, Profile::Core).unwrap_or_else(|e| panic!("{e}\n{}", x.render()));
}

#[test]
fn nop_and_check_bot() {
    let o = synthesize(&Process::Nop, None, Profile::Core, Budget::default()).unwrap();
    let d = o.derivation().unwrap();
    assert_eq!(*d.env(), Formula::Bot);
    assert_eq!(d.rule, TypingRule::Nop);
    assert!(core_check("bot", "0").is_typed());
}

#[test]
fn async_output() {
    let hint = env("u : out (out 1) (*) v : out 1");
    let o = synthesize(&proc("u<v>"), Some(&hint), Profile::Core, Budget::default()).unwrap();
    let d = o.derivation().unwrap();
    assert_eq!(*d.env(), hint);
    assert_valid(d);
}

#[test]
fn output_at_input_capability_is_untyped() {
    let o = core_check("u : in (out 1)", "u<v>");
    assert_eq!(o.label(), "Untyped", "{o:?}");
}

#[test]
fn unknown_free_name() {
    let err = synthesize(&proc("u<v>"), None, Profile::Core, Budget::default()).unwrap_err();
    assert_eq!(err, TypingError::UnknownFreeNameType(Name::new("u")));
}

#[test]
fn new_over_matching_pair() {
    let hint = env("v : out 1");
    let p = proc("new[1] u : out 1. (u<v>.0 | u(x).0)");
    let o = synthesize(&p, Some(&hint), Profile::Core, Budget::default()).unwrap();
    // the input leaves x unused, a linear capability: not typable
    assert!(!o.is_typed());
    let p = proc("new[1] u : out 1. (u<v> | u(x).x<>)");
    let o = check(&hint, &p, Profile::Core, Budget::default()).unwrap();
    let d = o.derivation().unwrap_or_else(|| panic!("{o:?}"));
    assert!(d.is_sub_normal());
    assert_valid(d);
}

#[test]
fn mismatched_composition() {
    // u sends an `out 1` name but the receiver expects `in 1`
    let hint = env("u : out (out 1) (*) v : out 1 (*) u : in (in 1) (*) w : out (out 1) (*) z : out 1");
    let p = proc("u<v> | u(x).x().w<z>");
    let o = synthesize(&p, Some(&hint), Profile::Core, Budget::default()).unwrap();
    let d = o.derivation().unwrap_or_else(|| panic!("{o:?}"));
    assert_eq!(d.rule, TypingRule::Para);
    assert_valid(d);
    let scoped = Process::new_chan("u", beh("out 1"), pict::Kind::Lin, p);
    let o = synthesize(&scoped, Some(&hint), Profile::Core, Budget::default()).unwrap();
    assert!(!o.is_typed(), "{o:?}");
}

#[test]
fn new_lin_side_condition() {
    let d = Derivation::new(
        TypingRule::NewLin,
        env("x : out 1"),
        proc("new[1] x : 1. 0"),
        vec![Derivation::new(TypingRule::Nop, Formula::Bot, Process::Nop, vec![])],
    );
    match check_derivation(&d, Profile::Core) {
        Err(TypingError::SideConditionViolated { .. } | TypingError::SchemaMismatch { .. }) => {}
        other => panic!("{other:?}"),
    }
    // well-shaped premiss, environment still mentions x
    let e = env("x : out 1");
    let prem_env = Formula::tensor(bracket(&Name::new("x"), &Behaviour::One, pict::Kind::Lin), e.clone());
    let d = Derivation::new(
        TypingRule::NewLin,
        e,
        proc("new[1] x : 1. 0"),
        vec![Derivation::new(TypingRule::Nop, prem_env, Process::Nop, vec![])],
    );
    assert!(check_derivation(&d, Profile::Core).is_err());
}

#[test]
fn out_rule_node() {
    let p = proc("u<v>.w<>");
    let hint = env("u : out (out 1) (*) w : out 1");
    let o = synthesize(&p, Some(&hint), Profile::Core, Budget::default()).unwrap();
    let d = o.derivation().unwrap();
    assert_eq!(d.rule, TypingRule::Out);
    assert_eq!(*d.env(), env("u : out (out 1) (*) (v : out 1 (%) w : out 1 (*) 1)"));
    assert_valid(d);
}

/// A `new*` node over a process using each capability of
/// `x̃:A ⅋ x̃:dual(A)` once; outputs send the `w` names of the context.
fn star(a: &str, names: &[&str], ctx: &str, p: &str) -> Derivation {
    let a = beh(a);
    let names: Vec<Name> = names.iter().map(|n| Name::new(*n)).collect();
    let pair = Formula::par(pict::annotate(&names, &a).unwrap(), pict::annotate(&names, &a.dual()).unwrap());
    let ctx = env(ctx);
    let prem_env = Formula::tensor(pair, ctx.clone());
    let o = check(&prem_env, &proc(p), Profile::Core, Budget::default()).unwrap();
    let prem = o.derivation().unwrap_or_else(|| panic!("{o:?}")).clone();
    new_star_node(&a, &names, ctx, prem).unwrap()
}

const SPLIT_PAR: (&str, &[&str], &str, &str) = ("in (out 1) (%) out (out 1)", &["y", "z"], "w : out 1", "y(k).k<> | z<w> | z(k).y<k>");

#[test]
fn new_star_expansions() {
    for (a, names, ctx, p, news) in [
        ("in (out 1)", &["x"][..], "w : out 1", "x<w> | x(k).k<>", 1),
        ("out (out 1)", &["x"][..], "w : out 1", "x<w> | x(k).k<>", 1),
        ("1", &[][..], "bot", "0", 0),
        ("bot", &[][..], "bot", "0", 0),
        (SPLIT_PAR.0, SPLIT_PAR.1, SPLIT_PAR.2, SPLIT_PAR.3, 2),
        ("in (out 1) (*) out (out 1)", &["y", "z"][..], "w : out 1", "y(k).z<k> | y<w> | z(k).k<>", 2),
        ("!out (out 1) (*) ?in (out 1)", &["y", "z"][..], "w : out 1", "*z(k).y<k> | *y(k).k<> | z<w>", 2),
    ] {
        let d = star(a, names, ctx, p);
        check_derivation(&d, Profile::Core).unwrap_or_else(|e| panic!("{a}: {e}"));
        let x = expand_derived(&d, Budget::default()).unwrap();
        check_derivation(&x, Profile::Core).unwrap_or_else(|e| panic!("{a}: {e}\n{}", x.render()));
        assert_eq!(x.conclusion, d.conclusion);
        let mut n = 0;
        x.walk(&mut |_, d| n += usize::from(matches!(d.rule, TypingRule::NewLin | TypingRule::NewOmega)));
        assert_eq!(n, news, "{a}");
    }
}

#[test]
fn new_star_rejects_bad_bases_and_duplicates() {
    let a = beh("!in 1");
    assert!(matches!(new_binders(&a), Err(TypingError::NonCapabilityBase(_))));
    let d = star(SPLIT_PAR.0, SPLIT_PAR.1, SPLIT_PAR.2, SPLIT_PAR.3);
    let ctx = d.env().clone();
    let prem = d.premises[0].clone();
    let dup = [Name::new("y"), Name::new("y")];
    assert!(matches!(
        new_star(&beh("in (out 1) (%) out (out 1)"), &dup, ctx, prem, Budget::default()),
        Err(TypingError::DuplicateNames(_))
    ));
}

#[test]
fn out_bound_expands() {
    // ν x. u<x>.P with x : dual(out 1) = in 1 used by P as an input
    let a = beh("out 1");
    let names = vec![Name::new("x")];
    let ctx = env("w : out 1");
    let body = proc("x().w<>");
    let hint = env("x : in 1 (*) w : out 1");
    let dp = check(&hint, &body, Profile::Core, Budget::default()).unwrap();
    let dp = dp.derivation().unwrap().clone();
    let binders = new_binders(&a).unwrap();
    let p = wrap_news(&names, &binders, Process::output("u", names.clone(), body));
    let head = Formula::assign("u", pict::Capability::output(a));
    let d = Derivation::new(TypingRule::DerivedOutBound, Formula::tensor(head, ctx), p, vec![dp]);
    assert_valid(&d);
}

#[test]
fn prefix_orders_agree() {
    let e = "u : in (out (out bot)) (*) v : in (out bot)";
    let p1 = core_check(e, "u(x).v(y).x<y>");
    let p2 = core_check(e, "v(y).u(x).x<y>");
    assert!(p1.is_typed() && p2.is_typed(), "{p1:?} {p2:?}");
}

#[test]
fn replicated_server() {
    let e = "w : out 1";
    let p = "new[w] s : out 1. (*s(k).k<> | new[1] r : 1. (s<r> | r().w<>))";
    let o = core_check(e, p);
    let d = o.derivation().unwrap_or_else(|| panic!("{o:?}"));
    assert!(d.is_sub_normal());
    assert_valid(d);
}

#[test]
fn derivation_json_round_trip() {
    let o = core_check("w : out 1", "new[1] r : 1. (r<> | r().w<>)");
    let d = o.derivation().unwrap_or_else(|| panic!("{o:?}")).clone();
    let back = Derivation::from_json(&d.to_json()).unwrap();
    assert_eq!(back, d);
}
