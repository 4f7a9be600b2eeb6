//! Surface syntax round-trips and the CLI exit-code table.

use pict::surface::{parse_behaviour, parse_formula, parse_process, parse_sequent, sequent_to_string};
use pict::{Behaviour, Capability, Formula, Kind, Name, Polarity, Process};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::Report;

const NAMES: [&str; 6] = ["a", "b", "u", "v", "x'1", "y_2"];

fn name(rng: &mut ChaCha8Rng) -> Name {
    Name::new(NAMES.choose(rng).unwrap())
}

fn capability(rng: &mut ChaCha8Rng, depth: u32) -> Capability {
    let pol = if rng.gen() { Polarity::Input } else { Polarity::Output };
    Capability::new(pol, behaviour(rng, depth))
}

fn behaviour(rng: &mut ChaCha8Rng, depth: u32) -> Behaviour {
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen() { Behaviour::One } else { Behaviour::Bot };
    }
    match rng.gen_range(0..5) {
        0 => Behaviour::Cap(capability(rng, depth - 1)),
        1 => Behaviour::Bang(capability(rng, depth - 1)),
        2 => Behaviour::Quest(capability(rng, depth - 1)),
        3 => Behaviour::tensor(behaviour(rng, depth - 1), behaviour(rng, depth - 1)),
        _ => Behaviour::par(behaviour(rng, depth - 1), behaviour(rng, depth - 1)),
    }
}

fn formula(rng: &mut ChaCha8Rng, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        let f = match rng.gen_range(0..4) {
            0 => return Formula::One,
            1 => return Formula::Bot,
            2 => Formula::var(name(rng).as_str()),
            _ => Formula::assign(name(rng), capability(rng, 2)),
        };
        return if rng.gen() { f } else { f.negate() };
    }
    match rng.gen_range(0..4) {
        0 => Formula::bang(formula(rng, depth - 1)),
        1 => Formula::quest(formula(rng, depth - 1)),
        2 => Formula::tensor(formula(rng, depth - 1), formula(rng, depth - 1)),
        _ => Formula::par(formula(rng, depth - 1), formula(rng, depth - 1)),
    }
}

fn process(rng: &mut ChaCha8Rng, depth: u32) -> Process {
    if depth == 0 || rng.gen_bool(0.2) {
        return Process::Nop;
    }
    let binders: Vec<Name> = ["p", "q", "r"].iter().filter(|_| rng.gen()).map(|b| Name::new(*b)).collect();
    match rng.gen_range(0..5) {
        0 => Process::input(name(rng), binders, process(rng, depth - 1)),
        1 => Process::rep_input(name(rng), binders, process(rng, depth - 1)),
        2 => {
            let objects = (0..rng.gen_range(0..3)).map(|_| name(rng)).collect();
            Process::output(name(rng), objects, process(rng, depth - 1))
        }
        3 => Process::par(process(rng, depth - 1), process(rng, depth - 1)),
        _ => {
            let kind = if rng.gen() { Kind::Lin } else { Kind::Omega };
            Process::new_chan(name(rng), behaviour(rng, 3), kind, process(rng, depth - 1))
        }
    }
}

fn exit_codes() -> (usize, usize, Vec<String>) {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/exit_codes.txt");
    let text = std::fs::read_to_string(path).expect("exit code fixture table");
    // fixture paths are relative to the crate root
    std::env::set_current_dir(env!("CARGO_MANIFEST_DIR")).unwrap();
    let (mut total, mut ok, mut bad) = (0, 0, vec![]);
    for line in text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        let (code, args) = line.split_once('\t').expect("code<TAB>args");
        let code: i32 = code.parse().unwrap();
        let out = pict_cli::run(std::iter::once("pict").chain(args.split_whitespace()).map(String::from));
        total += 1;
        if out.code == code {
            ok += 1;
        } else {
            bad.push(format!("`{args}` exited {} (expected {code})", out.code));
        }
    }
    (total, ok, bad)
}

pub fn c11_round_trip(r: &mut Report, rng: &mut ChaCha8Rng) {
    let mut failures: Vec<String> = vec![];
    let mut note = |ok: bool, text: String| {
        if !ok {
            failures.push(text);
        }
    };
    for i in 0..1000 {
        match i % 4 {
            0 => {
                let b = behaviour(rng, 4);
                note(parse_behaviour(&b.to_string()).ok() == Some(b.clone()), b.to_string());
            }
            1 => {
                let f = formula(rng, 4);
                note(parse_formula(&f.to_string()).ok() == Some(f.clone()), f.to_string());
            }
            2 => {
                let g: Vec<Formula> = (0..rng.gen_range(0..4)).map(|_| formula(rng, 3)).collect();
                let text = sequent_to_string(&g);
                note(parse_sequent(&text).ok() == Some(g), text);
            }
            _ => {
                let p = process(rng, 5);
                note(parse_process(&p.to_string()).ok() == Some(p.clone()), p.to_string());
            }
        }
    }
    let (total, ok, bad) = exit_codes();
    r.line(
        11,
        "surface round-trip and CLI exit codes",
        failures.is_empty() && ok == total && total > 0,
        format!(
            "{}/1000 parse(print(x)) = x, {ok}/{total} exit codes match{}{}",
            1000 - failures.len(),
            failures.first().map(|f| format!("; first round-trip failure {f}")).unwrap_or_default(),
            bad.first().map(|b| format!("; {b}")).unwrap_or_default()
        ),
    );
}
