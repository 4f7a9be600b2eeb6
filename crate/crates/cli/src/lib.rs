//! The `pict` command line: batch checking, proving and running of π-terms.
//!
//! Exit codes: 0 success (typed, proved), 1 negative answer (untyped,
//! refuted), 2 unknown (a search budget ran out), 64 parse or usage error,
//! 65 input outside the supported fragment, 66 unreadable input.

mod selftest;

use std::ffi::OsString;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pict::dynamics::{reduce_steps, trace_all, trace_leftmost};
use pict::encodings::{
    dcpt_translate_judgement, hyb_translate_judgement, kpt_translate_judgement, parse_dcpt, parse_hyb, parse_kpt, EncodingError, Source,
    Translated,
};
use pict::mell::{interpolate, prove, Budget, Profile, ProveOutcome};
use pict::surface::{parse_program, parse_sequent_or_formula, sequent_to_string, ParseError};
use pict::typing::{check, synthesize, CheckOutcome, TypingError};

pub use selftest::{selftest_cases, SelftestCase};

pub mod exit {
    pub const OK: i32 = 0;
    pub const NEGATIVE: i32 = 1;
    pub const UNKNOWN: i32 = 2;
    pub const PARSE: i32 = 64;
    pub const FRAGMENT: i32 = 65;
    pub const NO_INPUT: i32 = 66;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "pict", version, about = "Typing, proof search and reduction for π-terms typed by MELL formulas")]
pub struct Cli {
    /// Extra axioms: core, kpt or hyb
    #[arg(long, global = true, default_value = "core")]
    pub profile: Profile,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Search depth bound (overrides PICT_MELL_BUDGET)
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Contractions per `?`-formula on a branch
    #[arg(long, global = true)]
    pub contractions: Option<usize>,
    /// Search node budget
    #[arg(long, global = true)]
    pub nodes: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a judgement `given E |- P` (a bare process is inferred instead)
    Check { input: String },
    /// Synthesize an environment and derivation for a process
    Infer { input: String },
    /// Search for a proof of a sequent `|- F, ...`
    Prove { input: String },
    /// Prove a sequent, then split it: the positions in --left form Γ
    Interpolate {
        input: String,
        #[arg(long, value_delimiter = ',')]
        left: Vec<usize>,
    },
    /// Perform reduction steps, following the first reduct
    Reduce {
        input: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// List every one-step reduct instead
        #[arg(long)]
        all: bool,
    },
    /// Explore reductions to a given depth
    Trace {
        input: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Follow only the first reduct at each step
        #[arg(long)]
        leftmost: bool,
    },
    /// Translate a KPT, HYB or DCPT judgement into a core judgement
    Translate {
        input: String,
        /// Source calculus: kpt, hyb or dcpt
        #[arg(long)]
        from: Source,
        /// Also typecheck the result under its profile
        #[arg(long)]
        check: bool,
    },
    /// Run the built-in corpus of worked examples
    Selftest,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn new(code: i32, stdout: String) -> Self {
        Output { code, stdout, stderr: String::new() }
    }

    fn error(code: i32, stderr: String) -> Self {
        Output { code, stdout: String::new(), stderr }
    }
}

struct Config {
    profile: Profile,
    budget: Budget,
    format: Format,
}

impl Config {
    fn emit(&self, code: i32, text: String, json: Value) -> Output {
        match self.format {
            Format::Text => Output::new(code, text),
            Format::Json => Output::new(code, format!("{json:#}\n")),
        }
    }
}

/// Runs one command line (`args[0]` is the program name).
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE } else { exit::OK };
            let text = e.render().to_string();
            return if code == exit::OK { Output::new(code, text) } else { Output::error(code, text) };
        }
    };
    let mut budget = match Budget::from_env() {
        Ok(b) => b,
        Err(e) => return Output::error(exit::PARSE, format!("error: {}: {e}\n", pict::mell::BUDGET_ENV)),
    };
    if let Some(d) = cli.depth {
        budget.depth = d;
    }
    if let Some(c) = cli.contractions {
        budget.contractions = c;
    }
    if let Some(n) = cli.nodes {
        budget.nodes = n;
    }
    let cfg = Config { profile: cli.profile, budget, format: cli.format };
    match cli.command {
        Command::Check { input } => with_input(&input, |file, text| cmd_check(&cfg, file, text, false)),
        Command::Infer { input } => with_input(&input, |file, text| cmd_check(&cfg, file, text, true)),
        Command::Prove { input } => with_input(&input, |file, text| cmd_prove(&cfg, file, text)),
        Command::Interpolate { input, left } => with_input(&input, |file, text| cmd_interpolate(&cfg, file, text, &left)),
        Command::Reduce { input, steps, all } => with_input(&input, |file, text| cmd_reduce(&cfg, file, text, steps, all)),
        Command::Trace { input, depth, leftmost } => with_input(&input, |file, text| cmd_trace(&cfg, file, text, depth, leftmost)),
        Command::Translate { input, from, check } => with_input(&input, |file, text| cmd_translate(&cfg, file, text, from, check)),
        Command::Selftest => cmd_selftest(&cfg),
    }
}

/// An existing path is read as a file; anything else is taken as inline text.
fn with_input(input: &str, f: impl FnOnce(&str, &str) -> Result<Output, Failure>) -> Output {
    let (file, text) = if input == "-" {
        let mut s = String::new();
        if let Err(e) = std::io::Read::read_to_string(&mut std::io::stdin(), &mut s) {
            return Output::error(exit::NO_INPUT, format!("error: stdin: {e}\n"));
        }
        ("<stdin>".to_string(), s)
    } else if Path::new(input).exists() {
        match std::fs::read_to_string(input) {
            Ok(s) => (input.to_string(), s),
            Err(e) => return Output::error(exit::NO_INPUT, format!("error: {input}: {e}\n")),
        }
    } else {
        ("<arg>".to_string(), input.to_string())
    };
    match f(&file, &text) {
        Ok(out) => out,
        Err(Failure::Parse(e)) => Output::error(exit::PARSE, e.render(&text)),
        Err(Failure::Fragment(msg)) => Output::error(exit::FRAGMENT, format!("error: {msg}\n")),
    }
}

enum Failure {
    Parse(ParseError),
    Fragment(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

impl From<TypingError> for Failure {
    fn from(e: TypingError) -> Self {
        Failure::Fragment(e.to_string())
    }
}

impl From<EncodingError> for Failure {
    fn from(e: EncodingError) -> Self {
        Failure::Fragment(e.to_string())
    }
}

fn outcome_code(o: &CheckOutcome) -> i32 {
    match o {
        CheckOutcome::Typed { .. } => exit::OK,
        CheckOutcome::Untyped { .. } => exit::NEGATIVE,
        CheckOutcome::Unknown { .. } => exit::UNKNOWN,
    }
}

fn prove_code(o: &ProveOutcome) -> i32 {
    match o {
        ProveOutcome::Proved(_) => exit::OK,
        ProveOutcome::Refuted => exit::NEGATIVE,
        ProveOutcome::Unknown(_) => exit::UNKNOWN,
    }
}

fn cmd_check(cfg: &Config, file: &str, text: &str, infer: bool) -> Result<Output, Failure> {
    let (env, process) = parse_program(file, text)?;
    let outcome = match (&env, infer) {
        (Some(e), false) => check(e, &process, cfg.profile, cfg.budget)?,
        (hint, _) => synthesize(&process, hint.as_ref(), cfg.profile, cfg.budget)?,
    };
    let code = outcome_code(&outcome);
    let mut text = format!("{}\n", outcome.label());
    let (obligations, derivation) = match &outcome {
        CheckOutcome::Typed { derivation } => (&[][..], Some(derivation)),
        CheckOutcome::Untyped { obligations } | CheckOutcome::Unknown { obligations } => (&obligations[..], None),
    };
    for o in obligations {
        text.push_str(&format!("  obligation: {o}\n"));
    }
    if let (true, Some(d)) = (infer, derivation) {
        text.push_str(&format!("env: {}\n{}", d.env(), d.render()));
    }
    let json = json!({
        "command": if infer { "infer" } else { "check" },
        "profile": cfg.profile,
        "outcome": outcome.label(),
        "env": env.as_ref().map(|e| e.to_string()),
        "inferred": derivation.map(|d| d.env().to_string()),
        "process": process.to_string(),
        "obligations": obligations,
        "derivation": derivation.map(|d| d.to_json()),
    });
    Ok(cfg.emit(code, text, json))
}

fn cmd_prove(cfg: &Config, file: &str, text: &str) -> Result<Output, Failure> {
    let seq = parse_sequent_or_formula(file, text)?;
    let outcome = prove(&seq, cfg.profile, cfg.budget);
    let mut text = format!("{}\n", outcome.label());
    match &outcome {
        ProveOutcome::Proved(p) => text.push_str(&p.render()),
        ProveOutcome::Unknown(d) => text.push_str(&format!("  {}\n", d.summary())),
        ProveOutcome::Refuted => {}
    }
    let json = json!({
        "command": "prove",
        "profile": cfg.profile,
        "sequent": sequent_to_string(&seq),
        "outcome": outcome.label(),
        "proof": outcome.proof().map(|p| p.to_json()),
        "diagnostics": match &outcome { ProveOutcome::Unknown(d) => serde_json::to_value(d).ok(), _ => None },
    });
    Ok(cfg.emit(prove_code(&outcome), text, json))
}

fn cmd_interpolate(cfg: &Config, file: &str, text: &str, left: &[usize]) -> Result<Output, Failure> {
    let seq = parse_sequent_or_formula(file, text)?;
    let outcome = prove(&seq, cfg.profile, cfg.budget);
    let ProveOutcome::Proved(proof) = &outcome else {
        let text = format!("{}\n", outcome.label());
        let json = json!({ "command": "interpolate", "sequent": sequent_to_string(&seq), "outcome": outcome.label() });
        return Ok(cfg.emit(prove_code(&outcome), text, json));
    };
    let i = interpolate(proof, left).map_err(|e| Failure::Fragment(e.to_string()))?;
    let text = format!("interpolant: {}\nleft:\n{}right:\n{}", i.formula, i.left.render(), i.right.render());
    let json = json!({
        "command": "interpolate",
        "sequent": sequent_to_string(&seq),
        "outcome": "proved",
        "left": left,
        "interpolant": i.formula.to_string(),
        "left_proof": i.left.to_json(),
        "right_proof": i.right.to_json(),
    });
    Ok(cfg.emit(exit::OK, text, json))
}

fn diagnostics_to_stderr(out: &mut Output, p: &pict::Process) {
    for d in reduce_steps(p).diagnostics {
        out.stderr.push_str(&format!("warning: {d}\n"));
    }
}

fn cmd_reduce(cfg: &Config, file: &str, text: &str, steps: usize, all: bool) -> Result<Output, Failure> {
    let (_, p) = parse_program(file, text)?;
    let mut out = if all {
        let r = reduce_steps(&p);
        let text: String = r.steps.iter().map(|s| format!("--{}--> {}\n", s.label, s.process)).collect();
        cfg.emit(exit::OK, text, json!({ "command": "reduce", "process": p.to_string(), "reducts": r.steps }))
    } else {
        let t = trace_leftmost(&p, steps);
        let last = t.steps.last().map_or(&p, |s| &s.process);
        let mut text: String = t.steps.iter().map(|s| format!("--{}--> {}\n", s.label, s.process)).collect();
        if t.steps.is_empty() {
            text.push_str(&format!("{p}\n"));
        }
        let json = json!({
            "command": "reduce",
            "process": p.to_string(),
            "steps": t.steps,
            "result": last.to_string(),
            "stuck": t.exhausted,
        });
        cfg.emit(exit::OK, text, json)
    };
    diagnostics_to_stderr(&mut out, &p);
    Ok(out)
}

fn cmd_trace(cfg: &Config, file: &str, text: &str, depth: usize, leftmost: bool) -> Result<Output, Failure> {
    let (_, p) = parse_program(file, text)?;
    let mut out = if leftmost {
        let t = trace_leftmost(&p, depth);
        let mut text = format!("{p}\n");
        for s in &t.steps {
            text.push_str(&format!("--{}--> {}\n", s.label, s.process));
        }
        let json = json!({ "command": "trace", "strategy": "leftmost", "trace": t });
        cfg.emit(exit::OK, text, json)
    } else {
        let t = trace_all(&p, depth);
        let json = json!({ "command": "trace", "strategy": "all", "depth": t.depth(), "tree": t });
        cfg.emit(exit::OK, t.render(), json)
    };
    diagnostics_to_stderr(&mut out, &p);
    Ok(out)
}

fn translate(from: Source, file: &str, text: &str) -> Result<Translated, Failure> {
    Ok(match from {
        Source::Kpt => kpt_translate_judgement(&parse_kpt(file, text)?)?,
        Source::Hyb => hyb_translate_judgement(&parse_hyb(file, text)?)?,
        Source::Dcpt => dcpt_translate_judgement(&parse_dcpt(file, text)?)?,
    })
}

fn cmd_translate(cfg: &Config, file: &str, text: &str, from: Source, also_check: bool) -> Result<Output, Failure> {
    let t = translate(from, file, text)?;
    let mut text = t.to_judgement_text();
    let mut code = exit::OK;
    let mut outcome = None;
    if also_check {
        let o = check(&t.env, &t.process, t.profile(), cfg.budget)?;
        code = outcome_code(&o);
        text.push_str(&format!("# {}\n", o.label()));
        outcome = Some(o.label());
    }
    let json = json!({
        "command": "translate",
        "source": t.source,
        "profile": t.profile(),
        "env": t.env.to_string(),
        "process": t.process.to_string(),
        "outcome": outcome,
    });
    Ok(cfg.emit(code, text, json))
}

fn cmd_selftest(cfg: &Config) -> Output {
    let results: Vec<(SelftestCase, String)> = selftest_cases()
        .into_iter()
        .map(|c| {
            let got = c.run(cfg.budget);
            (c, got)
        })
        .collect();
    let failed = results.iter().filter(|(c, got)| *got != c.expected).count();
    let mut text = String::new();
    for (c, got) in &results {
        let mark = if *got == c.expected { "ok  " } else { "FAIL" };
        text.push_str(&format!("{mark} {}: {got} (expected {})\n", c.name, c.expected));
    }
    text.push_str(&format!("{} passed, {failed} failed\n", results.len() - failed));
    let cases: Vec<Value> =
        results.iter().map(|(c, got)| json!({ "name": c.name, "expected": c.expected, "got": got, "ok": *got == c.expected })).collect();
    let json = json!({ "command": "selftest", "cases": cases, "passed": results.len() - failed, "failed": failed });
    cfg.emit(if failed == 0 { exit::OK } else { exit::NEGATIVE }, text, json)
}
