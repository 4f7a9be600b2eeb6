//! Acceptance suite: one PASS/FAIL line per criterion.

mod dynamics;
mod oracle;
mod proofs;
mod surface;
mod typing;

use std::time::{Duration, Instant};

use pict::mell::{check_proof, prove, Budget, Profile, ProveOutcome};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct Report {
    failures: usize,
}

impl Report {
    pub fn line(&mut self, id: usize, title: &str, ok: bool, detail: String) {
        if !ok {
            self.failures += 1;
        }
        println!("{} criterion {id:>2} {title}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

fn c1_prover_oracle(r: &mut Report) {
    let start = Instant::now();
    let mut oracle = oracle::Oracle::default();
    let (mut total, mut provable, mut agree, mut unsound) = (0usize, 0usize, 0usize, 0usize);
    let mut first_bad: Option<String> = None;
    let max_w = 7;
    let mut t_prove = Duration::ZERO;
    let mut t_oracle = Duration::ZERO;
    oracle::enumerate(max_w, |n| {
        total += 1;
        let seq = n.sequent();
        let t0 = Instant::now();
        let expected = oracle.provable(&seq.iter().map(oracle::B::from_n).collect::<Vec<_>>());
        let t1 = Instant::now();
        let fs: Vec<_> = seq.iter().map(|m| m.to_formula()).collect();
        let got = prove(&fs, Profile::Core, Budget::default());
        t_oracle += t1 - t0;
        t_prove += t1.elapsed();
        let ok = match &got {
            ProveOutcome::Proved(p) => {
                let valid = p.conclusion == fs && check_proof(p, Profile::Core).is_ok();
                if !valid {
                    unsound += 1;
                }
                expected && valid
            }
            ProveOutcome::Refuted => !expected,
            ProveOutcome::Unknown(_) => false,
        };
        provable += usize::from(expected);
        if ok {
            agree += 1;
        } else if first_bad.is_none() {
            first_bad = Some(format!("{} (oracle {expected}, prover {})", pict::surface::sequent_to_string(&fs), got.label()));
        }
        if total % 20_000 == 0 {
            oracle.clear();
        }
    });
    let t = start.elapsed();
    eprintln!("c1: oracle {:.1}s, prover {:.1}s", t_oracle.as_secs_f64(), t_prove.as_secs_f64());
    let ok = agree == total && unsound == 0 && t < Duration::from_secs(300);
    r.line(
        1,
        "prover/oracle agreement on MLL (2 atoms, <=7 connectives)",
        ok,
        format!(
            "{agree}/{total} agree ({provable} provable), {unsound} invalid proofs, {:.1}s{}",
            t.as_secs_f64(),
            first_bad.map(|b| format!("; first mismatch {b}")).unwrap_or_default()
        ),
    );
}

fn main() {
    let mut r = Report { failures: 0 };
    c1_prover_oracle(&mut r);
    let rng = |salt: u64| ChaCha8Rng::seed_from_u64(0x5eed + salt);
    proofs::c2_mutation(&mut r, &mut rng(2));
    proofs::c3_interpolation(&mut r, &mut rng(3));
    proofs::c4_substitution(&mut r, &mut rng(4));
    typing::c5_examples(&mut r);
    let corpus = dynamics::corpus();
    dynamics::c6_subject_reduction(&mut r, &corpus);
    dynamics::c7_congruence(&mut r, &corpus);
    typing::c8_profiles(&mut r);
    typing::c9_prefix_commutation(&mut r, &mut rng(9));
    dynamics::c10_private_traces(&mut r, &corpus);
    surface::c11_round_trip(&mut r, &mut rng(11));
    if r.failures > 0 {
        println!("{} criteria failed", r.failures);
        std::process::exit(1);
    }
}
