//! Random typed closed terms for the dynamics harnesses.
//!
//! Terms are grown from a small set of typing-rule inversions: a linear
//! channel whose two ends are placed in parallel (either carrying a unit or
//! delegating a pending output capability), and a replicated server with
//! clients. Each process carries a list of pending `↑1` capabilities it must
//! discharge. Candidates are kept only when synthesis types them, so the
//! corpus is typed by construction and by check.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::mell::{Budget, Profile};
use crate::syntax::{Behaviour, Capability, Formula, Kind, Name, Process};
use crate::typing::synthesize;

#[derive(Debug, Clone)]
pub struct CorpusTerm {
    pub env: Formula,
    pub process: Process,
}

struct Grower {
    rng: ChaCha8Rng,
    next: usize,
}

impl Grower {
    fn name(&mut self, base: &str) -> Name {
        self.next += 1;
        Name::new(format!("{base}{}", self.next))
    }

    fn split(&mut self, obs: Vec<Name>) -> (Vec<Name>, Vec<Name>) {
        let (mut a, mut b) = (vec![], vec![]);
        for o in obs {
            if self.rng.gen_bool(0.5) {
                a.push(o)
            } else {
                b.push(o)
            }
        }
        (a, b)
    }

    fn finish(obs: Vec<Name>) -> Process {
        Process::par_all(obs.into_iter().map(|o| Process::output(o, vec![], Process::Nop)))
    }

    fn grow(&mut self, mut obs: Vec<Name>, servers: &[Name], fuel: usize) -> Process {
        if fuel == 0 || self.rng.gen_bool(0.15) {
            return Self::finish(obs);
        }
        let signal = Behaviour::Cap(Capability::output(Behaviour::One));
        let fuel = fuel - 1;
        match self.rng.gen_range(0..6) {
            // a fresh linear channel: one side owes the output, the other waits
            0 | 5 => {
                let c = self.name("c");
                let (mut a, b) = self.split(obs);
                a.push(c.clone());
                let owe = self.grow(a, servers, fuel / 2);
                let recv = Process::input(c.clone(), vec![], self.grow(b, servers, fuel / 2));
                Process::new_chan(c, Behaviour::One, Kind::Lin, Process::par(owe, recv))
            }
            // discharge one capability, then continue
            4 if !obs.is_empty() => {
                let o = obs.remove(self.rng.gen_range(0..obs.len()));
                Process::output(o, vec![], self.grow(obs, servers, fuel))
            }
            // delegate a pending capability
            1 | 2 if !obs.is_empty() => {
                let i = self.rng.gen_range(0..obs.len());
                let w = obs.remove(i);
                let c = self.name("c");
                let x = self.name("x");
                let (a, mut b) = self.split(obs);
                b.push(x.clone());
                let send = Process::output(c.clone(), vec![w], self.grow(a, servers, fuel / 2));
                let recv = Process::input(c.clone(), vec![x], self.grow(b, servers, fuel / 2));
                let (send, recv) = if self.rng.gen_bool(0.5) { (send, recv) } else { (recv, send) };
                Process::new_chan(c, signal, Kind::Lin, Process::par(send, recv))
            }
            // call a server and wait for its answer
            3 if !servers.is_empty() => {
                let s = servers.choose(&mut self.rng).unwrap().clone();
                let r = self.name("r");
                let call = Process::output(s, vec![r.clone()], Process::Nop);
                let wait = Process::input(r.clone(), vec![], self.grow(obs, servers, fuel));
                Process::new_chan(r, Behaviour::One, Kind::Lin, Process::par(call, wait))
            }
            // a replicated server answering on the name it receives
            _ if servers.len() < 2 => {
                let s = self.name("s");
                let k = self.name("k");
                let server = Process::rep_input(s.clone(), vec![k.clone()], Process::output(k, vec![], Process::Nop));
                let mut inner = servers.to_vec();
                inner.push(s.clone());
                let body = self.grow(obs, &inner, fuel);
                Process::new_chan(s, signal, Kind::Omega, Process::par(server, body))
            }
            _ => Self::finish(obs),
        }
    }
}

fn has_new(p: &Process, kind: Kind) -> bool {
    match p {
        Process::Nop => false,
        Process::In { body, .. } | Process::RepIn { body, .. } => has_new(body, kind),
        Process::Out { cont, .. } => has_new(cont, kind),
        Process::Par(a, b) => has_new(a, kind) || has_new(b, kind),
        Process::New { kind: k, body, .. } => *k == kind || has_new(body, kind),
    }
}

/// `count` closed terms of size at most `max_size`, typed under `profile`.
/// Every term has a τ-step. Deterministic in `seed`. Both kinds of channel creation appear.
pub fn generate_corpus(seed: u64, count: usize, max_size: usize, profile: Profile, budget: Budget) -> Vec<CorpusTerm> {
    let mut g = Grower { rng: ChaCha8Rng::seed_from_u64(seed), next: 0 };
    let mut out: Vec<CorpusTerm> = Vec::new();
    let (mut lin, mut omega) = (false, false);
    let mut attempts = 0;
    while out.len() < count && attempts < count * 400 {
        attempts += 1;
        let fuel = g.rng.gen_range(1..8);
        let p = g.grow(vec![], &[], fuel);
        if p.size() > max_size || super::tau_steps(&p).is_empty() || out.iter().any(|t| t.process.alpha_eq(&p)) {
            continue;
        }
        // keep room for both kinds of channel creation
        let (l, w) = (has_new(&p, Kind::Lin), has_new(&p, Kind::Omega));
        if out.len() + 1 == count && !(lin || l) | !(omega || w) {
            continue;
        }
        let Ok(o) = synthesize(&p, None, profile, budget) else { continue };
        let Some(d) = o.derivation() else { continue };
        lin |= l;
        omega |= w;
        out.push(CorpusTerm { env: d.env().clone(), process: p });
    }
    out
}
