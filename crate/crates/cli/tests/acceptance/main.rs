//! Acceptance run: one pass/fail line per criterion, each checked against
//! oracles written here rather than the library's own helpers.

mod cli;
mod creature;
mod forcing;
mod kernel;
mod tree;

use std::process::ExitCode;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

const CRITERIA: [Criterion; 10] = [
    Criterion {
        id: 1,
        name: "ord-collapse facts",
        budget: Some(Duration::from_secs(60)),
        run: kernel::collapse_facts,
    },
    Criterion {
        id: 2,
        name: "labeled collapse round-trip",
        budget: None,
        run: kernel::labeled_roundtrip,
    },
    Criterion {
        id: 3,
        name: "ordclos minimality",
        budget: None,
        run: kernel::ordclos_minimality,
    },
    Criterion {
        id: 4,
        name: "forcing theorem and semantic forcing",
        budget: Some(Duration::from_secs(300)),
        run: forcing::forcing_theorem,
    },
    Criterion {
        id: 5,
        name: "modified vs classical divergence",
        budget: None,
        run: forcing::divergence,
    },
    Criterion {
        id: 6,
        name: "creature exhaustion",
        budget: Some(Duration::from_secs(300)),
        run: creature::exhaustion,
    },
    Criterion {
        id: 7,
        name: "halving incompatibility",
        budget: None,
        run: creature::halving_pair,
    },
    Criterion {
        id: 8,
        name: "pure decision vs brute force",
        budget: None,
        run: creature::pure_decision,
    },
    Criterion {
        id: 9,
        name: "tree fronts",
        budget: Some(Duration::from_secs(60)),
        run: tree::fronts,
    },
    Criterion {
        id: 10,
        name: "cli determinism",
        budget: None,
        run: cli::determinism,
    },
];

fn main() -> ExitCode {
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for c in CRITERIA.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let outcome = match (outcome, c.budget) {
            (Ok(_), Some(b)) if took > b => Err(format!("took {took:.1?}, budget {b:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {} ({took:.1?}): {detail}", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {} ({took:.1?}): {why}", c.id, c.name);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

/// Counts checks and keeps the first failure.
#[derive(Default)]
pub struct Count {
    pub checks: usize,
    first: Option<String>,
    failures: usize,
}

impl Count {
    pub fn check(&mut self, ok: bool, why: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(why());
            }
        }
    }

    pub fn finish(self, what: impl Into<String>) -> Outcome {
        let what = what.into();
        match self.first {
            None => Ok(format!("{what}; {} checks, 0 failures", self.checks)),
            Some(f) => Err(format!(
                "{what}; {} of {} checks failed; first: {f}",
                self.failures, self.checks
            )),
        }
    }
}
