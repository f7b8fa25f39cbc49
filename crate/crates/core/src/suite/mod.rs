//! Invariant suites over exhaustive small populations, summarized as report
//! entries (one per invariant family).

pub mod creature;
pub mod forcing;
pub mod kernel;
pub mod tree;

use crate::report::Entry;

pub const SUITES: [&str; 5] = ["kernel", "forcing", "creature", "tree", "all"];

/// Exhaustion bound, randomization seed and carrier cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub size: usize,
    pub seed: u64,
    pub max_carrier: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            size: 3,
            seed: 0,
            max_carrier: 128,
        }
    }
}

/// Counts instances and failures of one invariant, keeping the first failure.
#[derive(Clone, Debug)]
pub struct Tally {
    check: String,
    instance: String,
    pub total: usize,
    pub failures: usize,
    first: Option<String>,
}

impl Tally {
    pub fn new(check: impl Into<String>, instance: impl Into<String>) -> Self {
        Tally {
            check: check.into(),
            instance: instance.into(),
            total: 0,
            failures: 0,
            first: None,
        }
    }

    pub fn record(&mut self, r: Result<(), String>) {
        self.total += 1;
        if let Err(w) = r {
            self.failures += 1;
            self.first.get_or_insert(w);
        }
    }

    pub fn ok(&self) -> bool {
        self.failures == 0
    }

    pub fn entry(&self) -> Entry {
        let mut w = format!("{} instances, {} failures", self.total, self.failures);
        if let Some(f) = &self.first {
            w.push_str(&format!("; first: {f}"));
        }
        Entry::new(self.check.clone(), self.instance.clone(), self.ok()).with_witness(w)
    }
}

/// Runs the named suite.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Vec<Entry>, String> {
    Ok(match name {
        "kernel" => kernel::run(cfg),
        "forcing" => forcing::run(cfg),
        "creature" => creature::run(cfg),
        "tree" => tree::run(cfg),
        "all" => {
            let mut out = kernel::run(cfg);
            out.extend(forcing::run(cfg));
            out.extend(creature::run(cfg));
            out.extend(tree::run(cfg));
            out
        }
        other => return Err(format!("unknown suite `{other}` (expected one of {})", SUITES.join(", "))),
    })
}
