//! Check results and their text/JSON rendering.

use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "ordforge-report/1";

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Entry {
    pub check: String,
    pub instance: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Entry {
    pub fn new(check: impl Into<String>, instance: impl Into<String>, holds: bool) -> Self {
        Entry {
            check: check.into(),
            instance: instance.into(),
            holds,
            witness: None,
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    /// `holds` from a `Result`, with the error as witness.
    pub fn from_result(
        check: impl Into<String>,
        instance: impl Into<String>,
        r: Result<(), String>,
    ) -> Self {
        match r {
            Ok(()) => Entry::new(check, instance, true),
            Err(w) => Entry::new(check, instance, false).with_witness(w),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new(entries: Vec<Entry>) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            entries,
        }
    }

    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| !e.holds)
    }

    /// One line per entry, in the given order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(if e.holds { "ok   " } else { "FAIL " });
            out.push_str(&e.check);
            if !e.instance.is_empty() {
                out.push_str(" [");
                out.push_str(&e.instance);
                out.push(']');
            }
            if let Some(w) = &e.witness {
                out.push_str(": ");
                out.push_str(w);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
