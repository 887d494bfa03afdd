use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Per-run accounting: every input record is either kept or counted under
/// exactly one drop rule, so `kept + sum(drops) == input` always holds.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub input_count: u64,
    pub kept_count: u64,
    pub drops: BTreeMap<String, u64>,
    pub edits: BTreeMap<String, u64>,
}

impl FilterReport {
    pub fn dropped_total(&self) -> u64 {
        self.drops.values().sum()
    }

    pub fn record_drop(&mut self, rule: &str) {
        *self.drops.entry(rule.to_string()).or_default() += 1;
    }

    pub fn record_edits(&mut self, rule: &str, count: u64) {
        if count > 0 {
            *self.edits.entry(rule.to_string()).or_default() += count;
        }
    }

    pub fn is_conserved(&self) -> bool {
        self.kept_count + self.dropped_total() == self.input_count
    }
}
