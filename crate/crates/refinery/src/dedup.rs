//! Exact-duplicate removal under the canonical normalization, first
//! occurrence wins. Near-duplicate detection (e.g. MinHash over shingles) is
//! deliberately out of scope; it would slot in here as an alternative key
//! function mapping each record to a bucket signature instead of its
//! normalized text.

use std::collections::HashSet;

use core_model::{normalize_for_dedup, Dialogue, OpeningLine};

use crate::report::FilterReport;

fn dedup_by_key<T>(items: Vec<T>, key: impl Fn(&T) -> String) -> (Vec<T>, FilterReport) {
    let mut report = FilterReport {
        input_count: items.len() as u64,
        ..Default::default()
    };
    let mut seen = HashSet::new();
    let mut kept = Vec::with_capacity(items.len());
    for item in items {
        if seen.insert(key(&item)) {
            kept.push(item);
        } else {
            report.record_drop("duplicate");
        }
    }
    report.kept_count = kept.len() as u64;
    debug_assert!(report.is_conserved());
    (kept, report)
}

pub fn dedup_openings(openings: Vec<OpeningLine>) -> (Vec<OpeningLine>, FilterReport) {
    dedup_by_key(openings, |o| normalize_for_dedup(&o.text))
}

pub fn dedup_dialogues(dialogues: Vec<Dialogue>) -> (Vec<Dialogue>, FilterReport) {
    dedup_by_key(dialogues, |d| normalize_for_dedup(&d.transcript()))
}
