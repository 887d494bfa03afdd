//! The whole filtration pass in record order: politeness stripping, the
//! structural gate, then exact dedup, with one conservation report.

use core_model::{normalize_for_dedup, Dialogue, Tokenizer};

use crate::gate::{quality_gate, GateDecision, QualityBounds};
use crate::politeness::{strip_politeness, PolitenessPhrases};
use crate::report::FilterReport;

#[derive(Debug, Clone)]
pub struct FilterOutcome {
    pub kept: Vec<Dialogue>,
    /// Dropped dialogues with the rule that dropped them.
    pub rejects: Vec<(Dialogue, String)>,
    pub report: FilterReport,
}

pub fn filter_dialogues(
    dialogues: Vec<Dialogue>,
    min_rounds: usize,
    phrases: &PolitenessPhrases,
    bounds: &QualityBounds,
    tokenizer: &dyn Tokenizer,
) -> FilterOutcome {
    let mut report = FilterReport {
        input_count: dialogues.len() as u64,
        ..Default::default()
    };
    let mut kept = Vec::with_capacity(dialogues.len());
    let mut rejects = Vec::new();
    let mut seen = std::collections::HashSet::new();

    for dialogue in dialogues {
        let stripped = strip_politeness(&dialogue, min_rounds, phrases, tokenizer);
        report.record_edits("politeness sentences removed", stripped.removed_sentences);
        report.record_edits("politeness rounds removed", stripped.removed_rounds);
        if stripped.rejected_below_min {
            report.record_drop("below min rounds after strip");
            rejects.push((stripped.dialogue, "below min rounds after strip".into()));
            continue;
        }
        let dialogue = stripped.dialogue;
        match quality_gate(&dialogue, bounds) {
            GateDecision::Keep => {
                if seen.insert(normalize_for_dedup(&dialogue.transcript())) {
                    kept.push(dialogue);
                } else {
                    report.record_drop("duplicate");
                    rejects.push((dialogue, "duplicate".into()));
                }
            }
            GateDecision::Reject(reason) => {
                report.record_drop(&reason);
                rejects.push((dialogue, reason));
            }
        }
    }

    report.kept_count = kept.len() as u64;
    debug_assert!(report.is_conserved());
    FilterOutcome {
        kept,
        rejects,
        report,
    }
}
