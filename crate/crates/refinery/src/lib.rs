//! Post-generation filtration: strip scripted politeness from user turns,
//! reject structurally broken dialogues, and drop exact duplicates, with a
//! conservation report accounting for every record.

mod dedup;
mod gate;
mod pipeline;
mod politeness;
mod report;

pub use dedup::{dedup_dialogues, dedup_openings};
pub use gate::{quality_gate, GateDecision, QualityBounds};
pub use pipeline::{filter_dialogues, FilterOutcome};
pub use politeness::{segment_sentences, strip_politeness, PolitenessPhrases, StripOutcome};
pub use report::FilterReport;
