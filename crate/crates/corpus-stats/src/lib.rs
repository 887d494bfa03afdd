//! Dataset statistics over dialogue corpora: record counts, round and token
//! averages, MTLD lexical diversity, embedding-based topic diversity, and
//! judge-scored coherence, assembled into one report per dataset.

mod coherence;
mod diversity;
mod error;
mod ingest;
mod lexical;
mod mtld;
mod report;

pub use coherence::{coherence_over_sample, coherence_score, CoherenceOutcome};
pub use diversity::{mean_pairwise_cosine_distance, topic_diversity};
pub use error::StatsError;
pub use ingest::ingest_dialogues;
pub use lexical::{lexical_diversity, LexicalDiversity, DEFAULT_MIN_MTLD_TOKENS};
pub use mtld::{mtld, DEFAULT_MTLD_THRESHOLD};
pub use report::{dataset_report, render_report_table, DatasetReport, ReportOptions};
