//! Judge-model evaluation harness: pairwise answer comparison with seeded
//! presentation-order randomization, independent 1-10 scoring, win/tie/lose
//! tallies with per-category score statistics, and a true/false benchmark
//! runner.

mod error;
mod judge;
mod parse;
mod tally;
mod templates;
mod truthfulqa;
mod types;

pub use error::EvalError;
pub use judge::{
    attribute_scores, independent_score, pairwise_compare, presentation_coin, JudgeOutcome,
};
pub use parse::{parse_pair_scores, parse_score};
pub use tally::{render_tally_table, tally, PairTally, ScoreStats, Tally};
pub use templates::{
    render_comparison, render_independent, COMPARISON_TEMPLATE, INDEPENDENT_TEMPLATE,
};
pub use truthfulqa::{load_truthfulqa_items, truthfulqa_mc, TruthfulQaItem, TruthfulQaReport};
pub use types::{load_answers, load_eval_items, EvalItem, JudgeVerdict, ModelScore, VerdictMode};
