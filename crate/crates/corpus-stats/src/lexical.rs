//! Dataset-level lexical diversity: the mean MTLD over every utterance.

use core_model::{Dialogue, Tokenizer};

use crate::error::StatsError;
use crate::mtld::mtld;

/// Utterances shorter than this many tokens are skipped (and counted).
pub const DEFAULT_MIN_MTLD_TOKENS: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct LexicalDiversity {
    pub mean: f64,
    pub utterances_scored: usize,
    pub utterances_skipped: usize,
}

pub fn lexical_diversity(
    dialogues: &[Dialogue],
    tokenizer: &dyn Tokenizer,
    threshold: f64,
    min_tokens: usize,
) -> Result<LexicalDiversity, StatsError> {
    if dialogues.is_empty() {
        return Err(StatsError::EmptyDataset);
    }
    let mut sum = 0.0;
    let mut scored = 0usize;
    let mut skipped = 0usize;
    for dialogue in dialogues {
        for turn in &dialogue.turns {
            let tokens = tokenizer.tokenize(&turn.content);
            if tokens.len() < min_tokens {
                skipped += 1;
                continue;
            }
            sum += mtld(&tokens, threshold)?;
            scored += 1;
        }
    }
    if scored == 0 {
        return Err(StatsError::AllUtterancesSkipped);
    }
    Ok(LexicalDiversity {
        mean: sum / scored as f64,
        utterances_scored: scored,
        utterances_skipped: skipped,
    })
}
