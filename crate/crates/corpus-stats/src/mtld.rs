//! Bidirectional MTLD: mean length of sequential token runs whose type-token
//! ratio stays above the threshold, averaged over a forward and a backward
//! pass. Tokens are casefolded before type counting.

use std::collections::HashSet;

use crate::error::StatsError;

/// The standard threshold from the metric's source.
pub const DEFAULT_MTLD_THRESHOLD: f64 = 0.72;

/// Compute the bidirectional MTLD score of a token sequence.
///
/// Each pass scans the sequence accumulating a type-token ratio; whenever the
/// ratio drops to the threshold or below, one full factor is counted and the
/// scan state resets. The remainder contributes a partial factor of
/// `(1 - TTR_remainder) / (1 - threshold)`, with an empty remainder counting
/// as TTR 1. A pass with zero total factors scores the token count itself,
/// keeping the metric finite for short hyper-diverse inputs.
pub fn mtld(tokens: &[String], threshold: f64) -> Result<f64, StatsError> {
    if tokens.is_empty() {
        return Err(StatsError::EmptyTokens);
    }
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(StatsError::InvalidThreshold(threshold));
    }
    let forward = pass(tokens.iter(), tokens.len(), threshold);
    let backward = pass(tokens.iter().rev(), tokens.len(), threshold);
    Ok((forward + backward) / 2.0)
}

fn pass<'a>(tokens: impl Iterator<Item = &'a String>, total: usize, threshold: f64) -> f64 {
    let mut factors = 0.0f64;
    let mut types: HashSet<String> = HashSet::new();
    let mut segment_len = 0usize;

    for token in tokens {
        segment_len += 1;
        types.insert(token.to_lowercase());
        let ttr = types.len() as f64 / segment_len as f64;
        if ttr <= threshold {
            factors += 1.0;
            types.clear();
            segment_len = 0;
        }
    }

    let remainder_ttr = if segment_len == 0 {
        1.0
    } else {
        types.len() as f64 / segment_len as f64
    };
    factors += (1.0 - remainder_ttr) / (1.0 - threshold);

    if factors == 0.0 {
        return total as f64;
    }
    total as f64 / factors
}
