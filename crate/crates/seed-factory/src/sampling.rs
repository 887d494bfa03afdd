//! Seeded sampling of opening lines after exact-duplicate removal.

use core_model::{normalize_for_dedup, OpeningLine};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::error::SeedError;

/// Uniform sample of `n` openings without replacement from the deduplicated
/// pool. First occurrence wins dedup; output order is the seeded shuffle
/// order, stable for any given seed.
pub fn sample_openings(
    pool: &[OpeningLine],
    n: usize,
    seed: u64,
) -> Result<Vec<OpeningLine>, SeedError> {
    let mut seen = std::collections::HashSet::new();
    let mut deduped: Vec<&OpeningLine> = Vec::with_capacity(pool.len());
    for opening in pool {
        if seen.insert(normalize_for_dedup(&opening.text)) {
            deduped.push(opening);
        }
    }
    if n > deduped.len() {
        return Err(SeedError::SampleTooLarge {
            requested: n,
            available: deduped.len(),
        });
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    deduped.shuffle(&mut rng);
    Ok(deduped.into_iter().take(n).cloned().collect())
}
