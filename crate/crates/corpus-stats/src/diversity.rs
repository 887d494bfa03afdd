//! Topic diversity: mean cosine distance over every unordered pair of sampled
//! record embeddings, computed exactly (no approximation).

use core_model::Dialogue;
use llm_gateway::{ChatBackend, EmbeddingVector};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::error::StatsError;

const EMBED_BATCH: usize = 256;

/// Exact mean of `1 - cosine` over all unordered pairs, accumulated in
/// row-major order so results are reproducible bit for bit.
pub fn mean_pairwise_cosine_distance(vectors: &[EmbeddingVector]) -> Result<f64, StatsError> {
    if vectors.len() < 2 {
        return Err(StatsError::TooFewRecords {
            needed: 2,
            found: vectors.len(),
        });
    }
    let dim = vectors[0].dimension();
    for v in vectors {
        if v.dimension() != dim {
            return Err(StatsError::RaggedEmbeddings);
        }
        if v.norm() < 1e-12 {
            return Err(StatsError::DegenerateEmbedding);
        }
    }
    let mut sum = 0.0;
    let mut pairs = 0u64;
    for i in 0..vectors.len() {
        for j in (i + 1)..vectors.len() {
            sum += 1.0 - vectors[i].cosine_similarity(&vectors[j]);
            pairs += 1;
        }
    }
    Ok(sum / pairs as f64)
}

/// Seeded sample of the dataset, one embedding per record over its full
/// concatenated text, then the exact pairwise mean. Records are canonically
/// sorted by id before sampling so dataset order does not matter.
pub async fn topic_diversity(
    dialogues: &[Dialogue],
    sample_n: usize,
    seed: u64,
    backend: &dyn ChatBackend,
) -> Result<f64, StatsError> {
    if dialogues.len() < 2 {
        return Err(StatsError::TooFewRecords {
            needed: 2,
            found: dialogues.len(),
        });
    }
    let mut sorted: Vec<&Dialogue> = dialogues.iter().collect();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    sorted.shuffle(&mut rng);
    sorted.truncate(sample_n.max(2).min(sorted.len()));

    let texts: Vec<String> = sorted.iter().map(|d| full_text(d)).collect();
    let mut vectors = Vec::with_capacity(texts.len());
    for chunk in texts.chunks(EMBED_BATCH) {
        vectors.extend(backend.embed(chunk).await?);
    }
    mean_pairwise_cosine_distance(&vectors)
}

fn full_text(dialogue: &Dialogue) -> String {
    dialogue
        .turns
        .iter()
        .map(|t| t.content.as_str())
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use core_model::{Role, Sector, Turn, WhitespaceTokenizer};
    use llm_gateway::MockBackend;

    fn dialogue(text: &str) -> Dialogue {
        Dialogue::new(
            Sector::WorldQuestions,
            "op",
            "p",
            "mock",
            vec![
                Turn::new(Role::User, text, &WhitespaceTokenizer),
                Turn::new(Role::Assistant, "Reply.", &WhitespaceTokenizer),
            ],
        )
    }

    #[tokio::test]
    async fn diversity_is_order_invariant() {
        let backend = MockBackend::new(4);
        let mut dialogues: Vec<Dialogue> = (0..10)
            .map(|i| dialogue(&format!("Question {i}?")))
            .collect();
        let a = topic_diversity(&dialogues, 10, 1, &backend).await.unwrap();
        dialogues.reverse();
        let b = topic_diversity(&dialogues, 10, 1, &backend).await.unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
        assert!((0.0..=2.0).contains(&a));
    }

    #[tokio::test]
    async fn sampling_caps_at_dataset_size() {
        let backend = MockBackend::new(4);
        let dialogues: Vec<Dialogue> = (0..5)
            .map(|i| dialogue(&format!("Question {i}?")))
            .collect();
        let full = topic_diversity(&dialogues, 10_000, 1, &backend)
            .await
            .unwrap();
        assert!((0.0..=2.0).contains(&full));
    }

    #[tokio::test]
    async fn single_record_rejected() {
        let backend = MockBackend::new(4);
        let one = vec![dialogue("Only one?")];
        assert!(matches!(
            topic_diversity(&one, 10, 1, &backend).await,
            Err(StatsError::TooFewRecords { .. })
        ));
    }
}
