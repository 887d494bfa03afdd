//! Judge-scored coherence on a 1-10 scale, sampled over the dataset.

use core_model::Dialogue;
use llm_gateway::{ChatBackend, ChatMessage, ChatRequest};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use eval_harness::parse_score;

use crate::error::StatsError;

const COHERENCE_TEMPLATE: &str = include_str!("../data/coherence_prompt.txt");
const RE_ASKS: usize = 2;
const FORMAT_REMINDER: &str =
    "Please reply again with exactly the format \"Score: [an integer number between 1 and 10]\".";

fn render_coherence_prompt(dialogue: &Dialogue) -> String {
    let mut lines: Vec<String> = COHERENCE_TEMPLATE.lines().map(str::to_string).collect();
    let pos = lines
        .iter()
        .position(|l| l == "[The Start of the Conversation]")
        .expect("template has start marker");
    let transcript = dialogue.transcript();
    for (offset, line) in transcript.lines().enumerate() {
        lines.insert(pos + 1 + offset, line.to_string());
    }
    lines.join("\n")
}

/// Score one dialogue's coherence. `Ok(None)` means the judge reply stayed
/// unparseable through the retries and the record should be skipped.
pub async fn coherence_score(
    dialogue: &Dialogue,
    judge: &dyn ChatBackend,
) -> Result<Option<u8>, StatsError> {
    let mut messages = vec![ChatMessage::user(render_coherence_prompt(dialogue))];
    for _ in 0..=RE_ASKS {
        let request = ChatRequest::new(messages.clone(), 0.2, 512, judge.model_name())?;
        let reply = judge.complete(&request).await?;
        if let Some(score) = parse_score(&reply) {
            return Ok(Some(score));
        }
        tracing::debug!("unparseable coherence reply, re-asking");
        messages.push(ChatMessage::assistant(reply));
        messages.push(ChatMessage::user(FORMAT_REMINDER.to_string()));
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceOutcome {
    pub mean: f64,
    pub scored: usize,
    pub skipped: usize,
}

/// Mean coherence over a seeded sample (canonical id order before sampling).
pub async fn coherence_over_sample(
    dialogues: &[Dialogue],
    sample_n: usize,
    seed: u64,
    judge: &dyn ChatBackend,
) -> Result<CoherenceOutcome, StatsError> {
    if dialogues.is_empty() {
        return Err(StatsError::EmptyDataset);
    }
    let mut sorted: Vec<&Dialogue> = dialogues.iter().collect();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    sorted.shuffle(&mut rng);
    sorted.truncate(sample_n.min(sorted.len()).max(1));

    let mut sum = 0u64;
    let mut scored = 0usize;
    let mut skipped = 0usize;
    for dialogue in sorted {
        match coherence_score(dialogue, judge).await? {
            Some(score) => {
                sum += score as u64;
                scored += 1;
            }
            None => skipped += 1,
        }
    }
    if scored == 0 {
        return Err(StatsError::AllUtterancesSkipped);
    }
    Ok(CoherenceOutcome {
        mean: sum as f64 / scored as f64,
        scored,
        skipped,
    })
}
