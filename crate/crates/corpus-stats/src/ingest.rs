//! Dialogue ingestion for stats runs. Accepts this pipeline's record files and
//! the common external shard shape of `{"id": ..., "data": ["user text",
//! "assistant text", ...]}` with strictly alternating utterances.

use std::path::Path;

use core_model::{deserialize_record, Dialogue, Record, Role, Sector, Tokenizer, Turn};
use serde::Deserialize;

use crate::error::StatsError;

#[derive(Deserialize)]
struct ShardRow {
    #[serde(default)]
    id: Option<serde_json::Value>,
    data: Vec<String>,
}

/// Read a dialogue file in either supported format. Token counts for external
/// shards are computed with the supplied tokenizer.
pub fn ingest_dialogues(
    path: &Path,
    tokenizer: &dyn Tokenizer,
) -> Result<Vec<Dialogue>, StatsError> {
    let raw = std::fs::read_to_string(path)?;
    let mut dialogues = Vec::new();
    for (idx, line) in raw.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        if let Ok(Record::Dialogue(d)) = deserialize_record(line, idx + 1) {
            dialogues.push(d);
            continue;
        }
        let row: ShardRow = serde_json::from_str(line).map_err(|e| StatsError::MalformedInput {
            line: idx + 1,
            reason: format!("neither a dialogue record nor an id/data shard row: {e}"),
        })?;
        if row.data.len() < 2 {
            tracing::debug!(
                line = idx + 1,
                "shard row with fewer than two utterances skipped"
            );
            continue;
        }
        let turns: Vec<Turn> = row
            .data
            .iter()
            .enumerate()
            .map(|(i, content)| {
                let role = if i % 2 == 0 {
                    Role::User
                } else {
                    Role::Assistant
                };
                Turn::new(role, content.clone(), tokenizer)
            })
            .collect();
        let fingerprint = match &row.id {
            Some(v) => format!("ingested(id={v})"),
            None => "ingested".to_string(),
        };
        dialogues.push(Dialogue::new(
            Sector::WorldQuestions,
            "external",
            "external",
            fingerprint,
            turns,
        ));
    }
    Ok(dialogues)
}
