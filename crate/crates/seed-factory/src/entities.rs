//! Sector-1 entity questions: meta questions per entity, specific questions
//! derived from each meta question, and extended questions that stay related
//! while wandering to distinct objects.

use std::path::Path;

use core_model::{normalize_for_dedup, LineageStep, OpeningLine, Sector};
use llm_gateway::ChatBackend;
use serde::{Deserialize, Serialize};

use crate::error::SeedError;
use crate::generate::{distinct_lines, question_like, shares_content_word};
use crate::prompts;

/// Inclusion cut-off for the frequency-ranked entity list.
pub const MAX_ENTITY_RANK: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntitySeed {
    pub entity_name: String,
    pub frequency_rank: u32,
}

/// How the specific/extended counts are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FanoutReading {
    /// Counts are per meta-question (multiplicative).
    PerMeta,
    /// Counts are totals per entity, split evenly across meta questions.
    PerEntity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntityFanout {
    pub meta: usize,
    pub specific: usize,
    pub extended: usize,
    pub reading: FanoutReading,
}

impl Default for EntityFanout {
    fn default() -> Self {
        EntityFanout {
            meta: 5,
            specific: 10,
            extended: 20,
            reading: FanoutReading::PerMeta,
        }
    }
}

/// Questions derived from one entity, grouped by the meta question they came
/// from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityQuestions {
    pub entity: EntitySeed,
    pub meta: Vec<String>,
    pub specific: Vec<Vec<String>>,
    pub extended: Vec<Vec<String>>,
}

impl EntityQuestions {
    pub fn total(&self) -> usize {
        self.meta.len()
            + self.specific.iter().map(Vec::len).sum::<usize>()
            + self.extended.iter().map(Vec::len).sum::<usize>()
    }

    /// Flatten into sector-1 opening lines with full lineage.
    pub fn into_openings(self) -> Vec<OpeningLine> {
        let mut out = Vec::with_capacity(self.total());
        for (i, meta) in self.meta.iter().enumerate() {
            out.push(OpeningLine::new(
                Sector::WorldQuestions,
                meta.clone(),
                vec![
                    LineageStep::new("entity", self.entity.entity_name.clone()),
                    LineageStep::new("meta_question", meta.clone()),
                ],
            ));
            for q in &self.specific[i] {
                out.push(OpeningLine::new(
                    Sector::WorldQuestions,
                    q.clone(),
                    vec![
                        LineageStep::new("entity", self.entity.entity_name.clone()),
                        LineageStep::new("meta_question", meta.clone()),
                        LineageStep::new("specific_question", q.clone()),
                    ],
                ));
            }
            for q in &self.extended[i] {
                out.push(OpeningLine::new(
                    Sector::WorldQuestions,
                    q.clone(),
                    vec![
                        LineageStep::new("entity", self.entity.entity_name.clone()),
                        LineageStep::new("meta_question", meta.clone()),
                        LineageStep::new("extended_question", q.clone()),
                    ],
                ));
            }
        }
        out
    }
}

/// Split a per-entity total evenly across `parts`, earlier parts taking the
/// remainder.
fn split_even(total: usize, parts: usize, index: usize) -> usize {
    let base = total / parts;
    let extra = total % parts;
    base + usize::from(index < extra)
}

/// Derive meta, specific, and extended questions for one entity. Extended
/// questions must share at least one content word with their meta question and
/// must not equal it.
pub async fn entity_questions(
    entity: &EntitySeed,
    fanout: &EntityFanout,
    backend: &dyn ChatBackend,
) -> Result<EntityQuestions, SeedError> {
    if entity.entity_name.trim().is_empty() {
        return Err(SeedError::InvalidArgument("entity name is empty".into()));
    }
    if fanout.meta == 0 {
        return Err(SeedError::InvalidArgument(
            "meta fan-out must be at least 1".into(),
        ));
    }

    let meta = distinct_lines(
        backend,
        fanout.meta,
        |missing| {
            prompts::render(
                prompts::ENTITY_META,
                &[("entity", &entity.entity_name), ("n", &missing.to_string())],
            )
        },
        question_like,
    )
    .await?;

    let mut specific = Vec::with_capacity(meta.len());
    let mut extended = Vec::with_capacity(meta.len());
    for (i, meta_q) in meta.iter().enumerate() {
        let (n_specific, n_extended) = match fanout.reading {
            FanoutReading::PerMeta => (fanout.specific, fanout.extended),
            FanoutReading::PerEntity => (
                split_even(fanout.specific, meta.len(), i),
                split_even(fanout.extended, meta.len(), i),
            ),
        };

        let batch_specific = if n_specific == 0 {
            Vec::new()
        } else {
            distinct_lines(
                backend,
                n_specific,
                |missing| {
                    prompts::render(
                        prompts::ENTITY_SPECIFIC,
                        &[
                            ("question", meta_q),
                            ("entity", &entity.entity_name),
                            ("n", &missing.to_string()),
                        ],
                    )
                },
                question_like,
            )
            .await?
        };

        let meta_key = normalize_for_dedup(meta_q);
        let batch_extended = if n_extended == 0 {
            Vec::new()
        } else {
            distinct_lines(
                backend,
                n_extended,
                |missing| {
                    prompts::render(
                        prompts::ENTITY_EXTENDED,
                        &[
                            ("entity", &entity.entity_name),
                            ("question", meta_q),
                            ("n", &missing.to_string()),
                        ],
                    )
                },
                |line| {
                    question_like(line)
                        && normalize_for_dedup(line) != meta_key
                        && shares_content_word(line, meta_q)
                },
            )
            .await?
        };

        specific.push(batch_specific);
        extended.push(batch_extended);
    }

    Ok(EntityQuestions {
        entity: entity.clone(),
        meta,
        specific,
        extended,
    })
}

/// Read a `rank<TAB>name` entity file, keeping ranks within the cut-off.
pub fn load_entities(path: &Path) -> Result<Vec<EntitySeed>, SeedError> {
    let raw = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (idx, line) in raw.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (rank, name) = line.split_once('\t').ok_or(SeedError::MalformedInput {
            line: idx + 1,
            reason: "expected rank<TAB>name".into(),
        })?;
        let rank: u32 = rank.trim().parse().map_err(|_| SeedError::MalformedInput {
            line: idx + 1,
            reason: format!("bad rank {rank:?}"),
        })?;
        if rank > MAX_ENTITY_RANK {
            tracing::warn!(rank, name, "entity beyond rank cut-off skipped");
            continue;
        }
        out.push(EntitySeed {
            entity_name: name.trim().to_string(),
            frequency_rank: rank,
        });
    }
    Ok(out)
}

/// The 100-entity sample shipped for tests and desk-scale runs.
pub fn sample_entities() -> Vec<EntitySeed> {
    const SAMPLE: &str = include_str!("../data/entities_sample.tsv");
    SAMPLE
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let (rank, name) = line.split_once('\t').expect("sample file is well formed");
            EntitySeed {
                entity_name: name.trim().to_string(),
                frequency_rank: rank.trim().parse().expect("sample ranks parse"),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use llm_gateway::MockBackend;

    fn mona_lisa() -> EntitySeed {
        EntitySeed {
            entity_name: "Mona Lisa".into(),
            frequency_rank: 10,
        }
    }

    #[tokio::test]
    async fn default_fanout_counts() {
        let backend = MockBackend::new(11);
        let result = entity_questions(&mona_lisa(), &EntityFanout::default(), &backend)
            .await
            .unwrap();
        assert_eq!(result.meta.len(), 5);
        assert_eq!(result.specific.iter().map(Vec::len).sum::<usize>(), 50);
        assert_eq!(result.extended.iter().map(Vec::len).sum::<usize>(), 100);
        assert_eq!(result.total(), 155);
        let openings = result.into_openings();
        assert_eq!(openings.len(), 155);
    }

    #[tokio::test]
    async fn per_entity_reading_totals() {
        let backend = MockBackend::new(11);
        let fanout = EntityFanout {
            reading: FanoutReading::PerEntity,
            ..Default::default()
        };
        let result = entity_questions(&mona_lisa(), &fanout, &backend)
            .await
            .unwrap();
        assert_eq!(result.meta.len(), 5);
        assert_eq!(result.specific.iter().map(Vec::len).sum::<usize>(), 10);
        assert_eq!(result.extended.iter().map(Vec::len).sum::<usize>(), 20);
    }

    #[tokio::test]
    async fn extended_questions_relate_to_their_meta() {
        let backend = MockBackend::new(11);
        let result = entity_questions(&mona_lisa(), &EntityFanout::default(), &backend)
            .await
            .unwrap();
        for (meta_q, batch) in result.meta.iter().zip(&result.extended) {
            for ext in batch {
                assert!(shares_content_word(ext, meta_q), "{ext:?} vs {meta_q:?}");
                assert_ne!(normalize_for_dedup(ext), normalize_for_dedup(meta_q));
            }
        }
    }

    #[tokio::test]
    async fn empty_entity_rejected() {
        let backend = MockBackend::new(11);
        let entity = EntitySeed {
            entity_name: "  ".into(),
            frequency_rank: 1,
        };
        assert!(matches!(
            entity_questions(&entity, &EntityFanout::default(), &backend).await,
            Err(SeedError::InvalidArgument(_))
        ));
    }

    #[test]
    fn sample_file_has_one_hundred_entities_in_rank() {
        let entities = sample_entities();
        assert_eq!(entities.len(), 100);
        assert!(entities.iter().all(|e| e.frequency_rank <= MAX_ENTITY_RANK));
    }

    #[test]
    fn split_even_distributes_remainder_forward() {
        let parts: Vec<usize> = (0..5).map(|i| split_even(12, 5, i)).collect();
        assert_eq!(parts, vec![3, 3, 2, 2, 2]);
        assert_eq!(parts.iter().sum::<usize>(), 12);
    }
}
