//! Dialogue and opening-line invariant checks. Violations are data, not
//! errors: callers get the full list of broken invariants by name.

use crate::tokenize::Tokenizer;
use crate::types::{Dialogue, OpeningLine, Role, Sector};

/// Default cap on stored turns (8 rounds).
pub const DEFAULT_MAX_TURNS: usize = 16;

/// One broken invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub invariant: &'static str,
    pub detail: String,
}

/// Result of validation: empty violation list means the record is well formed.
#[derive(Debug, Clone, Default)]
pub struct Validation {
    pub violations: Vec<Violation>,
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, invariant: &'static str, detail: impl Into<String>) {
        self.violations.push(Violation {
            invariant,
            detail: detail.into(),
        });
    }
}

/// Optional context for checks that need more than the record itself.
pub struct ValidationOptions<'a> {
    pub max_turns: usize,
    /// When known, the text of the source opening line; first-turn content must
    /// match it verbatim.
    pub expected_opening: Option<&'a str>,
    /// When supplied, stored token counts are recomputed and compared.
    pub tokenizer: Option<&'a dyn Tokenizer>,
}

impl Default for ValidationOptions<'_> {
    fn default() -> Self {
        ValidationOptions {
            max_turns: DEFAULT_MAX_TURNS,
            expected_opening: None,
            tokenizer: None,
        }
    }
}

/// Check every dialogue invariant and list each violated one by name.
pub fn validate_dialogue(dialogue: &Dialogue, opts: &ValidationOptions) -> Validation {
    let mut v = Validation::default();

    if dialogue.turns.is_empty() {
        v.push("turn_count_bounds", "dialogue has no turns");
        return v;
    }
    if dialogue.turns.len() < 2 || dialogue.turns.len() > opts.max_turns {
        v.push(
            "turn_count_bounds",
            format!(
                "expected 2..={} turns, found {}",
                opts.max_turns,
                dialogue.turns.len()
            ),
        );
    }

    if dialogue.turns[0].role != Role::User {
        v.push("first_turn_user", "first turn must be user");
    }

    let mut expected = dialogue.turns[0].role;
    for (i, turn) in dialogue.turns.iter().enumerate() {
        if turn.role != expected {
            v.push(
                "roles_alternate",
                format!("turn {i} has role {}, expected {}", turn.role, expected),
            );
            // Re-anchor so one slip is reported once, not for every later turn.
            expected = turn.role;
        }
        expected = expected.other();

        if turn.content.trim().is_empty() {
            v.push("non_empty_content", format!("turn {i} is empty"));
        }
        if let Some(tok) = opts.tokenizer {
            let recomputed = tok.count(&turn.content);
            if recomputed != turn.token_count {
                v.push(
                    "token_count_matches",
                    format!(
                        "turn {i} stores {} tokens, tokenizer counts {recomputed}",
                        turn.token_count
                    ),
                );
            }
        }
    }

    if let Some(opening) = opts.expected_opening {
        if dialogue.turns[0].content != opening {
            v.push("opening_matches", "first turn differs from opening line");
        }
    }

    v
}

/// Lineage stage names allowed per sector.
pub fn lineage_vocabulary(sector: Sector) -> &'static [&'static str] {
    match sector {
        Sector::WorldQuestions => &[
            "topic",
            "subtopic",
            "question",
            "expansion",
            "entity",
            "meta_question",
            "specific_question",
            "extended_question",
        ],
        Sector::CreationGeneration => &["material_type", "instruction", "refined"],
        Sector::MaterialAssistance => {
            &["material_type", "source_url", "instruction", "template_id"]
        }
    }
}

/// Opening-line invariants: non-empty text, non-empty lineage, stage names
/// drawn from the sector vocabulary.
pub fn validate_opening(opening: &OpeningLine) -> Validation {
    let mut v = Validation::default();
    if opening.text.trim().is_empty() {
        v.push("non_empty_text", "opening text is empty");
    }
    if opening.lineage.is_empty() {
        v.push("non_empty_lineage", "lineage is empty");
    }
    let vocab = lineage_vocabulary(opening.sector);
    for step in &opening.lineage {
        if !vocab.contains(&step.stage.as_str()) {
            v.push(
                "lineage_stage_vocabulary",
                format!(
                    "stage {:?} not allowed for sector {}",
                    step.stage, opening.sector
                ),
            );
        }
    }
    v
}
