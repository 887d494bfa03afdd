//! Structural quality gate applied to finished dialogues.

use chat_simulator::RoleExchangeDetector;
use core_model::{Dialogue, Role};

#[derive(Debug, Clone)]
pub struct QualityBounds<'a> {
    pub min_turn_tokens: usize,
    pub max_turn_tokens: usize,
    pub max_turns: usize,
    pub expected_opening: Option<&'a str>,
    pub detector: Option<&'a RoleExchangeDetector>,
}

impl Default for QualityBounds<'_> {
    fn default() -> Self {
        QualityBounds {
            min_turn_tokens: 1,
            max_turn_tokens: 4096,
            max_turns: core_model::DEFAULT_MAX_TURNS,
            expected_opening: None,
            detector: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GateDecision {
    Keep,
    Reject(String),
}

impl GateDecision {
    pub fn is_keep(&self) -> bool {
        matches!(self, GateDecision::Keep)
    }
}

/// First violated rule wins; the reason string doubles as the report key.
pub fn quality_gate(dialogue: &Dialogue, bounds: &QualityBounds) -> GateDecision {
    if dialogue.turns.len() < 2 || dialogue.turns.len() > bounds.max_turns {
        return GateDecision::Reject("turn count".into());
    }
    if dialogue.turns[0].role != Role::User {
        return GateDecision::Reject("first turn not user".into());
    }
    let mut expected = Role::User;
    for turn in &dialogue.turns {
        if turn.role != expected {
            return GateDecision::Reject("non-alternating roles".into());
        }
        expected = expected.other();
    }
    for turn in &dialogue.turns {
        if turn.content.trim().is_empty() || turn.token_count == 0 {
            return GateDecision::Reject("empty turn".into());
        }
    }
    for turn in &dialogue.turns {
        if turn.token_count < bounds.min_turn_tokens || turn.token_count > bounds.max_turn_tokens {
            return GateDecision::Reject("utterance length".into());
        }
    }
    if let Some(detector) = bounds.detector {
        // the opening is seed-derived, not simulated user behavior
        for turn in dialogue.turns.iter().skip(1) {
            if turn.role == Role::User && detector.detect(&turn.content) {
                return GateDecision::Reject("role exchange".into());
            }
        }
    }
    if let Some(opening) = bounds.expected_opening {
        if dialogue.turns[0].content != opening {
            return GateDecision::Reject("opening mismatch".into());
        }
    }
    GateDecision::Keep
}
