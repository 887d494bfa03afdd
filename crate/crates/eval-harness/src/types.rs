use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::EvalError;

/// One evaluation question with the answers each model gave it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalItem {
    pub id: String,
    pub category: String,
    pub question: String,
    /// model name -> answer text
    #[serde(default)]
    pub answers: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictMode {
    Pairwise,
    Independent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelScore {
    pub model: String,
    pub score: u8,
}

/// Parsed judge result with scores attributed to models (not to presentation
/// slots) and the presentation order preserved for audit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JudgeVerdict {
    pub item_id: String,
    pub category: String,
    pub mode: VerdictMode,
    pub scores: Vec<ModelScore>,
    /// For pairwise verdicts: the models shown as Assistant 1 and Assistant 2.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presented_order: Option<[String; 2]>,
    pub rationale: String,
}

impl JudgeVerdict {
    pub fn score_for(&self, model: &str) -> Option<u8> {
        self.scores
            .iter()
            .find(|s| s.model == model)
            .map(|s| s.score)
    }
}

/// Read an evaluation-set file: one `{"id", "category", "question"}` object
/// per line.
pub fn load_eval_items(path: &Path) -> Result<Vec<EvalItem>, EvalError> {
    #[derive(Deserialize)]
    struct Row {
        id: String,
        category: String,
        question: String,
    }
    let raw = std::fs::read_to_string(path)?;
    let mut items = Vec::new();
    for (idx, line) in raw.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: Row = serde_json::from_str(line).map_err(|e| EvalError::MalformedInput {
            line: idx + 1,
            reason: e.to_string(),
        })?;
        items.push(EvalItem {
            id: row.id,
            category: row.category,
            question: row.question,
            answers: BTreeMap::new(),
        });
    }
    Ok(items)
}

/// Read one model's answers (`{"item_id", "answer"}` per line) into the items.
pub fn load_answers(items: &mut [EvalItem], model: &str, path: &Path) -> Result<usize, EvalError> {
    #[derive(Deserialize)]
    struct Row {
        item_id: String,
        answer: String,
    }
    let raw = std::fs::read_to_string(path)?;
    let mut loaded = 0;
    for (idx, line) in raw.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: Row = serde_json::from_str(line).map_err(|e| EvalError::MalformedInput {
            line: idx + 1,
            reason: e.to_string(),
        })?;
        if let Some(item) = items.iter_mut().find(|i| i.id == row.item_id) {
            item.answers.insert(model.to_string(), row.answer);
            loaded += 1;
        } else {
            tracing::warn!(item_id = %row.item_id, "answer for unknown item ignored");
        }
    }
    Ok(loaded)
}
