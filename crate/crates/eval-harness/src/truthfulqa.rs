//! True/false judgment runner: for each answer candidate the model is asked
//! whether it is true or false, and accuracy is the fraction judged correctly.
//! Unparseable replies count as incorrect and are reported.

use std::path::Path;

use llm_gateway::{ChatBackend, ChatMessage, ChatRequest};
use serde::{Deserialize, Serialize};

use crate::error::EvalError;

const TRUTHFULQA_TEMPLATE: &str = include_str!("../data/truthfulqa_prompt.txt");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthfulQaItem {
    pub question: String,
    pub answer: String,
    pub label: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruthfulQaReport {
    pub total: usize,
    pub correct: usize,
    pub unparseable: usize,
    pub accuracy: f64,
}

pub fn render_truthfulqa_prompt(item: &TruthfulQaItem) -> String {
    TRUTHFULQA_TEMPLATE
        .replace("{question}", &item.question)
        .replace("{answer}", &item.answer)
}

/// First standalone true/false word in the reply, case-insensitive.
fn parse_true_false(reply: &str) -> Option<bool> {
    for word in reply.split(|c: char| !c.is_alphanumeric()) {
        match word.to_lowercase().as_str() {
            "true" => return Some(true),
            "false" => return Some(false),
            _ => {}
        }
    }
    None
}

/// Run the whole candidate list against the model.
pub async fn truthfulqa_mc(
    items: &[TruthfulQaItem],
    model_backend: &dyn ChatBackend,
) -> Result<TruthfulQaReport, EvalError> {
    if items.is_empty() {
        return Err(EvalError::InvalidInput("item list is empty".into()));
    }
    let mut correct = 0usize;
    let mut unparseable = 0usize;
    for item in items {
        let request = ChatRequest::new(
            vec![ChatMessage::user(render_truthfulqa_prompt(item))],
            0.0,
            16,
            model_backend.model_name(),
        )?;
        let reply = model_backend.complete(&request).await?;
        match parse_true_false(&reply) {
            Some(verdict) if verdict == item.label => correct += 1,
            Some(_) => {}
            None => unparseable += 1,
        }
    }
    Ok(TruthfulQaReport {
        total: items.len(),
        correct,
        unparseable,
        accuracy: correct as f64 / items.len() as f64,
    })
}

/// Read `{"question", "answer", "label"}` lines from a benchmark export.
pub fn load_truthfulqa_items(path: &Path) -> Result<Vec<TruthfulQaItem>, EvalError> {
    let raw = std::fs::read_to_string(path)?;
    let mut items = Vec::new();
    for (idx, line) in raw.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let item: TruthfulQaItem =
            serde_json::from_str(line).map_err(|e| EvalError::MalformedInput {
                line: idx + 1,
                reason: e.to_string(),
            })?;
        items.push(item);
    }
    Ok(items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use llm_gateway::MockBackend;

    fn items(n: usize) -> Vec<TruthfulQaItem> {
        (0..n)
            .map(|i| TruthfulQaItem {
                question: format!("Question {i}?"),
                answer: format!("Candidate {i}."),
                label: i % 2 == 0,
            })
            .collect()
    }

    #[tokio::test]
    async fn always_true_model_scores_half_on_balanced_labels() {
        let backend = MockBackend::new(1);
        backend.add_rule("true or false", "true");
        let report = truthfulqa_mc(&items(100), &backend).await.unwrap();
        assert_eq!(report.total, 100);
        assert_eq!(report.correct, 50);
        assert!((report.accuracy - 0.5).abs() < 1e-12);
        assert_eq!(report.unparseable, 0);
    }

    #[tokio::test]
    async fn empty_items_rejected() {
        let backend = MockBackend::new(1);
        assert!(matches!(
            truthfulqa_mc(&[], &backend).await,
            Err(EvalError::InvalidInput(_))
        ));
    }

    #[tokio::test]
    async fn unparseable_counts_as_incorrect() {
        let backend = MockBackend::new(1);
        for _ in 0..4 {
            backend.push_script("I cannot decide.");
        }
        let report = truthfulqa_mc(&items(4), &backend).await.unwrap();
        assert_eq!(report.correct, 0);
        assert_eq!(report.unparseable, 4);
        assert_eq!(report.accuracy, 0.0);
    }

    #[test]
    fn true_false_parsing() {
        assert_eq!(parse_true_false("True."), Some(true));
        assert_eq!(
            parse_true_false("I think it is false, overall"),
            Some(false)
        );
        assert_eq!(parse_true_false("Truthfully, yes"), None);
        assert_eq!(parse_true_false(""), None);
    }
}
