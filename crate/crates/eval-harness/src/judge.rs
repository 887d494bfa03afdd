//! The two judging operations. Presentation order is a seeded per-item coin;
//! parse failures earn two re-asks with a format reminder before the item is
//! marked unjudged.

use core_model::seed_split;
use llm_gateway::{ChatBackend, ChatMessage, ChatRequest};

use crate::error::EvalError;
use crate::parse::{parse_pair_scores, parse_score};
use crate::templates::{render_comparison, render_independent};
use crate::types::{EvalItem, JudgeVerdict, ModelScore, VerdictMode};

const JUDGE_TEMPERATURE: f64 = 0.2;
const JUDGE_MAX_TOKENS: u32 = 1024;
const RE_ASKS: usize = 2;

const PAIR_FORMAT_REMINDER: &str =
    "Please reply again. The first line must contain only two integers between 1 and 10 separated by a single space.";
const SCORE_FORMAT_REMINDER: &str =
    "Please reply again with exactly the format \"Score: [an integer number between 1 and 10]\".";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JudgeOutcome {
    Judged(JudgeVerdict),
    Unjudged { item_id: String, reason: String },
}

impl JudgeOutcome {
    pub fn verdict(self) -> Option<JudgeVerdict> {
        match self {
            JudgeOutcome::Judged(v) => Some(v),
            JudgeOutcome::Unjudged { .. } => None,
        }
    }
}

/// The seeded per-item presentation coin: true puts `model_a` in the
/// Assistant 1 slot.
pub fn presentation_coin(seed: u64, item_id: &str) -> bool {
    seed_split(seed, &format!("presentation-order:{item_id}")) & 1 == 0
}

/// Map slot scores (Assistant 1, Assistant 2) back to the models that filled
/// those slots.
pub fn attribute_scores(presented_order: &[String; 2], slot_scores: (u8, u8)) -> Vec<ModelScore> {
    vec![
        ModelScore {
            model: presented_order[0].clone(),
            score: slot_scores.0,
        },
        ModelScore {
            model: presented_order[1].clone(),
            score: slot_scores.1,
        },
    ]
}

fn answer_of<'a>(item: &'a EvalItem, model: &str) -> Result<&'a str, EvalError> {
    item.answers
        .get(model)
        .map(String::as_str)
        .ok_or_else(|| EvalError::MissingAnswer {
            item_id: item.id.clone(),
            model: model.to_string(),
        })
}

/// Ask the judge, re-asking with a reminder appended to the conversation on
/// parse failure. Returns the accepted raw reply and the parsed value.
async fn ask_with_retries<T>(
    judge: &dyn ChatBackend,
    prompt: String,
    reminder: &str,
    parse: impl Fn(&str) -> Option<T>,
) -> Result<Option<(String, T)>, EvalError> {
    let mut messages = vec![ChatMessage::user(prompt)];
    for _ in 0..=RE_ASKS {
        let request = ChatRequest::new(
            messages.clone(),
            JUDGE_TEMPERATURE,
            JUDGE_MAX_TOKENS,
            judge.model_name(),
        )?;
        let reply = judge.complete(&request).await?;
        if let Some(value) = parse(&reply) {
            return Ok(Some((reply, value)));
        }
        tracing::debug!("judge reply failed to parse, re-asking");
        messages.push(ChatMessage::assistant(reply));
        messages.push(ChatMessage::user(reminder.to_string()));
    }
    Ok(None)
}

/// Compare two models' answers on one item. Scores come back attributed per
/// model regardless of the presentation order.
pub async fn pairwise_compare(
    item: &EvalItem,
    model_a: &str,
    model_b: &str,
    judge: &dyn ChatBackend,
    seed: u64,
) -> Result<JudgeOutcome, EvalError> {
    let answer_a = answer_of(item, model_a)?;
    let answer_b = answer_of(item, model_b)?;

    let a_first = presentation_coin(seed, &item.id);
    let presented_order: [String; 2] = if a_first {
        [model_a.to_string(), model_b.to_string()]
    } else {
        [model_b.to_string(), model_a.to_string()]
    };
    let (first_answer, second_answer) = if a_first {
        (answer_a, answer_b)
    } else {
        (answer_b, answer_a)
    };

    let prompt = render_comparison(&item.question, first_answer, second_answer);
    match ask_with_retries(judge, prompt, PAIR_FORMAT_REMINDER, parse_pair_scores).await? {
        Some((reply, slot_scores)) => Ok(JudgeOutcome::Judged(JudgeVerdict {
            item_id: item.id.clone(),
            category: item.category.clone(),
            mode: VerdictMode::Pairwise,
            scores: attribute_scores(&presented_order, slot_scores),
            presented_order: Some(presented_order),
            rationale: reply,
        })),
        None => Ok(JudgeOutcome::Unjudged {
            item_id: item.id.clone(),
            reason: "unparseable pair scores after retries".into(),
        }),
    }
}

/// Score one model's answer on one item.
pub async fn independent_score(
    item: &EvalItem,
    model: &str,
    judge: &dyn ChatBackend,
) -> Result<JudgeOutcome, EvalError> {
    let answer = answer_of(item, model)?;
    let prompt = render_independent(&item.question, answer);
    match ask_with_retries(judge, prompt, SCORE_FORMAT_REMINDER, parse_score).await? {
        Some((reply, score)) => Ok(JudgeOutcome::Judged(JudgeVerdict {
            item_id: item.id.clone(),
            category: item.category.clone(),
            mode: VerdictMode::Independent,
            scores: vec![ModelScore {
                model: model.to_string(),
                score,
            }],
            presented_order: None,
            rationale: reply,
        })),
        None => Ok(JudgeOutcome::Unjudged {
            item_id: item.id.clone(),
            reason: "unparseable score after retries".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use llm_gateway::MockBackend;
    use std::collections::BTreeMap;

    fn item(id: &str) -> EvalItem {
        let mut answers = BTreeMap::new();
        answers.insert("alpha".to_string(), "Answer from alpha.".to_string());
        answers.insert("beta".to_string(), "Answer from beta.".to_string());
        EvalItem {
            id: id.to_string(),
            category: "Commonsense-Easy".to_string(),
            question: "What color is the sky?".to_string(),
            answers,
        }
    }

    #[tokio::test]
    async fn slot_scores_map_back_through_presentation_order() {
        // find a seed/item where beta is shown first, then check mapping
        let mut seed = 0;
        while presentation_coin(seed, "item-1") {
            seed += 1;
        }
        let judge = MockBackend::new(1);
        judge.push_script("8 6\nThe first answer was more complete.");
        let outcome = pairwise_compare(&item("item-1"), "alpha", "beta", &judge, seed)
            .await
            .unwrap();
        let verdict = match outcome {
            JudgeOutcome::Judged(v) => v,
            other => panic!("expected judged, got {other:?}"),
        };
        assert_eq!(verdict.presented_order.as_ref().unwrap()[0], "beta");
        assert_eq!(verdict.score_for("beta"), Some(8));
        assert_eq!(verdict.score_for("alpha"), Some(6));
    }

    #[tokio::test]
    async fn pair_parse_failure_retries_then_unjudges() {
        let judge = MockBackend::new(1);
        judge.push_script("I think both are fine.");
        judge.push_script("Really, both are fine.");
        judge.push_script("Still prose.");
        let outcome = pairwise_compare(&item("item-2"), "alpha", "beta", &judge, 0)
            .await
            .unwrap();
        assert!(matches!(outcome, JudgeOutcome::Unjudged { .. }));
        assert_eq!(judge.chat_calls(), 3);
    }

    #[tokio::test]
    async fn pair_recovers_on_second_ask() {
        let judge = MockBackend::new(1);
        judge.push_script("prose first");
        judge.push_script("7 7\ntie");
        let outcome = pairwise_compare(&item("item-3"), "alpha", "beta", &judge, 0)
            .await
            .unwrap();
        let verdict = outcome.verdict().unwrap();
        assert_eq!(verdict.score_for("alpha"), verdict.score_for("beta"));
        assert_eq!(judge.chat_calls(), 2);
    }

    #[tokio::test]
    async fn missing_answer_is_an_error() {
        let mut bare = item("item-4");
        bare.answers.remove("beta");
        let judge = MockBackend::new(1);
        assert!(matches!(
            pairwise_compare(&bare, "alpha", "beta", &judge, 0).await,
            Err(EvalError::MissingAnswer { .. })
        ));
    }

    #[tokio::test]
    async fn independent_score_parses_and_ranges() {
        let judge = MockBackend::new(1);
        judge.push_script("Score: 9");
        let outcome = independent_score(&item("item-5"), "alpha", &judge)
            .await
            .unwrap();
        assert_eq!(outcome.verdict().unwrap().scores[0].score, 9);

        let judge = MockBackend::new(1);
        judge.push_script("Score: 11");
        judge.push_script("Score: 11");
        judge.push_script("ten");
        let outcome = independent_score(&item("item-6"), "alpha", &judge)
            .await
            .unwrap();
        assert!(matches!(outcome, JudgeOutcome::Unjudged { .. }));
    }

    #[test]
    fn coin_is_deterministic() {
        assert_eq!(presentation_coin(9, "x"), presentation_coin(9, "x"));
    }
}
