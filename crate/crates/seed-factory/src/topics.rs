//! Sector-1 topic fan-out: 30 fixed meta-topics, each expanded into subtopics,
//! questions per subtopic, and expansions per question.

use std::ops::RangeInclusive;

use core_model::{content_id, normalize_for_dedup, LineageStep, OpeningLine, Sector};
use futures::stream::{self, StreamExt, TryStreamExt};
use llm_gateway::ChatBackend;
use serde::{Deserialize, Serialize};

use crate::error::SeedError;
use crate::generate::{distinct_lines, question_like};
use crate::prompts;

const META_TOPICS: &str = include_str!("../data/meta_topics.txt");

/// Subtopic fan-out allowed per meta-topic.
pub const SUBTOPIC_FANOUT_RANGE: RangeInclusive<usize> = 30..=50;

/// Bounded in-flight backend calls for parallel expansion.
const IN_FLIGHT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopicDepth {
    /// One of the 30 fixed meta-topics.
    Meta,
    Subtopic,
    Question,
    /// A question expanded from another question.
    Expanded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopicNode {
    pub id: String,
    pub name: String,
    pub parent: Option<String>,
    pub depth: TopicDepth,
}

impl TopicNode {
    fn new(name: impl Into<String>, parent: Option<&TopicNode>, depth: TopicDepth) -> TopicNode {
        let name = name.into();
        let parent_id = parent.map(|p| p.id.clone());
        let id = content_id(
            "topic-node",
            &[
                &format!("{depth:?}"),
                &name,
                parent_id.as_deref().unwrap_or(""),
            ],
        );
        TopicNode {
            id,
            name,
            parent: parent_id,
            depth,
        }
    }
}

/// The fixed 30-entry meta-topic list.
pub fn meta_topics() -> Vec<TopicNode> {
    META_TOPICS
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|name| TopicNode::new(name, None, TopicDepth::Meta))
        .collect()
}

/// Expand one meta-topic into `n` distinct subtopics (fan-out clamped to the
/// allowed range by precondition).
pub async fn expand_topic(
    topic: &TopicNode,
    n: usize,
    backend: &dyn ChatBackend,
) -> Result<Vec<TopicNode>, SeedError> {
    if topic.depth != TopicDepth::Meta {
        return Err(SeedError::InvalidArgument(format!(
            "expand_topic takes a meta-topic, got {:?}",
            topic.depth
        )));
    }
    if !SUBTOPIC_FANOUT_RANGE.contains(&n) {
        return Err(SeedError::FanoutOutOfRange {
            n,
            min: *SUBTOPIC_FANOUT_RANGE.start(),
            max: *SUBTOPIC_FANOUT_RANGE.end(),
        });
    }
    let items = distinct_lines(
        backend,
        n,
        |missing| {
            prompts::render(
                prompts::EXPAND_TOPIC,
                &[("topic", &topic.name), ("n", &missing.to_string())],
            )
        },
        |line| !line.trim().is_empty(),
    )
    .await?;
    Ok(items
        .into_iter()
        .map(|name| TopicNode::new(name, Some(topic), TopicDepth::Subtopic))
        .collect())
}

/// Generate `n` distinct questions for a subtopic.
pub async fn generate_questions(
    node: &TopicNode,
    n: usize,
    backend: &dyn ChatBackend,
) -> Result<Vec<TopicNode>, SeedError> {
    if node.depth != TopicDepth::Subtopic {
        return Err(SeedError::InvalidArgument(format!(
            "generate_questions takes a subtopic, got {:?}",
            node.depth
        )));
    }
    if n == 0 {
        return Err(SeedError::InvalidArgument("n must be at least 1".into()));
    }
    let items = distinct_lines(
        backend,
        n,
        |missing| {
            prompts::render(
                prompts::GENERATE_QUESTIONS,
                &[("subject", &node.name), ("n", &missing.to_string())],
            )
        },
        question_like,
    )
    .await?;
    Ok(items
        .into_iter()
        .map(|q| TopicNode::new(q, Some(node), TopicDepth::Question))
        .collect())
}

/// Expand one question into `n` new questions; items matching the parent after
/// normalization are rejected and regenerated.
pub async fn expand_question(
    question: &TopicNode,
    n: usize,
    backend: &dyn ChatBackend,
) -> Result<Vec<TopicNode>, SeedError> {
    if question.depth != TopicDepth::Question {
        return Err(SeedError::InvalidArgument(format!(
            "expand_question takes a question, got {:?}",
            question.depth
        )));
    }
    if n == 0 {
        return Err(SeedError::InvalidArgument("n must be at least 1".into()));
    }
    let parent_key = normalize_for_dedup(&question.name);
    let items = distinct_lines(
        backend,
        n,
        |missing| {
            prompts::render(
                prompts::EXPAND_QUESTION,
                &[("question", &question.name), ("n", &missing.to_string())],
            )
        },
        |line| question_like(line) && normalize_for_dedup(line) != parent_key,
    )
    .await?;
    Ok(items
        .into_iter()
        .map(|q| TopicNode::new(q, Some(question), TopicDepth::Expanded))
        .collect())
}

/// Full sector-1 fan-out for one meta-topic: `n_subtopics` subtopics, then
/// `questions_per` questions each, then `expansions_per` expansions per
/// question. Yields question and expansion nodes as opening lines, pre-dedup:
/// exactly `n_subtopics * questions_per * (1 + expansions_per)` of them.
pub async fn world_questions_for_topic(
    topic: &TopicNode,
    n_subtopics: usize,
    questions_per: usize,
    expansions_per: usize,
    backend: &dyn ChatBackend,
) -> Result<Vec<OpeningLine>, SeedError> {
    let subtopics = expand_topic(topic, n_subtopics, backend).await?;

    let per_subtopic: Vec<Vec<OpeningLine>> = stream::iter(subtopics.iter())
        .map(|subtopic| async move {
            let questions = generate_questions(subtopic, questions_per, backend).await?;
            let mut openings = Vec::with_capacity(questions_per * (1 + expansions_per));
            for question in &questions {
                openings.push(OpeningLine::new(
                    Sector::WorldQuestions,
                    question.name.clone(),
                    vec![
                        LineageStep::new("topic", topic.name.clone()),
                        LineageStep::new("subtopic", subtopic.name.clone()),
                        LineageStep::new("question", question.name.clone()),
                    ],
                ));
                let expansions = expand_question(question, expansions_per, backend).await?;
                for expansion in expansions {
                    openings.push(OpeningLine::new(
                        Sector::WorldQuestions,
                        expansion.name.clone(),
                        vec![
                            LineageStep::new("topic", topic.name.clone()),
                            LineageStep::new("subtopic", subtopic.name.clone()),
                            LineageStep::new("question", question.name.clone()),
                            LineageStep::new("expansion", expansion.name),
                        ],
                    ));
                }
            }
            Ok::<_, SeedError>(openings)
        })
        .buffered(IN_FLIGHT)
        .try_collect()
        .await?;

    Ok(per_subtopic.into_iter().flatten().collect())
}
