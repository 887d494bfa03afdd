//! Deterministic offline backend. Completions are a pure function of
//! (seed, message transcript): identical inputs always produce identical
//! outputs, across calls and across processes. Tests that need exact strings
//! can enqueue scripted responses or install substring-triggered rules.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use async_trait::async_trait;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

use crate::backend::ChatBackend;
use crate::error::GatewayError;
use crate::request::{ChatRequest, EmbeddingVector};

const ADJECTIVES: [&str; 32] = [
    "modular",
    "quiet",
    "amber",
    "brisk",
    "coastal",
    "daring",
    "earnest",
    "fluted",
    "gilded",
    "hollow",
    "iridescent",
    "jovial",
    "keen",
    "lucid",
    "mellow",
    "nimble",
    "opaque",
    "patient",
    "quartz",
    "rustic",
    "sober",
    "tidal",
    "umber",
    "vivid",
    "woven",
    "xeric",
    "yielding",
    "zesty",
    "brazen",
    "candid",
    "deft",
    "elastic",
];

const NOUNS: [&str; 30] = [
    "signal",
    "harbor",
    "lattice",
    "meadow",
    "engine",
    "archive",
    "beacon",
    "canvas",
    "dynamo",
    "estuary",
    "furnace",
    "garden",
    "horizon",
    "islet",
    "junction",
    "kiln",
    "ledger",
    "mosaic",
    "nebula",
    "orchard",
    "pylon",
    "quarry",
    "ridge",
    "satchel",
    "terrace",
    "updraft",
    "vessel",
    "windmill",
    "yardstick",
    "zenith",
];

const VERBS: [&str; 12] = [
    "crosses", "measures", "shelters", "follows", "steadies", "outlines", "carries", "reflects",
    "anchors", "traces", "frames", "balances",
];

const IMPERATIVES: [&str; 5] = ["Write", "Draft", "Compose", "Outline", "Sketch"];

/// Deterministic completion text for the given seed and request.
///
/// When the final message asks for "exactly N lines" the reply is N distinct
/// list items; the item shape follows the request wording (question,
/// instruction, or plain phrase), grounded in the last double-quoted span of
/// the message when present. Otherwise the reply is a short declarative
/// paragraph. Everything derives from a hash of (seed, transcript).
pub fn mock_completion(seed: u64, req: &ChatRequest) -> String {
    let mut rng = transcript_rng(seed, req);
    let content = &req.last_message().content;

    if let Some(n) = requested_line_count(content) {
        let subject = subject_of(content);
        let items = distinct_items(&mut rng, n, &subject, item_shape(content));
        return items.join("\n");
    }
    // judge-shaped requests get replies in the format they ask for
    if content.contains("two values indicating the scores")
        || content.contains("two integers between 1 and 10")
    {
        let first = rng.random_range(1..=10);
        let second = rng.random_range(1..=10);
        return format!("{first} {second}\n{}", paragraph(&mut rng));
    }
    if content.contains("\"Score: [an integer number between 1 and 10]\"") {
        return format!("Score: {}", rng.random_range(1..=10));
    }
    if content.contains("true or false") {
        return if rng.random_range(0..2) == 0 {
            "true"
        } else {
            "false"
        }
        .to_string();
    }
    paragraph(&mut rng)
}

/// Deterministic unit vector for one text under the given seed and dimension.
pub fn mock_embedding(seed: u64, text: &str, dimension: usize) -> EmbeddingVector {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(b"embed\0");
    hasher.update(text.as_bytes());
    let digest = hasher.finalize();
    let mut rng = ChaCha20Rng::from_seed(digest.into());
    let mut values: Vec<f64> = (0..dimension)
        .map(|_| rng.random_range(-1.0..1.0))
        .collect();
    let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
    // A zero vector has probability zero, but stay total anyway.
    if norm < 1e-12 {
        values[0] = 1.0;
        return EmbeddingVector { values };
    }
    for v in &mut values {
        *v /= norm;
    }
    EmbeddingVector { values }
}

fn transcript_rng(seed: u64, req: &ChatRequest) -> ChaCha20Rng {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(b"chat\0");
    for message in &req.messages {
        hasher.update(match message.role {
            crate::request::MessageRole::System => b"s\0",
            crate::request::MessageRole::User => b"u\0",
            crate::request::MessageRole::Assistant => b"a\0",
        });
        hasher.update((message.content.len() as u64).to_le_bytes());
        hasher.update(message.content.as_bytes());
    }
    ChaCha20Rng::from_seed(hasher.finalize().into())
}

/// Parse the "exactly N lines" directive used by the generation prompts.
fn requested_line_count(content: &str) -> Option<usize> {
    let lower = content.to_lowercase();
    let idx = lower.find("exactly ")?;
    let rest = &lower[idx + "exactly ".len()..];
    let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
    let after = &rest[digits.len()..];
    if !after.trim_start().starts_with("line") {
        return None;
    }
    digits.parse().ok().filter(|&n| n > 0)
}

#[derive(Clone, Copy, PartialEq)]
enum ItemShape {
    Question,
    Instruction,
    Phrase,
}

fn item_shape(content: &str) -> ItemShape {
    let lower = content.to_lowercase();
    if lower.contains("one question per line") {
        ItemShape::Question
    } else if lower.contains("one instruction per line") {
        ItemShape::Instruction
    } else {
        ItemShape::Phrase
    }
}

/// Ground generated items in the prompt: prefer the last double-quoted span,
/// shortened to its longest word when the span is long; otherwise the longest
/// word of the message.
fn subject_of(content: &str) -> String {
    if let Some(span) = last_quoted_span(content) {
        if span.chars().count() <= 40 {
            return span;
        }
        if let Some(word) = longest_word(&span) {
            return word;
        }
    }
    longest_word(content).unwrap_or_else(|| "the subject".to_string())
}

fn last_quoted_span(content: &str) -> Option<String> {
    let mut spans = Vec::new();
    let mut current: Option<String> = None;
    for c in content.chars() {
        match (&mut current, c) {
            (None, '"') => current = Some(String::new()),
            (Some(span), '"') => {
                if !span.trim().is_empty() {
                    spans.push(span.trim().to_string());
                }
                current = None;
            }
            (Some(span), c) => span.push(c),
            (None, _) => {}
        }
    }
    spans.pop()
}

fn longest_word(text: &str) -> Option<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|w| w.chars().count() >= 3)
        .max_by_key(|w| w.chars().count())
        .map(|w| w.to_string())
}

/// N distinct items built from (adjective, noun) pairs sampled without
/// replacement, so distinctness is guaranteed up to the product-space size.
fn distinct_items(rng: &mut ChaCha20Rng, n: usize, subject: &str, shape: ItemShape) -> Vec<String> {
    let space = ADJECTIVES.len() * NOUNS.len();
    let mut indices: Vec<usize> = (0..space).collect();
    indices.shuffle(rng);
    indices
        .into_iter()
        .take(n.min(space))
        .map(|i| {
            let adj = ADJECTIVES[i / NOUNS.len()];
            let noun = NOUNS[i % NOUNS.len()];
            match shape {
                ItemShape::Question => format!("What about the {adj} {noun} of {subject}?"),
                ItemShape::Instruction => {
                    let verb = IMPERATIVES[i % IMPERATIVES.len()];
                    format!("{verb} a {adj} {noun} about {subject}.")
                }
                ItemShape::Phrase => format!("{adj} {noun} of {subject}"),
            }
        })
        .collect()
}

fn paragraph(rng: &mut ChaCha20Rng) -> String {
    let sentences = rng.random_range(1..=3);
    let mut out = String::new();
    for i in 0..sentences {
        if i > 0 {
            out.push(' ');
        }
        let adj = ADJECTIVES[rng.random_range(0..ADJECTIVES.len())];
        let noun = NOUNS[rng.random_range(0..NOUNS.len())];
        let verb = VERBS[rng.random_range(0..VERBS.len())];
        let adj2 = ADJECTIVES[rng.random_range(0..ADJECTIVES.len())];
        let noun2 = NOUNS[rng.random_range(0..NOUNS.len())];
        out.push_str(&format!("The {adj} {noun} {verb} the {adj2} {noun2}."));
    }
    out
}

struct Rule {
    when_contains: String,
    respond: String,
}

/// Deterministic offline backend with optional scripted responses.
pub struct MockBackend {
    seed: u64,
    embedding_dim: usize,
    latency: Duration,
    script: Mutex<VecDeque<String>>,
    rules: Mutex<Vec<Rule>>,
    chat_calls: AtomicU64,
    embed_calls: AtomicU64,
}

impl MockBackend {
    pub fn new(seed: u64) -> MockBackend {
        MockBackend {
            seed,
            embedding_dim: 16,
            latency: Duration::ZERO,
            script: Mutex::new(VecDeque::new()),
            rules: Mutex::new(Vec::new()),
            chat_calls: AtomicU64::new(0),
            embed_calls: AtomicU64::new(0),
        }
    }

    pub fn with_embedding_dim(mut self, dimension: usize) -> MockBackend {
        self.embedding_dim = dimension;
        self
    }

    /// Artificial per-call delay, useful for exercising scheduling and resume.
    pub fn with_latency(mut self, latency: Duration) -> MockBackend {
        self.latency = latency;
        self
    }

    /// Enqueue an exact response. Scripted responses are served FIFO before
    /// rules and before deterministic generation.
    pub fn push_script(&self, response: impl Into<String>) {
        self.script.lock().unwrap().push_back(response.into());
    }

    /// Respond with `respond` whenever the final message contains `pattern`.
    pub fn add_rule(&self, pattern: impl Into<String>, respond: impl Into<String>) {
        self.rules.lock().unwrap().push(Rule {
            when_contains: pattern.into(),
            respond: respond.into(),
        });
    }

    pub fn chat_calls(&self) -> u64 {
        self.chat_calls.load(Ordering::Relaxed)
    }

    pub fn embed_calls(&self) -> u64 {
        self.embed_calls.load(Ordering::Relaxed)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

#[async_trait]
impl ChatBackend for MockBackend {
    async fn complete(&self, req: &ChatRequest) -> Result<String, GatewayError> {
        self.chat_calls.fetch_add(1, Ordering::Relaxed);
        if self.latency > Duration::ZERO {
            tokio::time::sleep(self.latency).await;
        }
        if let Some(scripted) = self.script.lock().unwrap().pop_front() {
            return Ok(scripted);
        }
        {
            let rules = self.rules.lock().unwrap();
            let last = &req.last_message().content;
            if let Some(rule) = rules.iter().find(|r| last.contains(&r.when_contains)) {
                return Ok(rule.respond.clone());
            }
        }
        Ok(mock_completion(self.seed, req))
    }

    async fn embed(&self, texts: &[String]) -> Result<Vec<EmbeddingVector>, GatewayError> {
        if texts.is_empty() {
            return Err(GatewayError::EmptyInput);
        }
        self.embed_calls.fetch_add(1, Ordering::Relaxed);
        if self.latency > Duration::ZERO {
            tokio::time::sleep(self.latency).await;
        }
        Ok(texts
            .iter()
            .map(|t| mock_embedding(self.seed, t, self.embedding_dim))
            .collect())
    }

    fn fingerprint(&self) -> String {
        format!("mock(seed={})", self.seed)
    }

    fn model_name(&self) -> String {
        "mock".to_string()
    }
}
