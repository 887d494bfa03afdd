//! Shared machinery for "ask the backend for n distinct lines" operations:
//! parse, filter, dedup under the canonical normalization, and regenerate on
//! shortfall up to a retry cap.

use core_model::normalize_for_dedup;
use llm_gateway::{ChatBackend, ChatMessage, ChatRequest};

use crate::error::SeedError;

/// Additional generation calls after the first, when duplicates or rejected
/// items leave the batch short.
pub(crate) const RETRY_CAP: usize = 3;

const GENERATION_TEMPERATURE: f64 = 1.0;
const GENERATION_MAX_TOKENS: u32 = 2048;

/// Collect `n` distinct items. `build_prompt(missing)` renders the request for
/// that many items; retries append an avoid-list so the transcript (and thus a
/// deterministic backend's output) changes between attempts.
pub(crate) async fn distinct_lines(
    backend: &dyn ChatBackend,
    n: usize,
    build_prompt: impl Fn(usize) -> String,
    accept: impl Fn(&str) -> bool,
) -> Result<Vec<String>, SeedError> {
    let mut items: Vec<String> = Vec::with_capacity(n);
    let mut seen: Vec<String> = Vec::with_capacity(n);

    for attempt in 0..=RETRY_CAP {
        let missing = n - items.len();
        if missing == 0 {
            break;
        }
        let mut prompt = build_prompt(missing);
        if attempt > 0 {
            prompt.push_str("\nDo not repeat any of these:\n");
            for item in &items {
                prompt.push_str(&format!("- {item}\n"));
            }
        }
        let request = ChatRequest::new(
            vec![ChatMessage::user(prompt)],
            GENERATION_TEMPERATURE,
            GENERATION_MAX_TOKENS,
            backend.model_name(),
        )?;
        let completion = backend.complete(&request).await?;
        for line in parse_lines(&completion) {
            if items.len() == n {
                break;
            }
            if !accept(&line) {
                continue;
            }
            let key = normalize_for_dedup(&line);
            if key.is_empty() || seen.contains(&key) {
                continue;
            }
            seen.push(key);
            items.push(line);
        }
    }

    if items.len() < n {
        return Err(SeedError::Shortfall {
            wanted: n,
            got: items.len(),
        });
    }
    Ok(items)
}

/// One candidate per non-empty line, with defensive stripping of bullet or
/// numbering prefixes.
pub(crate) fn parse_lines(completion: &str) -> Vec<String> {
    completion
        .lines()
        .map(strip_list_prefix)
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect()
}

fn strip_list_prefix(line: &str) -> &str {
    let line = line.trim();
    let line = line
        .strip_prefix("- ")
        .or_else(|| line.strip_prefix("* "))
        .unwrap_or(line);
    // "12. question" / "3) question"
    let digits = line.chars().take_while(|c| c.is_ascii_digit()).count();
    if digits > 0 {
        let rest = &line[digits..];
        if let Some(stripped) = rest.strip_prefix(". ").or_else(|| rest.strip_prefix(") ")) {
            return stripped;
        }
    }
    line
}

const IMPERATIVE_VERBS: [&str; 18] = [
    "write",
    "explain",
    "describe",
    "list",
    "compare",
    "tell",
    "give",
    "create",
    "summarize",
    "discuss",
    "outline",
    "define",
    "suggest",
    "provide",
    "name",
    "identify",
    "draft",
    "compose",
];

/// A question mark ending, or an opening imperative verb.
pub(crate) fn question_like(text: &str) -> bool {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return false;
    }
    if trimmed.ends_with('?') {
        return true;
    }
    let first = trimmed
        .split_whitespace()
        .next()
        .unwrap_or("")
        .trim_matches(|c: char| !c.is_alphanumeric())
        .to_lowercase();
    IMPERATIVE_VERBS.contains(&first.as_str())
}

const STOPWORDS: [&str; 24] = [
    "the", "and", "for", "that", "this", "with", "from", "what", "which", "who", "whom", "how",
    "why", "when", "where", "are", "was", "were", "does", "did", "can", "could", "would", "about",
];

/// Content words of a text under the canonical normalization: length >= 3 and
/// not a stopword.
pub(crate) fn content_words(text: &str) -> Vec<String> {
    normalize_for_dedup(text)
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| w.chars().count() >= 3 && !STOPWORDS.contains(w))
        .map(str::to_string)
        .collect()
}

pub(crate) fn shares_content_word(a: &str, b: &str) -> bool {
    let words_b = content_words(b);
    content_words(a).iter().any(|w| words_b.contains(w))
}
