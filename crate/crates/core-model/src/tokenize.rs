//! Pluggable tokenization. The default splits on Unicode whitespace and peels
//! leading/trailing punctuation into separate tokens, which keeps token counts
//! deterministic and offline.

/// A tokenizer used for turn token counts and lexical statistics.
pub trait Tokenizer: Send + Sync {
    fn tokenize(&self, text: &str) -> Vec<String>;

    fn count(&self, text: &str) -> usize {
        self.tokenize(text).len()
    }

    /// Stable name recorded in reports so numbers are comparable.
    fn name(&self) -> &str;
}

/// Whitespace split with edge punctuation peeled off as its own tokens.
/// Interior punctuation (apostrophes, hyphens) stays inside the token.
#[derive(Debug, Clone, Copy, Default)]
pub struct WhitespaceTokenizer;

impl Tokenizer for WhitespaceTokenizer {
    fn tokenize(&self, text: &str) -> Vec<String> {
        let mut tokens = Vec::new();
        for chunk in text.split_whitespace() {
            split_chunk(chunk, &mut tokens);
        }
        tokens
    }

    fn name(&self) -> &str {
        "whitespace-punct"
    }
}

fn is_edge_punct(c: char) -> bool {
    !c.is_alphanumeric()
}

fn split_chunk(chunk: &str, out: &mut Vec<String>) {
    let chars: Vec<char> = chunk.chars().collect();
    let mut start = 0;
    let mut end = chars.len();
    while start < end && is_edge_punct(chars[start]) {
        start += 1;
    }
    while end > start && is_edge_punct(chars[end - 1]) {
        end -= 1;
    }
    for c in &chars[..start] {
        out.push(c.to_string());
    }
    if start < end {
        out.push(chars[start..end].iter().collect());
    }
    for c in &chars[end..] {
        out.push(c.to_string());
    }
}
