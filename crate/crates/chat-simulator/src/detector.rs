//! Role-exchange detection: the failure mode where the simulated user starts
//! answering like an assistant. Pure string matching over a configurable
//! pattern list.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PatternKind {
    Contains,
    Prefix,
}

#[derive(Debug, Clone)]
struct Pattern {
    kind: PatternKind,
    text: String,
}

#[derive(Debug, Clone)]
pub struct RoleExchangeDetector {
    patterns: Vec<Pattern>,
}

impl RoleExchangeDetector {
    /// The shipped pattern list.
    pub fn builtin() -> RoleExchangeDetector {
        Self::parse(include_str!("../data/role_exchange_patterns.txt"))
            .expect("embedded pattern file is valid")
    }

    /// Parse a `kind<TAB>pattern` list; `#` lines are comments.
    pub fn parse(raw: &str) -> Result<RoleExchangeDetector, String> {
        let mut patterns = Vec::new();
        for (idx, line) in raw.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (kind, text) = line
                .split_once('\t')
                .ok_or_else(|| format!("line {}: expected kind<TAB>pattern", idx + 1))?;
            let kind = match kind {
                "contains" => PatternKind::Contains,
                "prefix" => PatternKind::Prefix,
                other => return Err(format!("line {}: unknown kind {other:?}", idx + 1)),
            };
            patterns.push(Pattern {
                kind,
                text: normalize(text),
            });
        }
        if patterns.is_empty() {
            return Err("pattern list is empty".into());
        }
        Ok(RoleExchangeDetector { patterns })
    }

    /// True iff the text reads like an assistant turn. Pure function.
    pub fn detect(&self, user_turn_text: &str) -> bool {
        let normalized = normalize(user_turn_text);
        if normalized.is_empty() {
            return false;
        }
        self.patterns.iter().any(|p| match p.kind {
            PatternKind::Contains => normalized.contains(&p.text),
            PatternKind::Prefix => normalized.starts_with(&p.text),
        })
    }
}

/// Detection with the shipped pattern list.
pub fn detect_role_exchange(user_turn_text: &str) -> bool {
    use std::sync::LazyLock;
    static BUILTIN: LazyLock<RoleExchangeDetector> = LazyLock::new(RoleExchangeDetector::builtin);
    BUILTIN.detect(user_turn_text)
}

fn normalize(text: &str) -> String {
    text.to_lowercase()
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
}
