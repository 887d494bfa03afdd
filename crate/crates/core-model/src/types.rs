use serde::{Deserialize, Serialize};

use crate::ids::content_id;
use crate::tokenize::Tokenizer;

/// Speaker of a stored turn. System prompts live in simulator configuration and
/// are never stored inside a dialogue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    User,
    Assistant,
}

impl Role {
    pub fn other(self) -> Role {
        match self {
            Role::User => Role::Assistant,
            Role::Assistant => Role::User,
        }
    }
}

impl std::fmt::Display for Role {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Role::User => write!(f, "user"),
            Role::Assistant => write!(f, "assistant"),
        }
    }
}

/// The three data sectors: querying world knowledge, creating new material
/// under instructions, and transforming existing material.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sector {
    WorldQuestions,
    CreationGeneration,
    MaterialAssistance,
}

impl Sector {
    pub const ALL: [Sector; 3] = [
        Sector::WorldQuestions,
        Sector::CreationGeneration,
        Sector::MaterialAssistance,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Sector::WorldQuestions => "world_questions",
            Sector::CreationGeneration => "creation_generation",
            Sector::MaterialAssistance => "material_assistance",
        }
    }
}

impl std::fmt::Display for Sector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Sector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "world_questions" => Ok(Sector::WorldQuestions),
            "creation_generation" => Ok(Sector::CreationGeneration),
            "material_assistance" => Ok(Sector::MaterialAssistance),
            other => Err(format!("unknown sector: {other}")),
        }
    }
}

/// One stored message. `token_count` is computed under the configured tokenizer
/// at construction time and re-checked on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Turn {
    pub role: Role,
    pub content: String,
    pub token_count: usize,
}

impl Turn {
    pub fn new(role: Role, content: impl Into<String>, tokenizer: &dyn Tokenizer) -> Turn {
        let content = content.into();
        let token_count = tokenizer.count(&content);
        Turn {
            role,
            content,
            token_count,
        }
    }
}

/// One step in an opening line's derivation trail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineageStep {
    pub stage: String,
    pub value: String,
}

impl LineageStep {
    pub fn new(stage: impl Into<String>, value: impl Into<String>) -> LineageStep {
        LineageStep {
            stage: stage.into(),
            value: value.into(),
        }
    }
}

/// A seed utterance: the first user message of a future dialogue, with the
/// trail recording how it was derived.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpeningLine {
    pub id: String,
    pub sector: Sector,
    pub text: String,
    pub lineage: Vec<LineageStep>,
}

impl OpeningLine {
    pub fn new(sector: Sector, text: impl Into<String>, lineage: Vec<LineageStep>) -> OpeningLine {
        let text = text.into();
        let id = Self::compute_id(sector, &text);
        OpeningLine {
            id,
            sector,
            text,
            lineage,
        }
    }

    pub fn compute_id(sector: Sector, text: &str) -> String {
        content_id("opening", &[sector.as_str(), text])
    }
}

/// An ordered sequence of role-tagged turns plus provenance metadata; the unit
/// of pipeline output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dialogue {
    pub id: String,
    pub sector: Sector,
    pub opening_id: String,
    pub persona_id: String,
    pub backend_fingerprint: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub created_at: Option<u64>,
    pub turns: Vec<Turn>,
}

impl Dialogue {
    pub fn new(
        sector: Sector,
        opening_id: impl Into<String>,
        persona_id: impl Into<String>,
        backend_fingerprint: impl Into<String>,
        turns: Vec<Turn>,
    ) -> Dialogue {
        let id = Self::compute_id(sector, &turns);
        Dialogue {
            id,
            sector,
            opening_id: opening_id.into(),
            persona_id: persona_id.into(),
            backend_fingerprint: backend_fingerprint.into(),
            created_at: None,
            turns,
        }
    }

    /// Content-addressed id over the sector and turn contents. Timestamps and
    /// provenance metadata do not participate.
    pub fn compute_id(sector: Sector, turns: &[Turn]) -> String {
        let mut parts: Vec<&str> = vec![sector.as_str()];
        for turn in turns {
            parts.push(match turn.role {
                Role::User => "u",
                Role::Assistant => "a",
            });
            parts.push(&turn.content);
        }
        content_id("dialogue", &parts)
    }

    /// Completed user/assistant rounds. Messages are stored individually; a
    /// round is one user message plus the assistant reply.
    pub fn rounds(&self) -> usize {
        self.turns.len() / 2
    }

    pub fn total_tokens(&self) -> usize {
        self.turns.iter().map(|t| t.token_count).sum()
    }

    /// Full transcript as `role: content` lines.
    pub fn transcript(&self) -> String {
        let mut out = String::new();
        for turn in &self.turns {
            out.push_str(&format!("{}: {}\n", turn.role, turn.content));
        }
        out
    }
}
