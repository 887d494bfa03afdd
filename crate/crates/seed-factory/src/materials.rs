//! Sector-3 openings: classify corpus pieces by URL keywords, generate
//! instructions grounded in each piece, and concatenate piece and instruction
//! through one of the seven fixed templates.

use std::path::Path;
use std::sync::LazyLock;

use core_model::{
    content_id, seed_split, LineageStep, MaterialCatalog, MaterialType, OpeningLine, Sector,
};
use llm_gateway::ChatBackend;
use serde::{Deserialize, Serialize};

use crate::error::SeedError;
use crate::generate::distinct_lines;
use crate::prompts;

/// Body text included in instruction-generation prompts is capped to keep
/// requests bounded.
const PROMPT_BODY_CAP: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TextPiece {
    pub id: String,
    pub source_url: String,
    pub body: String,
    pub material_type: String,
}

impl TextPiece {
    pub fn new(
        source_url: impl Into<String>,
        body: impl Into<String>,
        material_type: &MaterialType,
    ) -> TextPiece {
        let source_url = source_url.into();
        let body = body.into();
        let id = content_id("piece", &[&source_url, &body]);
        TextPiece {
            id,
            source_url,
            body,
            material_type: material_type.slug.clone(),
        }
    }
}

/// One of the seven fixed concatenation patterns; `{text}` and `{instruction}`
/// are the only slots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcatTemplate {
    pub template_id: u8,
    pub pattern: String,
}

static TEMPLATES: LazyLock<Vec<ConcatTemplate>> = LazyLock::new(|| {
    let templates: Vec<ConcatTemplate> =
        serde_json::from_str(include_str!("../data/concat_templates.json"))
            .expect("embedded template file is valid");
    assert_eq!(templates.len(), 7, "exactly seven concatenation templates");
    templates
});

/// The seven templates in id order.
pub fn concat_templates() -> &'static [ConcatTemplate] {
    &TEMPLATES
}

/// Byte-exact template instantiation.
pub fn render_template(template: &ConcatTemplate, text: &str, instruction: &str) -> String {
    template
        .pattern
        .replace("{text}", text)
        .replace("{instruction}", instruction)
}

/// Classify a piece by keyword matches against its lowercased URL. Most
/// matches wins; ties break to the earlier category in catalog order; zero
/// matches means unclassified.
pub fn classify_piece<'c>(
    url: &str,
    _body: &str,
    catalog: &'c MaterialCatalog,
) -> Option<&'c MaterialType> {
    let url = url.to_lowercase();
    let mut best: Option<(&MaterialType, usize)> = None;
    for material in catalog.types() {
        let hits = material
            .keywords
            .iter()
            .filter(|kw| url.contains(kw.as_str()))
            .count();
        if hits == 0 {
            continue;
        }
        // strictly-greater keeps the earlier category on ties
        if best.map(|(_, b)| hits > b).unwrap_or(true) {
            best = Some((material, hits));
        }
    }
    best.map(|(material, _)| material)
}

/// Seeded-uniform template choice per (piece, instruction) pair.
pub fn pick_template(seed: u64, piece_id: &str, instruction: &str) -> u8 {
    let label = format!("template:{piece_id}:{instruction}");
    (seed_split(seed, &label) % 7) as u8 + 1
}

/// Concatenate a piece and an instruction through the given template into a
/// sector-3 opening line.
pub fn concat_material(
    piece: &TextPiece,
    instruction: &str,
    template_id: u8,
) -> Result<OpeningLine, SeedError> {
    let template = TEMPLATES
        .iter()
        .find(|t| t.template_id == template_id)
        .ok_or_else(|| {
            SeedError::InvalidArgument(format!("template_id must be 1..=7, got {template_id}"))
        })?;
    let text = render_template(template, &piece.body, instruction);
    Ok(OpeningLine::new(
        Sector::MaterialAssistance,
        text,
        vec![
            LineageStep::new("material_type", piece.material_type.clone()),
            LineageStep::new("source_url", piece.source_url.clone()),
            LineageStep::new("instruction", instruction.to_string()),
            LineageStep::new("template_id", template_id.to_string()),
        ],
    ))
}

/// Generate `n` distinct instructions grounded in the piece body.
pub async fn material_instructions(
    piece: &TextPiece,
    n: usize,
    backend: &dyn ChatBackend,
) -> Result<Vec<String>, SeedError> {
    if n == 0 {
        return Err(SeedError::InvalidArgument("n must be at least 1".into()));
    }
    let body: String = piece.body.chars().take(PROMPT_BODY_CAP).collect();
    distinct_lines(
        backend,
        n,
        |missing| {
            prompts::render(
                prompts::MATERIAL_INSTRUCTIONS,
                &[("body", body.as_str()), ("n", &missing.to_string())],
            )
        },
        |line| !line.trim().is_empty(),
    )
    .await
}

/// Read a line-delimited `{"url": ..., "text": ...}` corpus file, classify
/// each piece, and keep the classifiable ones.
pub fn load_corpus(path: &Path, catalog: &MaterialCatalog) -> Result<Vec<TextPiece>, SeedError> {
    let raw = std::fs::read_to_string(path)?;
    parse_corpus(&raw, catalog)
}

/// The 20-piece sample corpus shipped for tests and desk-scale runs.
pub fn sample_corpus(catalog: &MaterialCatalog) -> Vec<TextPiece> {
    parse_corpus(include_str!("../data/corpus_sample.jsonl"), catalog)
        .expect("embedded corpus sample is valid")
}

fn parse_corpus(raw: &str, catalog: &MaterialCatalog) -> Result<Vec<TextPiece>, SeedError> {
    #[derive(Deserialize)]
    struct Row {
        url: String,
        text: String,
    }
    let mut pieces = Vec::new();
    for (idx, line) in raw.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: Row = serde_json::from_str(line).map_err(|e| SeedError::MalformedInput {
            line: idx + 1,
            reason: e.to_string(),
        })?;
        if row.text.trim().is_empty() {
            continue;
        }
        if let Some(material) = classify_piece(&row.url, &row.text, catalog) {
            pieces.push(TextPiece::new(row.url, row.text, material));
        } else {
            tracing::debug!(url = %row.url, "piece left unclassified, excluded");
        }
    }
    Ok(pieces)
}
