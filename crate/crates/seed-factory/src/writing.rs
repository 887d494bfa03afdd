//! Sector-2 openings: writing instructions per material type, with a seeded
//! fraction refined through a second "make it more detailed" pass.

use core_model::{seed_split, LineageStep, MaterialType, OpeningLine, Sector};
use llm_gateway::{ChatBackend, ChatMessage, ChatRequest};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::error::SeedError;
use crate::generate::distinct_lines;
use crate::prompts;

/// One generated instruction before conversion to an opening line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WritingInstruction {
    pub original: String,
    pub refined: Option<String>,
}

impl WritingInstruction {
    pub fn text(&self) -> &str {
        self.refined.as_deref().unwrap_or(&self.original)
    }
}

/// Generate `n` distinct instructions for one material type, refine a seeded
/// `floor(refine_fraction * n)` subset, and return sector-2 openings whose
/// lineage records the original instruction and whether it was refined.
///
/// Item-level refinement failures fall back to the unrefined instruction with
/// a logged warning; they are not fatal.
pub async fn writing_instructions(
    material: &MaterialType,
    n: usize,
    refine_fraction: f64,
    seed: u64,
    backend: &dyn ChatBackend,
) -> Result<Vec<OpeningLine>, SeedError> {
    if !(0.0..=1.0).contains(&refine_fraction) {
        return Err(SeedError::InvalidArgument(format!(
            "refine_fraction must lie in [0, 1], got {refine_fraction}"
        )));
    }
    if n == 0 {
        return Err(SeedError::InvalidArgument("n must be at least 1".into()));
    }

    let originals = distinct_lines(
        backend,
        n,
        |missing| {
            prompts::render(
                prompts::WRITING_INSTRUCTION,
                &[
                    ("material_type", &material.name),
                    ("n", &missing.to_string()),
                ],
            )
        },
        |line| !line.trim().is_empty(),
    )
    .await?;

    // floor(fraction * n), nudged so exact decimal fractions survive binary
    // representation (0.8 * 10 must select 8, 0.7 * 10 must select 7).
    let refine_count = ((refine_fraction * n as f64) + 1e-9).floor() as usize;
    let refine_count = refine_count.min(n);
    let mut indices: Vec<usize> = (0..n).collect();
    let mut rng =
        ChaCha20Rng::seed_from_u64(seed_split(seed, &format!("refine:{}", material.slug)));
    indices.shuffle(&mut rng);
    let chosen: Vec<usize> = indices.into_iter().take(refine_count).collect();

    let mut instructions: Vec<WritingInstruction> = originals
        .into_iter()
        .map(|original| WritingInstruction {
            original,
            refined: None,
        })
        .collect();

    for &idx in &chosen {
        let prompt = prompts::render(
            prompts::REFINE_INSTRUCTION,
            &[("instruction", &instructions[idx].original)],
        );
        let request = ChatRequest::new(
            vec![ChatMessage::user(prompt)],
            1.0,
            1024,
            backend.model_name(),
        )?;
        match backend.complete(&request).await {
            Ok(refined) if !refined.trim().is_empty() => {
                instructions[idx].refined = Some(refined.trim().to_string());
            }
            Ok(_) => tracing::warn!(
                material = %material.slug,
                index = idx,
                "refinement returned empty text, keeping original"
            ),
            Err(err) => tracing::warn!(
                material = %material.slug,
                index = idx,
                error = %err,
                "refinement failed, keeping original"
            ),
        }
    }

    Ok(instructions
        .into_iter()
        .map(|instruction| {
            let refined_flag = instruction.refined.is_some();
            OpeningLine::new(
                Sector::CreationGeneration,
                instruction.text().to_string(),
                vec![
                    LineageStep::new("material_type", material.slug.clone()),
                    LineageStep::new("instruction", instruction.original.clone()),
                    LineageStep::new("refined", if refined_flag { "true" } else { "false" }),
                ],
            )
        })
        .collect())
}
