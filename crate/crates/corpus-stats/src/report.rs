//! The full per-dataset report and its aligned text rendering.

use core_model::{Dialogue, Tokenizer};
use llm_gateway::ChatBackend;
use serde::{Deserialize, Serialize};

use crate::coherence::coherence_over_sample;
use crate::diversity::topic_diversity;
use crate::error::StatsError;
use crate::lexical::lexical_diversity;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetReport {
    pub name: String,
    pub dialogue_count: usize,
    /// Completed user+assistant rounds per dialogue.
    pub avg_rounds: f64,
    /// Stored messages per dialogue (two per round).
    pub avg_messages: f64,
    pub avg_dialogue_tokens: f64,
    pub avg_utterance_tokens: f64,
    pub lexical_diversity: Option<f64>,
    pub lexical_skipped: usize,
    pub topic_diversity: Option<f64>,
    pub topic_sample: usize,
    pub coherence: Option<f64>,
    pub coherence_sample: usize,
    pub coherence_skipped: usize,
    pub tokenizer: String,
}

/// What to compute beyond the plain counting statistics. Topic diversity and
/// coherence run only when a backend is supplied.
pub struct ReportOptions<'a> {
    pub name: String,
    pub tokenizer: &'a dyn Tokenizer,
    pub mtld_threshold: f64,
    pub min_mtld_tokens: usize,
    pub with_lexical: bool,
    pub sample_n: usize,
    pub seed: u64,
    pub embed_backend: Option<&'a dyn ChatBackend>,
    pub judge_backend: Option<&'a dyn ChatBackend>,
}

pub async fn dataset_report(
    dialogues: &[Dialogue],
    opts: &ReportOptions<'_>,
) -> Result<DatasetReport, StatsError> {
    if dialogues.is_empty() {
        return Err(StatsError::EmptyDataset);
    }
    // canonical order: every downstream sample sees the same sequence
    // regardless of input file order
    let mut sorted: Vec<&Dialogue> = dialogues.iter().collect();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));

    let n = sorted.len() as f64;
    let total_messages: usize = sorted.iter().map(|d| d.turns.len()).sum();
    let total_rounds: usize = sorted.iter().map(|d| d.rounds()).sum();
    let total_tokens: usize = sorted.iter().map(|d| d.total_tokens()).sum();

    let lexical = if opts.with_lexical {
        Some(lexical_diversity(
            dialogues,
            opts.tokenizer,
            opts.mtld_threshold,
            opts.min_mtld_tokens,
        )?)
    } else {
        None
    };

    let topic = match opts.embed_backend {
        Some(backend) if dialogues.len() >= 2 => {
            Some(topic_diversity(dialogues, opts.sample_n, opts.seed, backend).await?)
        }
        _ => None,
    };

    let coherence = match opts.judge_backend {
        Some(judge) => {
            Some(coherence_over_sample(dialogues, opts.sample_n, opts.seed, judge).await?)
        }
        None => None,
    };

    Ok(DatasetReport {
        name: opts.name.clone(),
        dialogue_count: sorted.len(),
        avg_rounds: total_rounds as f64 / n,
        avg_messages: total_messages as f64 / n,
        avg_dialogue_tokens: total_tokens as f64 / n,
        avg_utterance_tokens: total_tokens as f64 / total_messages as f64,
        lexical_diversity: lexical.as_ref().map(|l| l.mean),
        lexical_skipped: lexical.as_ref().map(|l| l.utterances_skipped).unwrap_or(0),
        topic_diversity: topic,
        topic_sample: opts
            .embed_backend
            .map(|_| opts.sample_n.min(dialogues.len()))
            .unwrap_or(0),
        coherence: coherence.as_ref().map(|c| c.mean),
        coherence_sample: coherence.as_ref().map(|c| c.scored).unwrap_or(0),
        coherence_skipped: coherence.as_ref().map(|c| c.skipped).unwrap_or(0),
        tokenizer: opts.tokenizer.name().to_string(),
    })
}

fn fmt_opt(value: Option<f64>, digits: usize) -> String {
    match value {
        Some(v) => format!("{v:.digits$}"),
        None => "-".to_string(),
    }
}

/// Aligned text table, one row per dataset.
pub fn render_report_table(reports: &[DatasetReport]) -> String {
    let mut rows = vec![vec![
        "Dataset".to_string(),
        "#Dialogues".to_string(),
        "Avg. #Rounds".to_string(),
        "Avg. Dialog Length (by token)".to_string(),
        "Avg. Utt. Length (by token)".to_string(),
        "Lexical Diversity".to_string(),
        "Topic Diversity".to_string(),
        "Coherence".to_string(),
    ]];
    for r in reports {
        rows.push(vec![
            r.name.clone(),
            r.dialogue_count.to_string(),
            format!("{:.1}", r.avg_rounds),
            format!("{:.1}", r.avg_dialogue_tokens),
            format!("{:.1}", r.avg_utterance_tokens),
            fmt_opt(r.lexical_diversity, 1),
            fmt_opt(r.topic_diversity, 3),
            fmt_opt(r.coherence, 2),
        ]);
    }
    let columns = rows[0].len();
    let mut widths = vec![0usize; columns];
    for row in &rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in &rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, cell)| format!("{:<width$}", cell, width = widths[i]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
