//! The stats stage: the full report over any dialogue file, written as JSON
//! and as an aligned text table.

use std::path::Path;

use anyhow::{bail, Context, Result};
use core_model::WhitespaceTokenizer;
use corpus_stats::{dataset_report, ingest_dialogues, render_report_table, ReportOptions};

use crate::backends::Backends;
use crate::config::Config;

pub async fn run(
    config: &Config,
    out_dir: &Path,
    input: &Path,
    backends: &Backends,
    name: &str,
) -> Result<String> {
    std::fs::create_dir_all(out_dir)?;
    if !input.exists() {
        bail!("missing input: expected dialogue file {}", input.display());
    }
    let dialogues = ingest_dialogues(input, &WhitespaceTokenizer)
        .with_context(|| format!("reading {}", input.display()))?;

    let stats_cfg = &config.stats;
    let options = ReportOptions {
        name: name.to_string(),
        tokenizer: &WhitespaceTokenizer,
        mtld_threshold: stats_cfg.mtld_threshold,
        min_mtld_tokens: stats_cfg.min_mtld_tokens,
        with_lexical: stats_cfg.with_lexical,
        sample_n: stats_cfg.sample_n,
        seed: config.seed,
        embed_backend: stats_cfg
            .with_topic_diversity
            .then_some(backends.aux.as_ref()),
        judge_backend: stats_cfg.with_coherence.then_some(backends.aux.as_ref()),
    };
    let report = dataset_report(&dialogues, &options).await?;

    std::fs::write(
        out_dir.join("stats-report.json"),
        serde_json::to_vec_pretty(&report)?,
    )?;
    let table = render_report_table(std::slice::from_ref(&report));
    std::fs::write(out_dir.join("stats-table.txt"), &table)?;
    Ok(table)
}
