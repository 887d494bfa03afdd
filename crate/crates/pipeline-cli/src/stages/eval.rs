//! Evaluation stages: pairwise comparison, independent scoring, and the
//! true/false benchmark runner.

use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use eval_harness::{
    independent_score, load_answers, load_eval_items, load_truthfulqa_items, pairwise_compare,
    render_tally_table, tally, truthfulqa_mc, JudgeOutcome, JudgeVerdict,
};
use futures::StreamExt;

use crate::backends::Backends;
use crate::config::Config;

fn write_verdicts(path: &Path, verdicts: &[JudgeVerdict]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let mut file = std::fs::File::create(&tmp)?;
    for verdict in verdicts {
        file.write_all(serde_json::to_string(verdict)?.as_bytes())?;
        file.write_all(b"\n")?;
    }
    file.flush()?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub async fn compare(
    config: &Config,
    out_dir: &Path,
    backends: &Backends,
    eval_set: &Path,
    model_a: (&str, &Path),
    model_b: (&str, &Path),
) -> Result<String> {
    std::fs::create_dir_all(out_dir)?;
    let mut items = load_eval_items(eval_set)
        .with_context(|| format!("reading evaluation set {}", eval_set.display()))?;
    load_answers(&mut items, model_a.0, model_a.1)
        .with_context(|| format!("reading answers {}", model_a.1.display()))?;
    load_answers(&mut items, model_b.0, model_b.1)
        .with_context(|| format!("reading answers {}", model_b.1.display()))?;

    let judge = backends.aux.as_ref();
    let seed = config.seed;
    let comparable: Vec<_> = items
        .iter()
        .filter(|i| i.answers.contains_key(model_a.0) && i.answers.contains_key(model_b.0))
        .collect();
    let skipped_missing = items.len() - comparable.len();

    let outcomes: Vec<JudgeOutcome> = futures::stream::iter(
        comparable
            .iter()
            .map(|item| pairwise_compare(item, model_a.0, model_b.0, judge, seed)),
    )
    .buffered(config.concurrency.max(1))
    .collect::<Vec<_>>()
    .await
    .into_iter()
    .collect::<Result<_, _>>()?;

    summarize(out_dir, outcomes, skipped_missing)
}

pub async fn score(
    config: &Config,
    out_dir: &Path,
    backends: &Backends,
    eval_set: &Path,
    model: (&str, &Path),
) -> Result<String> {
    std::fs::create_dir_all(out_dir)?;
    let mut items = load_eval_items(eval_set)
        .with_context(|| format!("reading evaluation set {}", eval_set.display()))?;
    load_answers(&mut items, model.0, model.1)
        .with_context(|| format!("reading answers {}", model.1.display()))?;

    let judge = backends.aux.as_ref();
    let scorable: Vec<_> = items
        .iter()
        .filter(|i| i.answers.contains_key(model.0))
        .collect();
    let skipped_missing = items.len() - scorable.len();

    let outcomes: Vec<JudgeOutcome> = futures::stream::iter(
        scorable
            .iter()
            .map(|item| independent_score(item, model.0, judge)),
    )
    .buffered(config.concurrency.max(1))
    .collect::<Vec<_>>()
    .await
    .into_iter()
    .collect::<Result<_, _>>()?;

    summarize(out_dir, outcomes, skipped_missing)
}

fn summarize(
    out_dir: &Path,
    outcomes: Vec<JudgeOutcome>,
    skipped_missing: usize,
) -> Result<String> {
    let mut verdicts = Vec::new();
    let mut unjudged = 0usize;
    for outcome in outcomes {
        match outcome {
            JudgeOutcome::Judged(v) => verdicts.push(v),
            JudgeOutcome::Unjudged { .. } => unjudged += 1,
        }
    }
    verdicts.sort_by(|a, b| a.item_id.cmp(&b.item_id));
    write_verdicts(&out_dir.join("verdicts.jsonl"), &verdicts)?;

    let tally = tally(&verdicts);
    std::fs::write(
        out_dir.join("tally.json"),
        serde_json::to_vec_pretty(&tally)?,
    )?;

    let mut table = render_tally_table(&tally);
    table.push_str(&format!(
        "\njudged: {}  unjudged: {unjudged}  missing answers: {skipped_missing}\n",
        verdicts.len()
    ));
    std::fs::write(out_dir.join("tally.txt"), &table)?;
    Ok(table)
}

pub async fn truthfulqa(out_dir: &Path, backends: &Backends, items_path: &Path) -> Result<String> {
    std::fs::create_dir_all(out_dir)?;
    if !items_path.exists() {
        bail!("missing input: expected item file {}", items_path.display());
    }
    let items = load_truthfulqa_items(items_path)
        .with_context(|| format!("reading {}", items_path.display()))?;
    let report = truthfulqa_mc(&items, backends.aux.as_ref()).await?;
    std::fs::write(
        out_dir.join("truthfulqa-report.json"),
        serde_json::to_vec_pretty(&report)?,
    )?;
    Ok(format!(
        "items: {}  correct: {}  unparseable: {}  accuracy: {:.4}\n",
        report.total, report.correct, report.unparseable, report.accuracy
    ))
}
