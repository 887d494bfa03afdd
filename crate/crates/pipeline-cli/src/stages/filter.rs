//! The filter stage: politeness stripping, quality gate, and dedup over a
//! dialogue file, with a conservation report.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use core_model::{Dialogue, Record, WhitespaceTokenizer};
use refinery::{filter_dialogues, PolitenessPhrases, QualityBounds};

use crate::config::Config;
use crate::manifest::RunManifest;
use crate::stages::simulate::RejectRecord;

pub fn run(config: &Config, out_dir: &Path, input: &Path) -> Result<RunManifest> {
    std::fs::create_dir_all(out_dir)?;
    if !input.exists() {
        bail!(
            "missing input: expected dialogue file {} (run the simulate stage first)",
            input.display()
        );
    }
    let records =
        core_model::read_records(input).with_context(|| format!("reading {}", input.display()))?;
    let dialogues: Vec<Dialogue> = records
        .into_iter()
        .filter_map(|r| match r {
            Record::Dialogue(d) => Some(d),
            Record::OpeningLine(_) => None,
        })
        .collect();

    let phrases = match &config.filter.politeness_file {
        Some(path) => {
            let raw = std::fs::read_to_string(path)
                .with_context(|| format!("reading politeness file {}", path.display()))?;
            PolitenessPhrases::parse(&raw).map_err(|e| anyhow::anyhow!(e))?
        }
        None => PolitenessPhrases::builtin(),
    };
    let detector = chat_simulator::RoleExchangeDetector::builtin();
    let bounds = QualityBounds {
        min_turn_tokens: config.filter.min_turn_tokens,
        max_turn_tokens: config.filter.max_turn_tokens,
        max_turns: config.simulate.max_rounds * 2,
        expected_opening: None,
        detector: Some(&detector),
    };

    let input_count = dialogues.len() as u64;
    let outcome = filter_dialogues(
        dialogues,
        config.filter.min_rounds,
        &phrases,
        &bounds,
        &WhitespaceTokenizer,
    );

    let filtered_path = out_dir.join("filtered.jsonl");
    let kept_records: Vec<Record> = outcome
        .kept
        .iter()
        .map(|d| Record::Dialogue(d.clone()))
        .collect();
    core_model::write_records(&filtered_path, &kept_records)?;

    let rejects_path = out_dir.join("filter-rejects.jsonl");
    {
        let tmp = rejects_path.with_extension("tmp");
        let mut file = std::fs::File::create(&tmp)?;
        for (dialogue, reason) in &outcome.rejects {
            let record = RejectRecord {
                reason: reason.clone(),
                dialogue: dialogue.clone(),
            };
            file.write_all(serde_json::to_string(&record)?.as_bytes())?;
            file.write_all(b"\n")?;
        }
        file.flush()?;
        std::fs::rename(&tmp, &rejects_path)?;
    }

    let report_path = out_dir.join("filter-report.json");
    std::fs::write(&report_path, serde_json::to_vec_pretty(&outcome.report)?)?;

    if !outcome.report.is_conserved() {
        bail!(
            "filter report does not conserve records: {:?}",
            outcome.report
        );
    }

    let mut counts = BTreeMap::from([
        ("dialogues_in".to_string(), input_count),
        ("kept".to_string(), outcome.report.kept_count),
        ("dropped".to_string(), outcome.report.dropped_total()),
    ]);
    for (rule, count) in &outcome.report.drops {
        counts.insert(format!("drop:{rule}"), *count);
    }

    let manifest = RunManifest {
        stage: "filter".into(),
        job_id: core_model::content_id("job", &["filter", &config.fingerprint()]),
        config_fingerprint: config.fingerprint(),
        seed: config.seed,
        version: env!("CARGO_PKG_VERSION").into(),
        backend_fingerprints: BTreeMap::new(),
        counts,
        effective_config: serde_json::to_value(config)?,
    };
    manifest.save(out_dir)?;
    Ok(manifest)
}
