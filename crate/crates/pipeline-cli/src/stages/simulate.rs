//! The simulate stage: one dialogue per opening line, streamed to disk in
//! input order with periodic checkpoints so an interrupted run resumes to a
//! byte-identical output set.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use chat_simulator::{
    persona_catalog, RoleExchangeDetector, SimulationConfig, SimulationOutcome, Simulator,
};
use core_model::{seed_split, OpeningLine, Record, WhitespaceTokenizer};
use futures::StreamExt;
use serde::{Deserialize, Serialize};

use crate::backends::Backends;
use crate::config::Config;
use crate::manifest::{reconcile_jsonl, JobState, RunManifest};

/// One line of the rejects file.
#[derive(Debug, Serialize, Deserialize)]
pub struct RejectRecord {
    pub reason: String,
    pub dialogue: core_model::Dialogue,
}

pub async fn run(
    config: &Config,
    out_dir: &Path,
    backends: &Backends,
    openings_path: &Path,
    resume: bool,
) -> Result<RunManifest> {
    std::fs::create_dir_all(out_dir)?;
    if !openings_path.exists() {
        bail!(
            "missing input: expected opening-line file {} (run the seeds stage first)",
            openings_path.display()
        );
    }

    let records = core_model::read_records(openings_path)
        .with_context(|| format!("reading {}", openings_path.display()))?;
    let openings: Vec<OpeningLine> = records
        .into_iter()
        .filter_map(|r| match r {
            Record::OpeningLine(o) => Some(o),
            Record::Dialogue(_) => None,
        })
        .collect();

    let fingerprint = config.fingerprint();
    let dialogues_path = out_dir.join("dialogues.jsonl");
    let rejects_path = out_dir.join("rejects.jsonl");

    let mut state = match (resume, JobState::load(out_dir, "simulate")?) {
        (true, Some(existing)) => {
            existing.check_fingerprint(&fingerprint)?;
            existing
        }
        _ => {
            // fresh run: clear any previous outputs
            let _ = std::fs::remove_file(&dialogues_path);
            let _ = std::fs::remove_file(&rejects_path);
            let _ = std::fs::remove_file(JobState::path(out_dir, "simulate"));
            // keyed on the input's file name, not its absolute path, so runs
            // in different directories stay byte-identical
            let input_name = openings_path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            JobState::new("simulate", &fingerprint, &input_name)
        }
    };

    // outputs are the source of truth for progress; drop any partial line a
    // crash left behind
    let done_dialogues = reconcile_jsonl(&dialogues_path)?;
    let done_rejects = reconcile_jsonl(&rejects_path)?;
    let already_done = done_dialogues + done_rejects;
    if already_done > openings.len() {
        bail!(
            "output files contain {} records but the input has only {} openings; \
             wrong --out-dir?",
            already_done,
            openings.len()
        );
    }
    // completion order equals input order, so the completed set is exactly
    // the processed input prefix; rebuilding it here also repairs a
    // checkpoint that lagged behind the output files at the crash point
    state.completed = openings[..already_done].iter().map(|o| o.id.clone()).collect();

    let detector = RoleExchangeDetector::builtin();
    let tokenizer = WhitespaceTokenizer;
    let simulator = Simulator {
        user_backend: backends.user.as_ref(),
        assistant_backend: backends.assistant.as_ref(),
        detector: &detector,
        tokenizer: &tokenizer,
    };
    let personas = persona_catalog();

    let mut dialogues_file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(&dialogues_path)?;
    let mut rejects_file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(&rejects_path)?;

    let pending = &openings[already_done..];
    let simulate_cfg = &config.simulate;
    let seed = config.seed;
    let personas_ref = &personas;
    let simulator_ref = &simulator;

    // bounded concurrency with input-order completion
    let mut stream = futures::stream::iter(pending.iter().map(|opening| async move {
        let persona_index = (seed_split(seed, &format!("persona:{}", opening.id))
            % personas_ref.len() as u64) as usize;
        let persona = &personas_ref[persona_index];
        let mut sim = SimulationConfig::for_sector(opening.sector);
        sim.max_rounds = simulate_cfg.max_rounds;
        sim.min_rounds = simulate_cfg.min_rounds;
        sim.user_temperature = simulate_cfg.user_temperature;
        sim.assistant_temperature = simulate_cfg.assistant_temperature;
        sim.max_output_tokens = simulate_cfg.max_output_tokens;
        sim.assistant_system_prompt = simulate_cfg.assistant_system_prompt.clone();
        simulator_ref
            .simulate_dialogue(opening, persona, &sim)
            .await
    }))
    .buffered(config.concurrency.max(1));

    let mut kept = done_dialogues as u64;
    let mut rejected = done_rejects as u64;
    let mut since_checkpoint = 0usize;
    while let Some(outcome) = stream.next().await {
        let outcome = outcome?;
        let id = outcome.dialogue().opening_id.clone();
        match outcome {
            SimulationOutcome::Kept(dialogue) => {
                let line = core_model::serialize_record(&Record::Dialogue(dialogue));
                dialogues_file.write_all(line.as_bytes())?;
                dialogues_file.write_all(b"\n")?;
                dialogues_file.flush()?;
                kept += 1;
            }
            SimulationOutcome::Rejected(r) => {
                let record = RejectRecord {
                    reason: r.reason.to_string(),
                    dialogue: r.dialogue,
                };
                rejects_file.write_all(serde_json::to_string(&record)?.as_bytes())?;
                rejects_file.write_all(b"\n")?;
                rejects_file.flush()?;
                rejected += 1;
            }
        }
        state.completed.push(id);
        since_checkpoint += 1;
        if since_checkpoint >= simulate_cfg.checkpoint_every {
            checkpoint(&mut state, kept, rejected, out_dir)?;
            since_checkpoint = 0;
        }
    }
    checkpoint(&mut state, kept, rejected, out_dir)?;

    // conservation: every opening is accounted for exactly once
    if kept + rejected != openings.len() as u64 {
        bail!(
            "conservation violated: {} openings in, {} dialogues + {} rejects out",
            openings.len(),
            kept,
            rejected
        );
    }

    let manifest = RunManifest {
        stage: "simulate".into(),
        job_id: state.job_id.clone(),
        config_fingerprint: fingerprint,
        seed: config.seed,
        version: env!("CARGO_PKG_VERSION").into(),
        backend_fingerprints: BTreeMap::from([
            ("user".to_string(), backends.user.fingerprint()),
            ("assistant".to_string(), backends.assistant.fingerprint()),
        ]),
        counts: BTreeMap::from([
            ("openings_in".to_string(), openings.len() as u64),
            ("dialogues_out".to_string(), kept),
            ("rejects_out".to_string(), rejected),
        ]),
        effective_config: serde_json::to_value(config)?,
    };
    manifest.save(out_dir)?;
    Ok(manifest)
}

fn checkpoint(state: &mut JobState, kept: u64, rejected: u64, out_dir: &Path) -> Result<()> {
    state.counters.insert("dialogues".into(), kept);
    state.counters.insert("rejects".into(), rejected);
    state.save(out_dir)
}
