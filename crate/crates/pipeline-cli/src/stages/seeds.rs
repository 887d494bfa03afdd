//! The seeds stage: build and sample opening-line pools for all three sectors.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{Context, Result};
use core_model::{seed_split, MaterialCatalog, OpeningLine, Record, Sector};
use futures::stream::{self, StreamExt, TryStreamExt};
use seed_factory::{
    concat_material, entity_questions, load_corpus, load_entities, material_instructions,
    meta_topics, pick_template, sample_corpus, sample_entities, sample_openings,
    world_questions_for_topic, writing_instructions, EntityFanout, FanoutReading,
};

use crate::backends::Backends;
use crate::config::Config;
use crate::manifest::RunManifest;

pub async fn run(config: &Config, out_dir: &Path, backends: &Backends) -> Result<RunManifest> {
    std::fs::create_dir_all(out_dir)?;
    let catalog = MaterialCatalog::builtin();
    let generator = backends.assistant.as_ref();
    let cfg = &config.seeds;
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();

    // sector 1: topic fan-out plus entity questions
    let mut world_pool: Vec<OpeningLine> = Vec::new();
    for topic in meta_topics().iter().take(cfg.topics) {
        let openings = world_questions_for_topic(
            topic,
            cfg.subtopics_per_topic,
            cfg.questions_per_subtopic,
            cfg.expansions_per_question,
            generator,
        )
        .await
        .with_context(|| format!("expanding topic {}", topic.name))?;
        world_pool.extend(openings);
    }
    let entities = match &cfg.entity_file {
        Some(path) => load_entities(path)
            .with_context(|| format!("reading entity file {}", path.display()))?,
        None => sample_entities(),
    };
    let fanout = EntityFanout {
        meta: cfg.entity_meta,
        specific: cfg.entity_specific,
        extended: cfg.entity_extended,
        reading: match cfg.entity_reading.as_str() {
            "per_entity" => FanoutReading::PerEntity,
            _ => FanoutReading::PerMeta,
        },
    };
    let fanout_ref = &fanout;
    let per_entity: Vec<Vec<OpeningLine>> =
        stream::iter(entities.iter().take(cfg.entities).map(|entity| async move {
            let questions = entity_questions(entity, fanout_ref, generator)
                .await
                .with_context(|| format!("deriving questions for {}", entity.entity_name))?;
            Ok::<_, anyhow::Error>(questions.into_openings())
        }))
        .buffered(config.concurrency.max(1))
        .try_collect()
        .await?;
    world_pool.extend(per_entity.into_iter().flatten());
    counts.insert("world_pool_pre_dedup".into(), world_pool.len() as u64);

    // sector 2: writing instructions per material type
    let mut creation_pool: Vec<OpeningLine> = Vec::new();
    for material in catalog.types() {
        let openings = writing_instructions(
            material,
            cfg.writing_per_type,
            cfg.refine_fraction,
            config.seed,
            generator,
        )
        .await
        .with_context(|| format!("writing instructions for {}", material.slug))?;
        creation_pool.extend(openings);
    }
    counts.insert("creation_pool_pre_dedup".into(), creation_pool.len() as u64);

    // sector 3: classified corpus pieces concatenated with instructions
    let pieces = match &cfg.corpus_file {
        Some(path) => load_corpus(path, &catalog)
            .with_context(|| format!("reading corpus file {}", path.display()))?,
        None => sample_corpus(&catalog),
    };
    let seed = config.seed;
    let per_piece: Vec<Vec<OpeningLine>> = stream::iter(pieces.iter().map(|piece| async move {
        let instructions = material_instructions(piece, cfg.instructions_per_piece, generator)
            .await
            .with_context(|| format!("instructions for {}", piece.source_url))?;
        let mut openings = Vec::with_capacity(instructions.len());
        for instruction in instructions {
            let template_id = pick_template(seed, &piece.id, &instruction);
            openings.push(concat_material(piece, &instruction, template_id)?);
        }
        Ok::<_, anyhow::Error>(openings)
    }))
    .buffered(config.concurrency.max(1))
    .try_collect()
    .await?;
    let material_pool: Vec<OpeningLine> = per_piece.into_iter().flatten().collect();
    counts.insert("material_pool_pre_dedup".into(), material_pool.len() as u64);

    let mut all = Vec::new();
    for (sector, pool) in [
        (Sector::WorldQuestions, world_pool),
        (Sector::CreationGeneration, creation_pool),
        (Sector::MaterialAssistance, material_pool),
    ] {
        let sampled = finish_pool(pool, sector, cfg, config.seed, &mut counts)?;
        let path = out_dir.join(format!("openings-{sector}.jsonl"));
        write_openings(&path, &sampled)?;
        all.extend(sampled);
    }
    counts.insert("openings_total".into(), all.len() as u64);
    write_openings(&out_dir.join("openings.jsonl"), &all)?;

    let manifest = RunManifest {
        stage: "seeds".into(),
        job_id: core_model::content_id("job", &["seeds", &config.fingerprint()]),
        config_fingerprint: config.fingerprint(),
        seed: config.seed,
        version: env!("CARGO_PKG_VERSION").into(),
        backend_fingerprints: BTreeMap::from([("generator".to_string(), generator.fingerprint())]),
        counts,
        effective_config: serde_json::to_value(config)?,
    };
    manifest.save(out_dir)?;
    Ok(manifest)
}

fn finish_pool(
    pool: Vec<OpeningLine>,
    sector: Sector,
    cfg: &crate::config::SeedsCfg,
    seed: u64,
    counts: &mut BTreeMap<String, u64>,
) -> Result<Vec<OpeningLine>> {
    let sized: Vec<OpeningLine> = pool
        .into_iter()
        .filter(|o| {
            let chars = o.text.chars().count();
            chars >= cfg.min_opening_chars && chars <= cfg.max_opening_chars
        })
        .collect();
    let (deduped, report) = refinery::dedup_openings(sized);
    counts.insert(
        format!("{sector}_duplicates_dropped"),
        report.dropped_total(),
    );

    let n = cfg.sample_per_sector.min(deduped.len());
    if n < cfg.sample_per_sector {
        tracing::warn!(
            sector = %sector,
            available = deduped.len(),
            requested = cfg.sample_per_sector,
            "pool smaller than requested sample, taking the whole pool"
        );
    }
    let sampled = sample_openings(&deduped, n, seed_split(seed, &format!("sample:{sector}")))?;
    counts.insert(format!("{sector}_sampled"), sampled.len() as u64);
    Ok(sampled)
}

fn write_openings(path: &Path, openings: &[OpeningLine]) -> Result<()> {
    let records: Vec<Record> = openings
        .iter()
        .map(|o| Record::OpeningLine(o.clone()))
        .collect();
    core_model::write_records(path, &records)?;
    Ok(())
}
