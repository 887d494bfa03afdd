//! Effective configuration: defaults, TOML file, environment variables, and
//! CLI flags, in ascending precedence. Unknown keys fail closed with a
//! nearest-key suggestion.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum BackendChoice {
    Mock,
    Live,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MockCfg {
    pub latency_ms: u64,
    pub embedding_dim: usize,
}

impl Default for MockCfg {
    fn default() -> Self {
        MockCfg {
            latency_ms: 0,
            embedding_dim: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LiveCfg {
    pub base_url: String,
    pub chat_model: String,
    pub user_chat_model: Option<String>,
    pub embedding_model: String,
    pub api_key_env: String,
    pub requests_per_minute: usize,
    pub cache_dir: Option<PathBuf>,
    pub max_attempts: u32,
}

impl Default for LiveCfg {
    fn default() -> Self {
        LiveCfg {
            base_url: "https://api.openai.com/v1".into(),
            chat_model: "gpt-3.5-turbo".into(),
            user_chat_model: None,
            embedding_model: "text-embedding-ada-002".into(),
            api_key_env: "OPENAI_API_KEY".into(),
            requests_per_minute: 60,
            cache_dir: None,
            max_attempts: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SeedsCfg {
    /// How many of the 30 meta-topics to expand.
    pub topics: usize,
    pub subtopics_per_topic: usize,
    pub questions_per_subtopic: usize,
    pub expansions_per_question: usize,
    pub entities: usize,
    pub entity_meta: usize,
    pub entity_specific: usize,
    pub entity_extended: usize,
    pub entity_reading: String,
    pub writing_per_type: usize,
    pub refine_fraction: f64,
    pub instructions_per_piece: usize,
    pub sample_per_sector: usize,
    pub min_opening_chars: usize,
    pub max_opening_chars: usize,
    pub entity_file: Option<PathBuf>,
    pub corpus_file: Option<PathBuf>,
}

impl Default for SeedsCfg {
    fn default() -> Self {
        SeedsCfg {
            topics: 2,
            subtopics_per_topic: 30,
            questions_per_subtopic: 5,
            expansions_per_question: 3,
            entities: 3,
            entity_meta: 5,
            entity_specific: 10,
            entity_extended: 20,
            entity_reading: "per_meta".into(),
            writing_per_type: 5,
            refine_fraction: 0.8,
            instructions_per_piece: 5,
            sample_per_sector: 40,
            min_opening_chars: 2,
            max_opening_chars: 4000,
            entity_file: None,
            corpus_file: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulateCfg {
    pub max_rounds: usize,
    pub min_rounds: usize,
    pub user_temperature: f64,
    pub assistant_temperature: f64,
    pub max_output_tokens: u32,
    /// `None` disables the assistant system prompt entirely.
    pub assistant_system_prompt: Option<String>,
    pub checkpoint_every: usize,
}

impl Default for SimulateCfg {
    fn default() -> Self {
        SimulateCfg {
            max_rounds: 8,
            min_rounds: 2,
            user_temperature: 1.0,
            assistant_temperature: 0.7,
            max_output_tokens: 512,
            assistant_system_prompt: Some("You are a helpful and detailed assistant.".into()),
            checkpoint_every: 25,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FilterCfg {
    pub min_turn_tokens: usize,
    pub max_turn_tokens: usize,
    pub min_rounds: usize,
    pub politeness_file: Option<PathBuf>,
}

impl Default for FilterCfg {
    fn default() -> Self {
        FilterCfg {
            min_turn_tokens: 1,
            max_turn_tokens: 4096,
            min_rounds: 2,
            politeness_file: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StatsCfg {
    pub sample_n: usize,
    pub with_lexical: bool,
    pub with_topic_diversity: bool,
    pub with_coherence: bool,
    pub mtld_threshold: f64,
    pub min_mtld_tokens: usize,
}

impl Default for StatsCfg {
    fn default() -> Self {
        StatsCfg {
            sample_n: 10_000,
            with_lexical: true,
            with_topic_diversity: true,
            with_coherence: false,
            mtld_threshold: 0.72,
            min_mtld_tokens: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub seed: u64,
    pub backend: BackendChoice,
    pub concurrency: usize,
    pub mock: MockCfg,
    pub live: LiveCfg,
    pub seeds: SeedsCfg,
    pub simulate: SimulateCfg,
    pub filter: FilterCfg,
    pub stats: StatsCfg,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 42,
            backend: BackendChoice::Mock,
            concurrency: 4,
            mock: MockCfg::default(),
            live: LiveCfg::default(),
            seeds: SeedsCfg::default(),
            simulate: SimulateCfg::default(),
            filter: FilterCfg::default(),
            stats: StatsCfg::default(),
        }
    }
}

impl Config {
    /// Hash of the effective configuration; resume refuses to continue a job
    /// whose fingerprint changed.
    pub fn fingerprint(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(canonical.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// CLI-level overrides, applied last.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub backend: Option<BackendChoice>,
    pub concurrency: Option<usize>,
    pub max_rounds: Option<usize>,
    pub sample_per_sector: Option<usize>,
    pub topics: Option<usize>,
    pub subtopics_per_topic: Option<usize>,
    pub questions_per_subtopic: Option<usize>,
    pub expansions_per_question: Option<usize>,
    pub refine_fraction: Option<f64>,
}

/// Precedence: CLI flag > environment variable > config file > default.
pub fn load_config(path: Option<&Path>, overrides: &Overrides) -> Result<Config> {
    let mut config = match path {
        Some(path) => {
            let raw = std::fs::read_to_string(path)
                .with_context(|| format!("reading config file {}", path.display()))?;
            let value: toml::Value = raw.parse().context("parsing config file")?;
            check_unknown_keys(&value)?;
            value.try_into().context("deserializing config file")?
        }
        None => Config::default(),
    };

    if let Some(seed) = env_var("SELFCHAT_SEED")? {
        config.seed = seed.parse().context("SELFCHAT_SEED must be an integer")?;
    }
    if let Some(backend) = env_var("SELFCHAT_BACKEND")? {
        config.backend = match backend.as_str() {
            "mock" => BackendChoice::Mock,
            "live" => BackendChoice::Live,
            other => bail!("SELFCHAT_BACKEND must be mock or live, got {other}"),
        };
    }
    if let Some(concurrency) = env_var("SELFCHAT_CONCURRENCY")? {
        config.concurrency = concurrency
            .parse()
            .context("SELFCHAT_CONCURRENCY must be an integer")?;
    }

    if let Some(seed) = overrides.seed {
        config.seed = seed;
    }
    if let Some(backend) = overrides.backend {
        config.backend = backend;
    }
    if let Some(concurrency) = overrides.concurrency {
        config.concurrency = concurrency;
    }
    if let Some(max_rounds) = overrides.max_rounds {
        config.simulate.max_rounds = max_rounds;
    }
    if let Some(sample) = overrides.sample_per_sector {
        config.seeds.sample_per_sector = sample;
    }
    if let Some(topics) = overrides.topics {
        config.seeds.topics = topics;
    }
    if let Some(n) = overrides.subtopics_per_topic {
        config.seeds.subtopics_per_topic = n;
    }
    if let Some(n) = overrides.questions_per_subtopic {
        config.seeds.questions_per_subtopic = n;
    }
    if let Some(n) = overrides.expansions_per_question {
        config.seeds.expansions_per_question = n;
    }
    if let Some(fraction) = overrides.refine_fraction {
        config.seeds.refine_fraction = fraction;
    }

    if config.concurrency == 0 {
        bail!("concurrency must be at least 1");
    }
    Ok(config)
}

fn env_var(name: &str) -> Result<Option<String>> {
    match std::env::var(name) {
        Ok(v) if v.is_empty() => Ok(None),
        Ok(v) => Ok(Some(v)),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(e).with_context(|| format!("reading {name}")),
    }
}

const TOP_KEYS: &[&str] = &[
    "seed",
    "backend",
    "concurrency",
    "mock",
    "live",
    "seeds",
    "simulate",
    "filter",
    "stats",
];

fn section_keys(section: &str) -> Option<&'static [&'static str]> {
    match section {
        "mock" => Some(&["latency_ms", "embedding_dim"]),
        "live" => Some(&[
            "base_url",
            "chat_model",
            "user_chat_model",
            "embedding_model",
            "api_key_env",
            "requests_per_minute",
            "cache_dir",
            "max_attempts",
        ]),
        "seeds" => Some(&[
            "topics",
            "subtopics_per_topic",
            "questions_per_subtopic",
            "expansions_per_question",
            "entities",
            "entity_meta",
            "entity_specific",
            "entity_extended",
            "entity_reading",
            "writing_per_type",
            "refine_fraction",
            "instructions_per_piece",
            "sample_per_sector",
            "min_opening_chars",
            "max_opening_chars",
            "entity_file",
            "corpus_file",
        ]),
        "simulate" => Some(&[
            "max_rounds",
            "min_rounds",
            "user_temperature",
            "assistant_temperature",
            "max_output_tokens",
            "assistant_system_prompt",
            "checkpoint_every",
        ]),
        "filter" => Some(&[
            "min_turn_tokens",
            "max_turn_tokens",
            "min_rounds",
            "politeness_file",
        ]),
        "stats" => Some(&[
            "sample_n",
            "with_lexical",
            "with_topic_diversity",
            "with_coherence",
            "mtld_threshold",
            "min_mtld_tokens",
        ]),
        _ => None,
    }
}

fn check_unknown_keys(value: &toml::Value) -> Result<()> {
    let Some(table) = value.as_table() else {
        bail!("config root must be a table");
    };
    for (key, sub) in table {
        if !TOP_KEYS.contains(&key.as_str()) {
            bail!("unknown config key `{key}`{}", suggest(key, TOP_KEYS));
        }
        if let (Some(known), Some(section)) = (section_keys(key), sub.as_table()) {
            for section_key in section.keys() {
                if !known.contains(&section_key.as_str()) {
                    bail!(
                        "unknown config key `{key}.{section_key}`{}",
                        suggest(section_key, known)
                    );
                }
            }
        }
    }
    Ok(())
}

fn suggest(key: &str, known: &[&str]) -> String {
    known
        .iter()
        .map(|k| (edit_distance(key, k), *k))
        .filter(|(d, _)| *d <= 3)
        .min()
        .map(|(_, k)| format!(" (did you mean `{k}`?)"))
        .unwrap_or_default()
}

fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut previous: Vec<usize> = (0..=b.len()).collect();
    for (i, &ca) in a.iter().enumerate() {
        let mut current = vec![i + 1];
        for (j, &cb) in b.iter().enumerate() {
            let substitution = previous[j] + usize::from(ca != cb);
            current.push(substitution.min(previous[j + 1] + 1).min(current[j] + 1));
        }
        previous = current;
    }
    previous[b.len()]
}
