//! `selfchat`: synthesize multi-turn instructional dialogues end to end.
//!
//! Stages: seeds (opening-line pools for three sectors), simulate (two-agent
//! dialogue loop), filter (politeness stripping and quality gates), stats
//! (dataset report), and the evaluation commands (pairwise comparison,
//! independent scoring, true/false benchmark).

mod backends;
mod config;
mod manifest;
mod stages;

use std::path::PathBuf;

use anyhow::Result;
use clap::{Parser, Subcommand};

use config::{BackendChoice, Overrides};

#[derive(Parser)]
#[command(
    name = "selfchat",
    version,
    about = "Synthetic multi-turn dialogue pipeline"
)]
struct Cli {
    /// Configuration file (TOML). Defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Root random seed; every stage derives its own stream from it.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Backend profile.
    #[arg(long, global = true, value_enum)]
    backend: Option<BackendChoice>,

    /// Bounded number of in-flight backend calls.
    #[arg(long, global = true)]
    concurrency: Option<usize>,

    /// Output directory for artifacts, manifests, and checkpoints.
    #[arg(long, global = true, default_value = "out")]
    out_dir: PathBuf,

    /// Continue an interrupted resumable stage instead of starting over.
    #[arg(long, global = true)]
    resume: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate and sample opening-line pools for all three sectors.
    Seeds {
        /// Override the per-sector sample size.
        #[arg(long)]
        sample_per_sector: Option<usize>,
        /// Override how many of the 30 meta-topics to expand.
        #[arg(long)]
        topics: Option<usize>,
        /// Override subtopics per meta-topic (allowed range 30..=50).
        #[arg(long)]
        subtopics_per_topic: Option<usize>,
        /// Override questions per subtopic.
        #[arg(long)]
        questions_per_subtopic: Option<usize>,
        /// Override expansions per question.
        #[arg(long)]
        expansions_per_question: Option<usize>,
        /// Override the refined fraction of writing instructions.
        #[arg(long)]
        refine_fraction: Option<f64>,
    },
    /// Turn opening lines into dialogues with the two-agent loop.
    Simulate {
        /// Opening-line file; defaults to `<out-dir>`/openings.jsonl.
        #[arg(long)]
        openings: Option<PathBuf>,
        /// Override the maximum rounds per dialogue.
        #[arg(long)]
        max_rounds: Option<usize>,
    },
    /// Strip politeness, apply quality gates, and dedup a dialogue file.
    Filter {
        /// Dialogue file; defaults to `<out-dir>`/dialogues.jsonl.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Compute the dataset report for a dialogue file.
    Stats {
        /// Dialogue file; defaults to `<out-dir>`/filtered.jsonl.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Dataset name shown in the table.
        #[arg(long, default_value = "dataset")]
        name: String,
    },
    /// Pairwise-compare two models' answers with the judge.
    EvalCompare {
        #[arg(long)]
        eval_set: PathBuf,
        #[arg(long)]
        name_a: String,
        #[arg(long)]
        answers_a: PathBuf,
        #[arg(long)]
        name_b: String,
        #[arg(long)]
        answers_b: PathBuf,
    },
    /// Independently score one model's answers with the judge.
    EvalScore {
        #[arg(long)]
        eval_set: PathBuf,
        #[arg(long)]
        name: String,
        #[arg(long)]
        answers: PathBuf,
    },
    /// Ask the model whether each answer candidate is true or false.
    EvalTruthfulqa {
        /// JSONL items: {"question", "answer", "label"}.
        #[arg(long)]
        items: PathBuf,
    },
    /// Render stats report files as one aligned table.
    Report {
        /// One or more stats-report.json files.
        #[arg(long, required = true, num_args = 1..)]
        reports: Vec<PathBuf>,
    },
}

#[tokio::main]
async fn main() -> Result<()> {
    tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env()
                .unwrap_or_else(|_| tracing_subscriber::EnvFilter::new("info")),
        )
        .with_writer(std::io::stderr)
        .init();

    let cli = Cli::parse();
    let mut overrides = Overrides {
        seed: cli.seed,
        backend: cli.backend,
        concurrency: cli.concurrency,
        ..Default::default()
    };
    if let Command::Simulate { max_rounds, .. } = &cli.command {
        overrides.max_rounds = *max_rounds;
    }
    if let Command::Seeds {
        sample_per_sector,
        topics,
        subtopics_per_topic,
        questions_per_subtopic,
        expansions_per_question,
        refine_fraction,
    } = &cli.command
    {
        overrides.sample_per_sector = *sample_per_sector;
        overrides.topics = *topics;
        overrides.subtopics_per_topic = *subtopics_per_topic;
        overrides.questions_per_subtopic = *questions_per_subtopic;
        overrides.expansions_per_question = *expansions_per_question;
        overrides.refine_fraction = *refine_fraction;
    }
    let config = config::load_config(cli.config.as_deref(), &overrides)?;
    let out_dir = cli.out_dir;

    match cli.command {
        Command::Seeds { .. } => {
            let backends = backends::build(&config)?;
            let manifest = stages::seeds::run(&config, &out_dir, &backends).await?;
            println!(
                "seeds complete: {} openings -> {}",
                manifest.counts.get("openings_total").unwrap_or(&0),
                out_dir.join("openings.jsonl").display()
            );
        }
        Command::Simulate { openings, .. } => {
            let backends = backends::build(&config)?;
            let openings_path = openings.unwrap_or_else(|| out_dir.join("openings.jsonl"));
            let manifest =
                stages::simulate::run(&config, &out_dir, &backends, &openings_path, cli.resume)
                    .await?;
            println!(
                "simulate complete: {} in, {} dialogues, {} rejects",
                manifest.counts.get("openings_in").unwrap_or(&0),
                manifest.counts.get("dialogues_out").unwrap_or(&0),
                manifest.counts.get("rejects_out").unwrap_or(&0),
            );
        }
        Command::Filter { input } => {
            let input = input.unwrap_or_else(|| out_dir.join("dialogues.jsonl"));
            let manifest = stages::filter::run(&config, &out_dir, &input)?;
            println!(
                "filter complete: {} in, {} kept, {} dropped",
                manifest.counts.get("dialogues_in").unwrap_or(&0),
                manifest.counts.get("kept").unwrap_or(&0),
                manifest.counts.get("dropped").unwrap_or(&0),
            );
        }
        Command::Stats { input, name } => {
            let backends = backends::build(&config)?;
            let input = input.unwrap_or_else(|| out_dir.join("filtered.jsonl"));
            let table = stages::stats::run(&config, &out_dir, &input, &backends, &name).await?;
            print!("{table}");
        }
        Command::EvalCompare {
            eval_set,
            name_a,
            answers_a,
            name_b,
            answers_b,
        } => {
            let backends = backends::build(&config)?;
            let table = stages::eval::compare(
                &config,
                &out_dir,
                &backends,
                &eval_set,
                (&name_a, &answers_a),
                (&name_b, &answers_b),
            )
            .await?;
            print!("{table}");
        }
        Command::EvalScore {
            eval_set,
            name,
            answers,
        } => {
            let backends = backends::build(&config)?;
            let table =
                stages::eval::score(&config, &out_dir, &backends, &eval_set, (&name, &answers))
                    .await?;
            print!("{table}");
        }
        Command::EvalTruthfulqa { items } => {
            let backends = backends::build(&config)?;
            let summary = stages::eval::truthfulqa(&out_dir, &backends, &items).await?;
            print!("{summary}");
        }
        Command::Report { reports } => {
            let mut parsed = Vec::new();
            for path in &reports {
                let raw = std::fs::read_to_string(path)
                    .map_err(|e| anyhow::anyhow!("reading {}: {e}", path.display()))?;
                parsed.push(serde_json::from_str(&raw)?);
            }
            print!("{}", corpus_stats::render_report_table(&parsed));
        }
    }
    Ok(())
}
