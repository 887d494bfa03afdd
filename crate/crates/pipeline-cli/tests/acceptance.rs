//! Acceptance suite. One test per criterion; each prints a PASS line on
//! success (visible with --nocapture) and cargo's own per-test lines give the
//! pass/fail summary. Criterion 11 is network-gated and skips unless a
//! downloaded shard path is supplied via ACCEPTANCE_SHARD_PATH.

use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use core_model::{validate_dialogue, Record, Sector, ValidationOptions, WhitespaceTokenizer};
use llm_gateway::{mock_embedding, EmbeddingVector};

fn selfchat() -> Command {
    Command::new(env!("CARGO_BIN_EXE_selfchat"))
}

fn run_ok(args: &[&str]) {
    let output = selfchat().args(args).output().expect("binary runs");
    assert!(
        output.status.success(),
        "command {args:?} failed:\n{}",
        String::from_utf8_lossy(&output.stderr)
    );
}

// ---------------------------------------------------------------------------
// criterion 1: MTLD oracle equivalence
// ---------------------------------------------------------------------------

/// Brute-force factor-count pass, independent of the library implementation:
/// recomputes the segment TTR from scratch at every position.
fn oracle_pass(tokens: &[&str], threshold: f64) -> f64 {
    let distinct = |segment: &[&str]| -> f64 {
        segment
            .iter()
            .map(|t| t.to_lowercase())
            .collect::<HashSet<_>>()
            .len() as f64
    };
    let mut factors = 0.0;
    let mut start = 0usize;
    for end in 0..tokens.len() {
        let segment = &tokens[start..=end];
        if distinct(segment) / segment.len() as f64 <= threshold {
            factors += 1.0;
            start = end + 1;
        }
    }
    if start < tokens.len() {
        let segment = &tokens[start..];
        let ttr = distinct(segment) / segment.len() as f64;
        factors += (1.0 - ttr) / (1.0 - threshold);
    }
    if factors == 0.0 {
        return tokens.len() as f64;
    }
    tokens.len() as f64 / factors
}

fn oracle_mtld(tokens: &[&str], threshold: f64) -> f64 {
    let reversed: Vec<&str> = tokens.iter().rev().copied().collect();
    (oracle_pass(tokens, threshold) + oracle_pass(&reversed, threshold)) / 2.0
}

fn lib_mtld(tokens: &[&str], threshold: f64) -> f64 {
    let owned: Vec<String> = tokens.iter().map(|t| t.to_string()).collect();
    corpus_stats::mtld(&owned, threshold).unwrap()
}

#[test]
fn criterion_01_mtld_oracle_equivalence() {
    let started = Instant::now();

    // hand-traced anchors
    assert!((lib_mtld(&["a", "a", "a", "a"], 0.72) - 2.0).abs() < 1e-9);
    assert!((lib_mtld(&["the", "cat", "sat", "on", "the", "mat"], 0.72) - 10.08).abs() < 1e-9);

    let fixed: Vec<Vec<&str>> = vec![
        vec!["a", "a", "a", "a"],
        vec!["the", "cat", "sat", "on", "the", "mat"],
        vec!["a", "b", "c", "d"],
        vec!["a"],
        vec!["a", "b"],
        vec!["a", "a", "b", "b"],
        vec!["a", "b", "a", "b", "a", "b"],
        vec!["x"; 30],
        vec!["x", "y", "z", "x", "y", "z", "x", "y"],
        vec!["To", "be", "or", "not", "to", "be"],
        vec![
            "the", "quick", "brown", "fox", "jumps", "over", "the", "lazy", "dog",
        ],
        vec!["one", "two", "one", "two", "three", "three", "one"],
        vec!["A", "a", "B", "b", "A", "a"],
        vec!["p", "q", "r", "s", "t", "u", "v", "w"],
        vec![
            "it", "was", "the", "best", "of", "times", "it", "was", "the", "worst",
        ],
        vec!["m", "m", "n", "m", "m", "n", "o", "o"],
        vec!["w1", "w2", "w3", "w1", "w1", "w1", "w4"],
        vec!["alpha", "beta", "alpha", "gamma", "beta", "alpha"],
        vec!["sun", "moon", "star", "sun", "moon", "star", "sun"],
        vec!["k", "k", "k", "l", "l", "l", "m", "m", "m", "n", "n", "n"],
        vec![
            "data", "drives", "the", "data", "pipeline", "and", "the", "pipeline",
        ],
        vec!["tick", "tock", "tick", "tock", "tick", "tock", "boom"],
    ];
    assert!(fixed.len() >= 20);
    for (i, corpus) in fixed.iter().enumerate() {
        let expected = oracle_mtld(corpus, 0.72);
        let got = lib_mtld(corpus, 0.72);
        assert!(
            (expected - got).abs() < 1e-9,
            "fixed corpus {i}: {expected} vs {got}"
        );
    }

    // 1,000 random sequences, lengths 1..=200, mixed repetitiveness
    use rand::Rng;
    let mut rng = rand_chacha_rng(77);
    let vocabulary: Vec<String> = (0..50).map(|i| format!("tok{i}")).collect();
    for case in 0..1000 {
        let len = rng.random_range(1..=200);
        let vocab = rng.random_range(1..=vocabulary.len());
        let tokens: Vec<&str> = (0..len)
            .map(|_| vocabulary[rng.random_range(0..vocab)].as_str())
            .collect();
        let expected = oracle_mtld(&tokens, 0.72);
        let got = lib_mtld(&tokens, 0.72);
        assert!(
            (expected - got).abs() < 1e-9,
            "case {case}: {expected} vs {got}"
        );
    }

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    eprintln!("ACCEPTANCE 1 (mtld oracle equivalence): PASS in {elapsed:?}");
}

fn rand_chacha_rng(seed: u64) -> rand_chacha::ChaCha20Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha20Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// criterion 2: topic diversity exact oracle
// ---------------------------------------------------------------------------

#[test]
fn criterion_02_topic_diversity_exact_oracle() {
    let started = Instant::now();
    let vectors: Vec<EmbeddingVector> = (0..50)
        .map(|i| mock_embedding(5, &format!("record number {i}"), 16))
        .collect();

    let mut sum = 0.0;
    let mut pairs = 0u64;
    for i in 0..vectors.len() {
        for j in (i + 1)..vectors.len() {
            sum += 1.0 - vectors[i].cosine_similarity(&vectors[j]);
            pairs += 1;
        }
    }
    assert_eq!(pairs, 50 * 49 / 2);
    let expected = sum / pairs as f64;

    let got = corpus_stats::mean_pairwise_cosine_distance(&vectors).unwrap();
    assert_eq!(
        expected.to_bits(),
        got.to_bits(),
        "bit-exact: {expected} vs {got}"
    );

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    eprintln!("ACCEPTANCE 2 (topic diversity exact oracle): PASS in {elapsed:?}");
}

// ---------------------------------------------------------------------------
// criterion 3: template fidelity
// ---------------------------------------------------------------------------

#[test]
fn criterion_03_template_fidelity() {
    let pairs: [(&str, &str); 3] = [
        ("The tide rose.", "Summarize the passage."),
        ("X", "Y"),
        ("Line one.\nLine two.", "Translate to French."),
    ];
    // golden strings frozen per template id and pair, newlines included
    let golden: [[&str; 3]; 7] = [
        [
            "The tide rose.\nSummarize the passage.",
            "X\nY",
            "Line one.\nLine two.\nTranslate to French.",
        ],
        [
            "The tide rose. Summarize the passage.",
            "X Y",
            "Line one.\nLine two. Translate to French.",
        ],
        [
            "Summarize the passage. Answer according to: The tide rose.",
            "Y Answer according to: X",
            "Translate to French. Answer according to: Line one.\nLine two.",
        ],
        [
            "The tide rose. Based on the passage above, Summarize the passage.",
            "X Based on the passage above, Y",
            "Line one.\nLine two. Based on the passage above, Translate to French.",
        ],
        [
            "Summarize the passage.: The tide rose.",
            "Y: X",
            "Translate to French.: Line one.\nLine two.",
        ],
        [
            "Given the text: The tide rose.\nSummarize the passage.",
            "Given the text: X\nY",
            "Given the text: Line one.\nLine two.\nTranslate to French.",
        ],
        [
            "Summarize the passage.\nGenerate according to: The tide rose.",
            "Y\nGenerate according to: X",
            "Translate to French.\nGenerate according to: Line one.\nLine two.",
        ],
    ];

    let templates = seed_factory::concat_templates();
    assert_eq!(templates.len(), 7);
    for (t, template) in templates.iter().enumerate() {
        assert_eq!(template.template_id as usize, t + 1);
        for (p, (text, instruction)) in pairs.iter().enumerate() {
            let rendered = seed_factory::render_template(template, text, instruction);
            assert_eq!(
                rendered,
                golden[t][p],
                "template {} pair {p} diverges from golden string",
                t + 1
            );
        }
    }
    eprintln!("ACCEPTANCE 3 (template fidelity, 7 x 3 golden strings): PASS");
}

// ---------------------------------------------------------------------------
// criterion 4: end-to-end mock pipeline
// ---------------------------------------------------------------------------

fn politeness_head(content: &str) -> bool {
    let lowered = content
        .trim_start_matches(|c: char| !c.is_alphanumeric())
        .to_lowercase();
    for phrase in ["thank you", "thanks"] {
        if let Some(rest) = lowered.strip_prefix(phrase) {
            if rest
                .chars()
                .next()
                .map(|c| !c.is_alphanumeric())
                .unwrap_or(true)
            {
                return true;
            }
        }
    }
    false
}

fn read_dialogues(path: &Path) -> Vec<core_model::Dialogue> {
    core_model::read_records(path)
        .unwrap()
        .into_iter()
        .filter_map(|r| match r {
            Record::Dialogue(d) => Some(d),
            Record::OpeningLine(_) => None,
        })
        .collect()
}

#[test]
fn criterion_04_end_to_end_mock_pipeline() {
    let started = Instant::now();
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();

    for dir in [&dir_a, &dir_b] {
        let out = dir.path().to_str().unwrap();
        run_ok(&["--out-dir", out, "--seed", "11", "seeds"]);
        run_ok(&["--out-dir", out, "--seed", "11", "simulate"]);
        run_ok(&["--out-dir", out, "--seed", "11", "filter"]);
    }

    let openings = core_model::read_records(&dir_a.path().join("openings.jsonl")).unwrap();
    assert!(openings.len() >= 100, "only {} openings", openings.len());

    let dialogues = read_dialogues(&dir_a.path().join("dialogues.jsonl"));
    let rejects = std::fs::read_to_string(dir_a.path().join("rejects.jsonl"))
        .map(|s| s.lines().count())
        .unwrap_or(0);
    assert!(dialogues.len() >= 100, "only {} dialogues", dialogues.len());
    assert_eq!(
        dialogues.len() + rejects,
        openings.len(),
        "conservation in == out + rejects"
    );

    let filtered = read_dialogues(&dir_a.path().join("filtered.jsonl"));
    assert!(!filtered.is_empty());

    // every output dialogue validates, spans all three sectors, and carries no
    // politeness-phrase heads in user turns
    let mut sectors = HashSet::new();
    for dialogue in &filtered {
        sectors.insert(dialogue.sector);
        let opts = ValidationOptions {
            max_turns: 16,
            expected_opening: None,
            tokenizer: Some(&WhitespaceTokenizer),
        };
        let validation = validate_dialogue(dialogue, &opts);
        assert!(
            validation.is_ok(),
            "dialogue {}: {:?}",
            dialogue.id,
            validation.violations
        );
        for turn in &dialogue.turns {
            if turn.role == core_model::Role::User {
                let head = turn.content.split(['.', '?', '!']).next().unwrap_or("");
                assert!(
                    !politeness_head(head),
                    "politeness head left in {:?}",
                    turn.content
                );
            }
        }
    }
    assert_eq!(
        sectors,
        HashSet::from([
            Sector::WorldQuestions,
            Sector::CreationGeneration,
            Sector::MaterialAssistance
        ]),
        "all three sectors present"
    );

    // second run with the same seed is byte-identical
    for file in [
        "openings.jsonl",
        "dialogues.jsonl",
        "rejects.jsonl",
        "filtered.jsonl",
        "filter-rejects.jsonl",
        "filter-report.json",
    ] {
        let a = std::fs::read(dir_a.path().join(file)).unwrap_or_default();
        let b = std::fs::read(dir_b.path().join(file)).unwrap_or_default();
        assert_eq!(a, b, "{file} differs between identical runs");
    }

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    eprintln!(
        "ACCEPTANCE 4 (end-to-end mock pipeline, {} dialogues in {elapsed:?}): PASS",
        dialogues.len()
    );
}

// ---------------------------------------------------------------------------
// criterion 5: crash-resume determinism
// ---------------------------------------------------------------------------

#[test]
fn criterion_05_crash_resume_determinism() {
    let shared = tempfile::tempdir().unwrap();
    let config_path = shared.path().join("config.toml");
    // per-call latency makes mid-run kills land reliably
    std::fs::write(&config_path, "seed = 13\n[mock]\nlatency_ms = 2\n").unwrap();
    let config = config_path.to_str().unwrap();

    // one shared openings pool
    let seeds_dir = shared.path().join("seeds");
    run_ok(&[
        "--config",
        config,
        "--out-dir",
        seeds_dir.to_str().unwrap(),
        "seeds",
    ]);
    let openings_path = seeds_dir.join("openings.jsonl");
    let openings = openings_path.to_str().unwrap();
    let input_ids: Vec<String> = core_model::read_records(&openings_path)
        .unwrap()
        .iter()
        .map(|r| r.id().to_string())
        .collect();
    let total = input_ids.len();

    // uninterrupted baseline
    let baseline_dir = shared.path().join("baseline");
    run_ok(&[
        "--config",
        config,
        "--out-dir",
        baseline_dir.to_str().unwrap(),
        "simulate",
        "--openings",
        openings,
    ]);
    let baseline_dialogues = std::fs::read(baseline_dir.join("dialogues.jsonl")).unwrap();
    let baseline_rejects = std::fs::read(baseline_dir.join("rejects.jsonl")).unwrap_or_default();

    let mut killed_mid_run = 0;
    for trial in 0..10 {
        let trial_dir = shared.path().join(format!("trial{trial}"));
        let trial_out = trial_dir.to_str().unwrap().to_string();
        let mut child = selfchat()
            .args([
                "--config",
                config,
                "--out-dir",
                &trial_out,
                "simulate",
                "--openings",
                openings,
            ])
            .stdout(std::process::Stdio::null())
            .stderr(std::process::Stdio::null())
            .spawn()
            .unwrap();

        // kill near 50% completion
        let target = total / 2;
        let deadline = Instant::now() + Duration::from_secs(30);
        loop {
            if Instant::now() > deadline {
                panic!("trial {trial}: never reached the kill point");
            }
            if let Some(_status) = child.try_wait().unwrap() {
                break; // finished before the kill landed; still must match
            }
            let produced = std::fs::read_to_string(trial_dir.join("dialogues.jsonl"))
                .map(|s| s.lines().count())
                .unwrap_or(0)
                + std::fs::read_to_string(trial_dir.join("rejects.jsonl"))
                    .map(|s| s.lines().count())
                    .unwrap_or(0);
            if produced >= target {
                child.kill().unwrap();
                child.wait().unwrap();
                killed_mid_run += 1;
                break;
            }
            std::thread::sleep(Duration::from_millis(2));
        }

        run_ok(&[
            "--config",
            config,
            "--out-dir",
            &trial_out,
            "--resume",
            "simulate",
            "--openings",
            openings,
        ]);
        let dialogues = std::fs::read(trial_dir.join("dialogues.jsonl")).unwrap();
        let rejects = std::fs::read(trial_dir.join("rejects.jsonl")).unwrap_or_default();
        assert_eq!(
            dialogues, baseline_dialogues,
            "trial {trial}: dialogues diverged"
        );
        assert_eq!(rejects, baseline_rejects, "trial {trial}: rejects diverged");

        // after resume the checkpoint records every input exactly once, in order
        let checkpoint: serde_json::Value = serde_json::from_str(
            &std::fs::read_to_string(trial_dir.join("simulate-checkpoint.json")).unwrap(),
        )
        .unwrap();
        let completed: Vec<&str> = checkpoint["completed"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap())
            .collect();
        assert_eq!(completed, input_ids, "trial {trial}: checkpoint completed set");
    }
    assert!(
        killed_mid_run >= 8,
        "only {killed_mid_run}/10 trials were actually interrupted mid-run"
    );
    eprintln!(
        "ACCEPTANCE 5 (crash-resume determinism, {killed_mid_run}/10 interrupted trials byte-identical): PASS"
    );
}

// ---------------------------------------------------------------------------
// criterion 6: judge-prompt fidelity
// ---------------------------------------------------------------------------

fn remove_inserted(rendered: &str, inserted: &[&str]) -> String {
    let mut lines: Vec<String> = rendered.lines().map(str::to_string).collect();
    for block in inserted {
        for content_line in block.lines() {
            let pos = lines
                .iter()
                .position(|l| l == content_line)
                .expect("inserted line present");
            lines.remove(pos);
        }
    }
    lines.join("\n")
}

#[test]
fn criterion_06_judge_prompt_fidelity() {
    let cases = [
        (
            "What is the capital of France?",
            "Paris.",
            "It is Paris, of course.",
        ),
        (
            "Q-sentinel?",
            "A1-sentinel line.\nA1 second line.",
            "A2-sentinel.",
        ),
        ("Why?", "Because of the tides.", "No idea."),
    ];
    for (question, answer_1, answer_2) in cases {
        let rendered = eval_harness::render_comparison(question, answer_1, answer_2);
        assert_eq!(
            remove_inserted(&rendered, &[question, answer_1, answer_2]),
            eval_harness::COMPARISON_TEMPLATE,
            "comparison render touched template bytes"
        );
        let rendered = eval_harness::render_independent(question, answer_1);
        assert_eq!(
            remove_inserted(&rendered, &[question, answer_1]),
            eval_harness::INDEPENDENT_TEMPLATE,
            "independent render touched template bytes"
        );
    }
    eprintln!("ACCEPTANCE 6 (judge prompts differ from templates only inside slots): PASS");
}

// ---------------------------------------------------------------------------
// criterion 7: order randomization and unmapping
// ---------------------------------------------------------------------------

#[test]
fn criterion_07_order_randomization() {
    let seed = 20_240_817;
    let first = (0..1000)
        .filter(|i| eval_harness::presentation_coin(seed, &format!("item-{i}")))
        .count();
    let share = first as f64 / 1000.0;
    assert!(
        (0.45..=0.55).contains(&share),
        "first-position share {share}"
    );

    // metamorphic unmapping over 1,000 shuffled verdicts
    let mut rng = rand_chacha_rng(3);
    use rand::Rng;
    for _ in 0..1000 {
        let model_a = format!("model-{}", rng.random_range(0..5));
        let model_b = format!("other-{}", rng.random_range(0..5));
        let s1: u8 = rng.random_range(1..=10);
        let s2: u8 = rng.random_range(1..=10);
        let forward = eval_harness::attribute_scores(&[model_a.clone(), model_b.clone()], (s1, s2));
        let swapped = eval_harness::attribute_scores(&[model_b, model_a], (s2, s1));
        let to_map = |scores: &[eval_harness::ModelScore]| {
            scores
                .iter()
                .map(|s| (s.model.clone(), s.score))
                .collect::<std::collections::BTreeMap<_, _>>()
        };
        assert_eq!(to_map(&forward), to_map(&swapped));
    }
    eprintln!("ACCEPTANCE 7 (order randomization {share:.3} first-position share, metamorphic unmapping): PASS");
}

// ---------------------------------------------------------------------------
// criterion 8: tally correctness
// ---------------------------------------------------------------------------

fn pairwise_verdict(item: &str, category: &str, a: u8, b: u8) -> eval_harness::JudgeVerdict {
    eval_harness::JudgeVerdict {
        item_id: item.to_string(),
        category: category.to_string(),
        mode: eval_harness::VerdictMode::Pairwise,
        scores: vec![
            eval_harness::ModelScore {
                model: "alpha".into(),
                score: a,
            },
            eval_harness::ModelScore {
                model: "beta".into(),
                score: b,
            },
        ],
        presented_order: Some(["alpha".into(), "beta".into()]),
        rationale: String::new(),
    }
}

fn independent_verdict(item: &str, score: u8) -> eval_harness::JudgeVerdict {
    eval_harness::JudgeVerdict {
        item_id: item.to_string(),
        category: "General".into(),
        mode: eval_harness::VerdictMode::Independent,
        scores: vec![eval_harness::ModelScore {
            model: "alpha".into(),
            score,
        }],
        presented_order: None,
        rationale: String::new(),
    }
}

#[test]
fn criterion_08_tally_correctness() {
    // set 1: the canonical 1/1/1 example with hand-computed mean and std
    let set1 = vec![
        pairwise_verdict("i1", "G", 9, 7),
        pairwise_verdict("i2", "G", 6, 6),
        pairwise_verdict("i3", "G", 5, 8),
    ];
    let t = eval_harness::tally(&set1);
    assert_eq!(
        (t.pairs[0].wins_a, t.pairs[0].ties, t.pairs[0].wins_b),
        (1, 1, 1)
    );
    let alpha = &t.overall["alpha"];
    assert!((alpha.mean - 20.0 / 3.0).abs() < 1e-9);
    assert!((alpha.std - (26.0f64 / 9.0).sqrt()).abs() < 1e-9);

    // set 2: identical independent scores
    let set2 = vec![
        independent_verdict("i1", 9),
        independent_verdict("i2", 9),
        independent_verdict("i3", 9),
    ];
    let t = eval_harness::tally(&set2);
    assert_eq!(t.overall["alpha"].mean, 9.0);
    assert_eq!(t.overall["alpha"].std, 0.0);

    // set 3: all ties
    let set3 = vec![
        pairwise_verdict("i1", "G", 5, 5),
        pairwise_verdict("i2", "G", 7, 7),
    ];
    let t = eval_harness::tally(&set3);
    assert_eq!(
        (t.pairs[0].wins_a, t.pairs[0].ties, t.pairs[0].wins_b),
        (0, 2, 0)
    );

    // set 4: single decisive item
    let set4 = vec![pairwise_verdict("i1", "G", 10, 1)];
    let t = eval_harness::tally(&set4);
    assert_eq!(
        (t.pairs[0].wins_a, t.pairs[0].ties, t.pairs[0].wins_b),
        (1, 0, 0)
    );
    assert_eq!(t.overall["alpha"].mean, 10.0);
    assert_eq!(t.overall["beta"].mean, 1.0);

    // set 5: per-category split; alpha scores 8 in X and 4 in Y
    let set5 = vec![
        pairwise_verdict("i1", "X", 8, 6),
        pairwise_verdict("i2", "Y", 4, 6),
    ];
    let t = eval_harness::tally(&set5);
    assert_eq!(
        (t.pairs[0].wins_a, t.pairs[0].ties, t.pairs[0].wins_b),
        (1, 0, 1)
    );
    assert!((t.overall["alpha"].mean - 6.0).abs() < 1e-12);
    assert!((t.overall["alpha"].std - 2.0).abs() < 1e-12);
    assert_eq!(t.by_category["X"]["alpha"].mean, 8.0);
    assert_eq!(t.by_category["Y"]["alpha"].mean, 4.0);

    // conservation across every set
    for set in [&set1, &set3, &set4, &set5] {
        let t = eval_harness::tally(set);
        let judged: u64 = t.pairs.iter().map(|p| p.judged()).sum();
        assert_eq!(judged as usize, set.len());
    }
    eprintln!("ACCEPTANCE 8 (tally win/tie/lose and mean ± std on 5 hand-computed sets): PASS");
}

// ---------------------------------------------------------------------------
// criterion 9: true/false runner with a lookup oracle
// ---------------------------------------------------------------------------

#[test]
fn criterion_09_truthfulqa_lookup_oracle() {
    use async_trait::async_trait;
    use llm_gateway::{ChatBackend, ChatRequest, GatewayError};

    struct PartialOracle {
        items: Vec<eval_harness::TruthfulQaItem>,
    }

    #[async_trait]
    impl ChatBackend for PartialOracle {
        async fn complete(&self, req: &ChatRequest) -> Result<String, GatewayError> {
            let prompt = &req.last_message().content;
            let (index, item) = self
                .items
                .iter()
                .enumerate()
                .find(|(_, item)| prompt.contains(&item.answer))
                .expect("prompt embeds a known candidate");
            // wrong on every fourth item, right elsewhere: accuracy 0.75 exactly
            let verdict = if index % 4 == 0 {
                !item.label
            } else {
                item.label
            };
            Ok(if verdict { "true" } else { "false" }.to_string())
        }

        async fn embed(&self, _texts: &[String]) -> Result<Vec<EmbeddingVector>, GatewayError> {
            unreachable!("not used")
        }

        fn fingerprint(&self) -> String {
            "partial-oracle".into()
        }

        fn model_name(&self) -> String {
            "partial-oracle".into()
        }
    }

    let items: Vec<eval_harness::TruthfulQaItem> = (0..200)
        .map(|i| eval_harness::TruthfulQaItem {
            question: format!("Synthetic question {i}?"),
            answer: format!("Unique candidate text {i}."),
            label: i % 3 == 0,
        })
        .collect();
    let oracle = PartialOracle {
        items: items.clone(),
    };
    let runtime = tokio::runtime::Runtime::new().unwrap();
    let report = runtime
        .block_on(eval_harness::truthfulqa_mc(&items, &oracle))
        .unwrap();
    assert_eq!(report.total, 200);
    assert_eq!(report.correct, 150);
    assert_eq!(
        report.accuracy, 0.75,
        "accuracy equals the constructed fraction exactly"
    );
    eprintln!("ACCEPTANCE 9 (true/false runner, constructed 0.75 oracle): PASS");
}

// ---------------------------------------------------------------------------
// criterion 10: fan-out counts
// ---------------------------------------------------------------------------

#[test]
fn criterion_10_fanout_counts() {
    let runtime = tokio::runtime::Runtime::new().unwrap();
    runtime.block_on(async {
        let backend = llm_gateway::MockBackend::new(17);

        let topic = &seed_factory::meta_topics()[0];
        let openings = seed_factory::world_questions_for_topic(topic, 40, 10, 10, &backend)
            .await
            .unwrap();
        assert_eq!(
            openings.len(),
            4_400,
            "40 subtopics x 10 x (1 + 10) questions"
        );

        let catalog = core_model::MaterialCatalog::builtin();
        let poems = catalog.by_slug("poems").unwrap();
        let instructions = seed_factory::writing_instructions(poems, 10, 0.8, 99, &backend)
            .await
            .unwrap();
        let refined = instructions
            .iter()
            .filter(|o| {
                o.lineage
                    .iter()
                    .any(|s| s.stage == "refined" && s.value == "true")
            })
            .count();
        assert_eq!(refined, 8, "exactly floor(0.8 * 10) refined");

        let pieces = seed_factory::sample_corpus(&catalog);
        let instructions = seed_factory::material_instructions(&pieces[0], 5, &backend)
            .await
            .unwrap();
        assert_eq!(instructions.len(), 5);
        let distinct: HashSet<String> = instructions
            .iter()
            .map(|i| core_model::normalize_for_dedup(i))
            .collect();
        assert_eq!(distinct.len(), 5, "five distinct instructions per piece");
    });
    eprintln!("ACCEPTANCE 10 (fan-out counts 4400 / 8 refined / 5 distinct): PASS");
}

// ---------------------------------------------------------------------------
// criterion 11 (optional, network-gated): public shard statistics
// ---------------------------------------------------------------------------

#[test]
fn criterion_11_optional_public_shard_statistics() {
    let Some(path) = std::env::var_os("ACCEPTANCE_SHARD_PATH") else {
        eprintln!(
            "ACCEPTANCE 11 (public shard statistics): SKIPPED — set ACCEPTANCE_SHARD_PATH to a \
             downloaded shard file to enable"
        );
        return;
    };
    let path = PathBuf::from(path);
    let dialogues =
        corpus_stats::ingest_dialogues(&path, &WhitespaceTokenizer).expect("shard file parses");
    assert!(!dialogues.is_empty());

    let runtime = tokio::runtime::Runtime::new().unwrap();
    let report = runtime
        .block_on(corpus_stats::dataset_report(
            &dialogues,
            &corpus_stats::ReportOptions {
                name: "shard".into(),
                tokenizer: &WhitespaceTokenizer,
                mtld_threshold: 0.72,
                min_mtld_tokens: 3,
                with_lexical: false,
                sample_n: 10_000,
                seed: 1,
                embed_backend: None,
                judge_backend: None,
            },
        ))
        .unwrap();

    assert!(
        (report.avg_rounds - 3.8).abs() <= 0.3,
        "avg rounds {} outside 3.8 ± 0.3",
        report.avg_rounds
    );
    let reference = 1467.4;
    assert!(
        (report.avg_dialogue_tokens - reference).abs() <= 0.15 * reference,
        "avg dialogue tokens {} outside ±15% of {reference}",
        report.avg_dialogue_tokens
    );
    eprintln!(
        "ACCEPTANCE 11 (public shard statistics: rounds {:.2}, tokens {:.1}): PASS",
        report.avg_rounds, report.avg_dialogue_tokens
    );
}
