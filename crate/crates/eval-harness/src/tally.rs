//! Win/tie/lose counting and mean ± population-std score statistics, overall
//! and per category.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::types::{JudgeVerdict, VerdictMode};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreStats {
    pub count: usize,
    pub mean: f64,
    pub std: f64,
}

impl ScoreStats {
    fn from_scores(scores: &[u8]) -> ScoreStats {
        let count = scores.len();
        if count == 0 {
            return ScoreStats {
                count: 0,
                mean: 0.0,
                std: 0.0,
            };
        }
        let mean = scores.iter().map(|&s| s as f64).sum::<f64>() / count as f64;
        let variance = scores
            .iter()
            .map(|&s| (s as f64 - mean).powi(2))
            .sum::<f64>()
            / count as f64;
        ScoreStats {
            count,
            mean,
            std: variance.sqrt(),
        }
    }
}

/// Win/tie/lose counts for one unordered model pair (models in lexical order).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairTally {
    pub model_a: String,
    pub model_b: String,
    pub wins_a: u64,
    pub ties: u64,
    pub wins_b: u64,
}

impl PairTally {
    pub fn judged(&self) -> u64 {
        self.wins_a + self.ties + self.wins_b
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Tally {
    pub pairs: Vec<PairTally>,
    pub overall: BTreeMap<String, ScoreStats>,
    pub by_category: BTreeMap<String, BTreeMap<String, ScoreStats>>,
}

/// Deterministic fold over the verdict set, sorted by item id. Ties are exact
/// score equality; a win is a strictly greater score.
pub fn tally(verdicts: &[JudgeVerdict]) -> Tally {
    let mut sorted: Vec<&JudgeVerdict> = verdicts.iter().collect();
    sorted.sort_by(|a, b| a.item_id.cmp(&b.item_id));

    let mut pairs: BTreeMap<(String, String), PairTally> = BTreeMap::new();
    let mut scores: BTreeMap<String, Vec<u8>> = BTreeMap::new();
    let mut category_scores: BTreeMap<String, BTreeMap<String, Vec<u8>>> = BTreeMap::new();

    for verdict in sorted {
        for s in &verdict.scores {
            scores.entry(s.model.clone()).or_default().push(s.score);
            category_scores
                .entry(verdict.category.clone())
                .or_default()
                .entry(s.model.clone())
                .or_default()
                .push(s.score);
        }
        if verdict.mode == VerdictMode::Pairwise && verdict.scores.len() == 2 {
            let (first, second) = (&verdict.scores[0], &verdict.scores[1]);
            let (a, b) = if first.model <= second.model {
                (first, second)
            } else {
                (second, first)
            };
            let entry = pairs
                .entry((a.model.clone(), b.model.clone()))
                .or_insert_with(|| PairTally {
                    model_a: a.model.clone(),
                    model_b: b.model.clone(),
                    wins_a: 0,
                    ties: 0,
                    wins_b: 0,
                });
            match a.score.cmp(&b.score) {
                std::cmp::Ordering::Greater => entry.wins_a += 1,
                std::cmp::Ordering::Equal => entry.ties += 1,
                std::cmp::Ordering::Less => entry.wins_b += 1,
            }
        }
    }

    Tally {
        pairs: pairs.into_values().collect(),
        overall: scores
            .into_iter()
            .map(|(model, s)| (model, ScoreStats::from_scores(&s)))
            .collect(),
        by_category: category_scores
            .into_iter()
            .map(|(category, models)| {
                (
                    category,
                    models
                        .into_iter()
                        .map(|(model, s)| (model, ScoreStats::from_scores(&s)))
                        .collect(),
                )
            })
            .collect(),
    }
}

/// Aligned text table: one row per model, overall then per-category columns.
pub fn render_tally_table(tally: &Tally) -> String {
    let categories: Vec<&String> = tally.by_category.keys().collect();
    let mut header = vec!["Model".to_string(), "Overall".to_string()];
    header.extend(categories.iter().map(|c| c.to_string()));

    let mut rows = vec![header];
    for (model, stats) in &tally.overall {
        let mut row = vec![
            model.clone(),
            format!("{:.2} ± {:.2}", stats.mean, stats.std),
        ];
        for category in &categories {
            let cell = tally
                .by_category
                .get(*category)
                .and_then(|m| m.get(model))
                .map(|s| format!("{:.2} ± {:.2}", s.mean, s.std))
                .unwrap_or_else(|| "-".to_string());
            row.push(cell);
        }
        rows.push(row);
    }

    let mut out = render_aligned(&rows);
    if !tally.pairs.is_empty() {
        out.push('\n');
        let mut pair_rows = vec![vec![
            "Pair".to_string(),
            "Win".to_string(),
            "Tie".to_string(),
            "Lose".to_string(),
        ]];
        for pair in &tally.pairs {
            pair_rows.push(vec![
                format!("{} vs {}", pair.model_a, pair.model_b),
                pair.wins_a.to_string(),
                pair.ties.to_string(),
                pair.wins_b.to_string(),
            ]);
        }
        out.push_str(&render_aligned(&pair_rows));
    }
    out
}

fn render_aligned(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
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
