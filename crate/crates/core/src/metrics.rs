//! Presentation-attack detection metrics.
//!
//! Live (bona fide) is the positive class and scores are "higher = more
//! live": a record is predicted live iff `score >= threshold`.

use std::collections::HashSet;
use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Live,
    Attack,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Live => "live",
            Label::Attack => "attack",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "live" => Ok(Label::Live),
            "attack" => Ok(Label::Attack),
            other => Err(format!("unknown label `{other}` (expected live or attack)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreRecord {
    pub sample_id: String,
    pub label: Label,
    pub score: f64,
}

impl ScoreRecord {
    pub fn new(sample_id: impl Into<String>, label: Label, score: f64) -> Result<Self> {
        let sample_id = sample_id.into();
        if sample_id.is_empty() {
            return Err(Error::invalid_input("empty sample id"));
        }
        if !(0.0..=1.0).contains(&score) {
            return Err(Error::invalid_input(format!(
                "score {score} for `{sample_id}` outside [0, 1]"
            )));
        }
        Ok(Self {
            sample_id,
            label,
            score,
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub tp: u64,
    pub fp: u64,
    pub tn: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

impl ConfusionCounts {
    pub fn live(&self) -> u64 {
        self.tp + self.fn_
    }

    pub fn attack(&self) -> u64 {
        self.fp + self.tn
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorRates {
    pub apcer: f64,
    pub bpcer: f64,
    pub acer: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub apcer: f64,
    pub bpcer: f64,
    pub acer: f64,
    pub auc: f64,
    pub threshold: f64,
    #[serde(flatten)]
    pub counts: ConfusionCounts,
}

impl MetricsReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn require_both_classes(records: &[ScoreRecord]) -> Result<(usize, usize)> {
    let live = records.iter().filter(|r| r.label == Label::Live).count();
    let attack = records.len() - live;
    if live == 0 || attack == 0 {
        let missing = if live == 0 {
            Label::Live
        } else {
            Label::Attack
        };
        return Err(Error::invalid_input(format!(
            "records contain no {missing} samples; both classes are required"
        )));
    }
    Ok((live, attack))
}

pub fn confusion_at_threshold(records: &[ScoreRecord], threshold: f64) -> Result<ConfusionCounts> {
    if records.is_empty() {
        return Err(Error::invalid_input("no score records"));
    }
    let mut c = ConfusionCounts::default();
    for r in records {
        let predicted_live = r.score >= threshold;
        match (r.label, predicted_live) {
            (Label::Live, true) => c.tp += 1,
            (Label::Live, false) => c.fn_ += 1,
            (Label::Attack, true) => c.fp += 1,
            (Label::Attack, false) => c.tn += 1,
        }
    }
    Ok(c)
}

/// APCER = FP / (FP + TN), BPCER = FN / (FN + TP), ACER = their mean.
pub fn error_rates(counts: &ConfusionCounts) -> Result<ErrorRates> {
    if counts.attack() == 0 {
        return Err(Error::UndefinedRate {
            missing: Label::Attack,
        });
    }
    if counts.live() == 0 {
        return Err(Error::UndefinedRate {
            missing: Label::Live,
        });
    }
    let apcer = counts.fp as f64 / counts.attack() as f64;
    let bpcer = counts.fn_ as f64 / counts.live() as f64;
    Ok(ErrorRates {
        apcer,
        bpcer,
        acer: (apcer + bpcer) / 2.0,
    })
}

/// Probability that a random live record outscores a random attack record,
/// ties counting one half. Computed from mid-ranks.
pub fn auc(records: &[ScoreRecord]) -> Result<f64> {
    let (n_live, n_attack) = require_both_classes(records)?;
    let mut order: Vec<&ScoreRecord> = records.iter().collect();
    order.sort_by(|a, b| a.score.total_cmp(&b.score));

    let mut live_rank_sum = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && order[j + 1].score == order[i].score {
            j += 1;
        }
        // ranks i+1 ..= j+1 share their mean
        let mid_rank = (i + j + 2) as f64 / 2.0;
        let live_in_group = order[i..=j]
            .iter()
            .filter(|r| r.label == Label::Live)
            .count();
        live_rank_sum += mid_rank * live_in_group as f64;
        i = j + 1;
    }
    let n_live_f = n_live as f64;
    let u = live_rank_sum - n_live_f * (n_live_f + 1.0) / 2.0;
    Ok(u / (n_live_f * n_attack as f64))
}

/// Threshold minimizing ACER over the candidates `{0, 1} ∪ {dev scores}`;
/// ties go to the smallest candidate.
pub fn select_threshold(dev_records: &[ScoreRecord]) -> Result<f64> {
    let (n_live, n_attack) = require_both_classes(dev_records)?;
    let mut candidates: Vec<f64> = dev_records.iter().map(|r| r.score).collect();
    candidates.extend([0.0, 1.0]);
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let mut sorted: Vec<&ScoreRecord> = dev_records.iter().collect();
    sorted.sort_by(|a, b| a.score.total_cmp(&b.score));

    // Sweep candidates upwards; `below` counts records with score < t.
    let mut below = 0;
    let mut live_below = 0u64;
    let mut attack_below = 0u64;
    let mut best: Option<(u128, f64)> = None;
    for &t in &candidates {
        while below < sorted.len() && sorted[below].score < t {
            match sorted[below].label {
                Label::Live => live_below += 1,
                Label::Attack => attack_below += 1,
            }
            below += 1;
        }
        let fp = n_attack as u64 - attack_below;
        let fn_ = live_below;
        // 2 * ACER * n_live * n_attack, exact in integers
        let cost = u128::from(fp) * n_live as u128 + u128::from(fn_) * n_attack as u128;
        if best.map_or(true, |(c, _)| cost < c) {
            best = Some((cost, t));
        }
    }
    Ok(best.expect("candidate set is never empty").1)
}

/// Full report on `records` at a given threshold.
pub fn evaluate(records: &[ScoreRecord], threshold: f64) -> Result<MetricsReport> {
    let counts = confusion_at_threshold(records, threshold)?;
    let rates = error_rates(&counts)?;
    Ok(MetricsReport {
        apcer: rates.apcer,
        bpcer: rates.bpcer,
        acer: rates.acer,
        auc: auc(records)?,
        threshold,
        counts,
    })
}

/// Reads `sample_id,label,score` lines. A first line whose first field is
/// `sample_id` is treated as a header.
pub fn parse_predictions(reader: impl Read, path: &Path) -> Result<Vec<ScoreRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (index, row) in rdr.records().enumerate() {
        let parse_err = |line: u64, message: String| Error::Parse {
            path: path.to_path_buf(),
            line,
            message,
        };
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        let line = row.position().map_or(index as u64 + 1, |p| p.line());
        if index == 0 && row.get(0) == Some("sample_id") {
            continue;
        }
        if row.len() != 3 {
            return Err(parse_err(
                line,
                format!(
                    "expected 3 fields (sample_id,label,score), found {}",
                    row.len()
                ),
            ));
        }
        let label: Label = row[1].parse().map_err(|m| parse_err(line, m))?;
        let score: f64 = row[2]
            .parse()
            .map_err(|_| parse_err(line, format!("invalid score `{}`", &row[2])))?;
        let record =
            ScoreRecord::new(&row[0], label, score).map_err(|e| parse_err(line, e.to_string()))?;
        if !seen.insert(record.sample_id.clone()) {
            return Err(parse_err(
                line,
                format!("duplicate sample id `{}`", record.sample_id),
            ));
        }
        out.push(record);
    }
    Ok(out)
}

pub fn read_predictions(path: impl AsRef<Path>) -> Result<Vec<ScoreRecord>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_predictions(file, path)
}
