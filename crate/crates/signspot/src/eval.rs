//! Metrics and the hyperparameter sweep runner.
//!
//! WER is the gloss-level word error rate: minimal edit distance with unit
//! costs divided by the reference length, pooled over the corpus as total
//! edits over total reference tokens. It may exceed 1.0 for hypotheses much
//! longer than their references; no clamping. "Top-5 WER" is the oracle-best
//! WER among the five highest-scored beam hypotheses.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::decoder::BeamHypothesis;
use crate::dictionary::SimilarityDistribution;
use crate::error::{Error, Result};
use crate::pipeline::{spot_segments, SpotDataset, SpotParams, VariantDicts};
use crate::util::top_k_indices;

/// Minimal number of substitutions, insertions and deletions turning
/// `hypothesis` into `reference`.
pub fn edit_distance<S: AsRef<str>, T: AsRef<str>>(reference: &[S], hypothesis: &[T]) -> usize {
    let n = reference.len();
    let m = hypothesis.len();
    let mut prev: Vec<usize> = (0..=m).collect();
    let mut curr = vec![0usize; m + 1];
    for i in 1..=n {
        curr[0] = i;
        for j in 1..=m {
            let sub = if reference[i - 1].as_ref() == hypothesis[j - 1].as_ref() {
                0
            } else {
                1
            };
            curr[j] = (prev[j] + 1).min(curr[j - 1] + 1).min(prev[j - 1] + sub);
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[m]
}

/// Word error rate of one sentence. The reference must be nonempty.
pub fn wer<S: AsRef<str>, T: AsRef<str>>(reference: &[S], hypothesis: &[T]) -> Result<f64> {
    if reference.is_empty() {
        return Err(Error::InvalidConfig("empty reference".into()));
    }
    Ok(edit_distance(reference, hypothesis) as f64 / reference.len() as f64)
}

/// Fraction of segments whose target index is among the `k` highest scores
/// (ties broken by ascending index).
pub fn topk_accuracy(dists: &[SimilarityDistribution], targets: &[usize], k: usize) -> Result<f64> {
    if dists.len() != targets.len() {
        return Err(Error::LengthMismatch {
            left: dists.len(),
            right: targets.len(),
        });
    }
    if dists.is_empty() {
        return Err(Error::InvalidConfig("no distributions to score".into()));
    }
    if k < 1 {
        return Err(Error::InvalidConfig("k must be >= 1".into()));
    }
    let mut hits = 0usize;
    for (dist, &target) in dists.iter().zip(targets) {
        if target >= dist.len() {
            return Err(Error::IndexOutOfRange {
                index: target,
                len: dist.len(),
            });
        }
        if top_k_indices(dist.scores(), k.min(dist.len())).contains(&target) {
            hits += 1;
        }
    }
    Ok(hits as f64 / dists.len() as f64)
}

/// Minimum WER over the `n` best-scored hypotheses (the list is assumed
/// sorted best-first, as produced by the beam search).
pub fn oracle_wer<S: AsRef<str>>(
    hypotheses: &[BeamHypothesis],
    reference: &[S],
    n: usize,
) -> Result<f64> {
    if hypotheses.is_empty() {
        return Err(Error::InvalidConfig("no hypotheses".into()));
    }
    if n < 1 {
        return Err(Error::InvalidConfig("n must be >= 1".into()));
    }
    let mut best = f64::INFINITY;
    for hyp in hypotheses.iter().take(n) {
        best = best.min(wer(reference, &hyp.glosses)?);
    }
    Ok(best)
}

/// Per-sentence record kept inside a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentenceEval {
    pub reference: Vec<String>,
    pub hypothesis: Vec<String>,
    pub wer: f64,
}

/// Corpus-level metrics for one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub wer_top1: f64,
    pub wer_top5: f64,
    pub topk_accuracy: BTreeMap<usize, f64>,
    pub sentence_count: usize,
    pub per_sentence: Vec<SentenceEval>,
}

impl EvalReport {
    /// Builds WER metrics from decoded sentences. `oracle_n` controls the
    /// "top-5" column (the oracle depth). Corpus WER pools edits over
    /// reference tokens, so `wer_top5 <= wer_top1` holds by construction.
    pub fn from_decodes(
        sentences: &[(Vec<String>, Vec<BeamHypothesis>)],
        oracle_n: usize,
    ) -> Result<Self> {
        if sentences.is_empty() {
            return Err(Error::InvalidConfig("no sentences to evaluate".into()));
        }
        let mut total_ref = 0usize;
        let mut top1_edits = 0usize;
        let mut oracle_edits = 0usize;
        let mut per_sentence = Vec::with_capacity(sentences.len());
        for (reference, hypotheses) in sentences {
            if reference.is_empty() {
                return Err(Error::InvalidConfig("empty reference".into()));
            }
            let Some(best) = hypotheses.first() else {
                return Err(Error::InvalidConfig("sentence without hypotheses".into()));
            };
            let top1 = edit_distance(reference, &best.glosses);
            let oracle = hypotheses
                .iter()
                .take(oracle_n.max(1))
                .map(|h| edit_distance(reference, &h.glosses))
                .min()
                .unwrap_or(top1);
            total_ref += reference.len();
            top1_edits += top1;
            oracle_edits += oracle;
            per_sentence.push(SentenceEval {
                reference: reference.clone(),
                hypothesis: best.glosses.clone(),
                wer: top1 as f64 / reference.len() as f64,
            });
        }
        Ok(Self {
            wer_top1: top1_edits as f64 / total_ref as f64,
            wer_top5: oracle_edits as f64 / total_ref as f64,
            topk_accuracy: BTreeMap::new(),
            sentence_count: sentences.len(),
            per_sentence,
        })
    }

    /// Adds segment-level top-k accuracies for the listed `k` values.
    pub fn with_topk(
        mut self,
        dists: &[SimilarityDistribution],
        targets: &[usize],
        ks: &[usize],
    ) -> Result<Self> {
        for &k in ks {
            self.topk_accuracy
                .insert(k, topk_accuracy(dists, targets, k)?);
        }
        Ok(self)
    }

    /// Plain-text rendering for terminal inspection.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "sentences: {}\nTop-1 WER: {:.4}\nTop-5 WER: {:.4}\n",
            self.sentence_count, self.wer_top1, self.wer_top5
        ));
        for (k, acc) in &self.topk_accuracy {
            out.push_str(&format!("Top-{k} accuracy: {acc:.4}\n"));
        }
        out
    }
}

/// Which weight a sweep varies. Each parameter implies the fusion strategy it
/// belongs to, matching the rows of the reference tuning table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    AlphaSI3d,
    AlphaSRh,
    AlphaLate,
    AlphaEns,
}

impl SweepParameter {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepParameter::AlphaSI3d => "alpha_s_i3d",
            SweepParameter::AlphaSRh => "alpha_s_rh",
            SweepParameter::AlphaLate => "alpha_late",
            SweepParameter::AlphaEns => "alpha_ens",
        }
    }

    fn strategy(&self) -> crate::fusion::FusionStrategy {
        use crate::fusion::FusionStrategy::*;
        match self {
            SweepParameter::AlphaSI3d => I3dOnly,
            SweepParameter::AlphaSRh => RhOnly,
            SweepParameter::AlphaLate => Late,
            SweepParameter::AlphaEns => Ensemble,
        }
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "alpha-s-i3d" => Ok(SweepParameter::AlphaSI3d),
            "alpha-s-rh" => Ok(SweepParameter::AlphaSRh),
            "alpha-late" => Ok(SweepParameter::AlphaLate),
            "alpha-ens" => Ok(SweepParameter::AlphaEns),
            other => Err(Error::InvalidConfig(format!(
                "unknown sweep parameter `{other}`"
            ))),
        }
    }
}

/// Whether sweep metrics are accuracies (higher better) or WERs (lower
/// better); only affects rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMetric {
    Accuracy,
    Wer,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: f64,
    pub top1: f64,
    pub top5: f64,
}

/// Filled sweep results, one row per grid value in ascending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub parameter_name: String,
    pub metric: SweepMetric,
    pub rows: Vec<SweepRow>,
}

impl SweepGrid {
    /// Renders rows as a wide table, values across the top, mirroring the
    /// reference tuning-table layout.
    pub fn render_text(&self) -> String {
        let arrow = match self.metric {
            SweepMetric::Accuracy => "\u{2191}",
            SweepMetric::Wer => "\u{2193}",
        };
        let mut header = format!("{:>8} |", self.parameter_name);
        let mut top5 = format!("{:>8} |", format!("Top-5 {arrow}"));
        let mut top1 = format!("{:>8} |", format!("Top-1 {arrow}"));
        for row in &self.rows {
            header.push_str(&format!(" {:>7.2}", row.value));
            top5.push_str(&format!(" {:>7.4}", row.top5));
            top1.push_str(&format!(" {:>7.4}", row.top1));
        }
        format!("{header}\n{top5}\n{top1}\n")
    }
}

/// The default 11-point grid over `[0, 1]` with step 0.1.
pub fn default_grid() -> Vec<f64> {
    (0..=10).map(|i| f64::from(i) / 10.0).collect()
}

/// A sweep abort carrying the rows completed before the failure.
#[derive(Debug)]
pub struct SweepError {
    pub partial: SweepGrid,
    pub source: Error,
}

impl fmt::Display for SweepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sweep aborted after {} row(s): {}",
            self.partial.rows.len(),
            self.source
        )
    }
}

impl std::error::Error for SweepError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.source)
    }
}

/// Runs the spotting pipeline once per grid value with everything else fixed,
/// recording Top-1/Top-5 accuracy per value.
///
/// The swept parameter selects its fusion strategy (e.g. `alpha_late` runs
/// the late-fusion pipeline); remaining weights come from `base`. Values are
/// sorted ascending. Deterministic: spotting involves no randomness.
pub fn run_sweep(
    base: &SpotParams,
    parameter: SweepParameter,
    values: &[f64],
    dataset: &SpotDataset,
) -> Result<SweepGrid, SweepError> {
    let mut grid = SweepGrid {
        parameter_name: parameter.as_str().to_string(),
        metric: SweepMetric::Accuracy,
        rows: Vec::with_capacity(values.len()),
    };
    let mut values = values.to_vec();
    values.sort_by(f64::total_cmp);
    let strategy = parameter.strategy();
    let abort = |grid: &SweepGrid, source: Error| SweepError {
        partial: grid.clone(),
        source,
    };
    let variants = VariantDicts::for_strategy(&dataset.dictionary, strategy, base.resample_mid)
        .map_err(|e| abort(&grid, e))?;
    for value in values {
        let mut params = SpotParams { strategy, ..*base };
        match parameter {
            SweepParameter::AlphaSI3d => params.alpha_s_i3d = value,
            SweepParameter::AlphaSRh => params.alpha_s_rh = value,
            SweepParameter::AlphaLate => params.alpha_late = value,
            SweepParameter::AlphaEns => params.alpha_ens = value,
        }
        let row = (|| -> Result<SweepRow> {
            let dists = spot_segments(&dataset.segments, &variants, &params)?;
            Ok(SweepRow {
                value,
                top1: topk_accuracy(&dists, &dataset.targets, 1)?,
                top5: topk_accuracy(&dists, &dataset.targets, 5)?,
            })
        })()
        .map_err(|e| abort(&grid, e))?;
        grid.rows.push(row);
    }
    Ok(grid)
}
