//! Candidate generation and beam-search decoding.
//!
//! Each segment's similarity distribution is softmax-normalized and its top-k
//! glosses become the candidate set; the softmax is taken over the full
//! vocabulary and deliberately *not* renormalized after truncation, so
//! emissions stay comparable across segments with different score spreads.
//!
//! The beam search maximizes the cumulative objective
//!
//! ```text
//! sum_x ( log p(g_x | g_{1:x-1}) + alpha_bs * s_x )
//! ```
//!
//! where the transition probability comes from a [`TransitionModel`] queried
//! with each hypothesis's own gloss prefix, and the emission `s_x` enters
//! linearly. Ties are broken by higher emission, then lexicographic gloss
//! sequence, which makes decoding fully deterministic for a fixed backend.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::dictionary::SimilarityDistribution;
use crate::error::{Error, Result};
use crate::lm::{TransitionModel, TransitionQuery};
use crate::util::{softmax, top_k_indices};

/// One gloss candidate with its emission probability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub gloss: String,
    pub emission: f64,
}

/// The top-k candidates for one segment, sorted by descending emission.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    segment_index: usize,
    candidates: Vec<Candidate>,
}

impl CandidateSet {
    /// Validates the invariants: nonempty, distinct glosses, emissions in
    /// `(0, 1]`, sorted by descending emission.
    pub fn new(segment_index: usize, candidates: Vec<Candidate>) -> Result<Self> {
        if candidates.is_empty() {
            return Err(Error::InvalidCandidates);
        }
        let mut seen = std::collections::BTreeSet::new();
        for pair in candidates.windows(2) {
            if pair[0].emission < pair[1].emission {
                return Err(Error::InvalidCandidates);
            }
        }
        for c in &candidates {
            if !(c.emission > 0.0 && c.emission <= 1.0) {
                return Err(Error::ParameterRange {
                    name: "emission",
                    value: c.emission,
                    range: "(0, 1]",
                });
            }
            if !seen.insert(c.gloss.as_str()) {
                return Err(Error::InvalidCandidates);
            }
        }
        Ok(Self {
            segment_index,
            candidates,
        })
    }

    /// Zero-based position of the segment within its sentence.
    pub fn segment_index(&self) -> usize {
        self.segment_index
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn glosses(&self) -> Vec<String> {
        self.candidates.iter().map(|c| c.gloss.clone()).collect()
    }
}

/// Decoding knobs. Defaults mirror the reference configuration: `top_k` 10,
/// beam width 5, `alpha_bs` 1.0, softmax temperature 1.0, full-prefix LM
/// context.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecoderConfig {
    pub top_k: usize,
    pub beam_width: usize,
    pub alpha_bs: f64,
    pub softmax_temperature: f64,
    /// Limit the LM context to the last N decoded glosses; `None` passes the
    /// hypothesis's whole prefix.
    #[serde(default)]
    pub context_window: Option<usize>,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        Self {
            top_k: 10,
            beam_width: 5,
            alpha_bs: 1.0,
            softmax_temperature: 1.0,
            context_window: None,
        }
    }
}

impl DecoderConfig {
    pub fn validate(&self) -> Result<()> {
        if self.top_k < 1 {
            return Err(Error::InvalidConfig("top_k must be >= 1".into()));
        }
        if self.beam_width < 1 {
            return Err(Error::InvalidConfig("beam_width must be >= 1".into()));
        }
        if self.alpha_bs < 0.0 {
            return Err(Error::ParameterRange {
                name: "alpha_bs",
                value: self.alpha_bs,
                range: "[0, inf)",
            });
        }
        if !self.softmax_temperature.is_finite() || self.softmax_temperature <= 0.0 {
            return Err(Error::ParameterRange {
                name: "softmax_temperature",
                value: self.softmax_temperature,
                range: "(0, inf)",
            });
        }
        Ok(())
    }
}

/// Per-step audit record kept alongside each hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepAudit {
    pub log_transition: f64,
    pub emission: f64,
}

/// A (partial or complete) gloss sequence with its cumulative score.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BeamHypothesis {
    pub glosses: Vec<String>,
    pub score: f64,
    pub per_step: Vec<StepAudit>,
}

impl BeamHypothesis {
    fn empty() -> Self {
        Self {
            glosses: Vec::new(),
            score: 0.0,
            per_step: Vec::new(),
        }
    }

    /// Recomputes the objective from the audit trail; equals `score` up to
    /// floating-point accumulation.
    pub fn recomputed_score(&self, alpha_bs: f64) -> f64 {
        self.per_step
            .iter()
            .map(|s| s.log_transition + alpha_bs * s.emission)
            .sum()
    }

    fn extended(&self, candidate: &Candidate, log_transition: f64, alpha_bs: f64) -> Self {
        let mut glosses = self.glosses.clone();
        glosses.push(candidate.gloss.clone());
        let mut per_step = self.per_step.clone();
        per_step.push(StepAudit {
            log_transition,
            emission: candidate.emission,
        });
        Self {
            glosses,
            score: self.score + log_transition + alpha_bs * candidate.emission,
            per_step,
        }
    }

    fn last_emission(&self) -> f64 {
        self.per_step.last().map(|s| s.emission).unwrap_or(0.0)
    }
}

fn beam_order(a: &BeamHypothesis, b: &BeamHypothesis) -> std::cmp::Ordering {
    b.score
        .partial_cmp(&a.score)
        .unwrap_or(std::cmp::Ordering::Equal)
        .then_with(|| {
            b.last_emission()
                .partial_cmp(&a.last_emission())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .then_with(|| a.glosses.cmp(&b.glosses))
}

/// Softmax-normalizes a distribution and keeps the `top_k` glosses.
///
/// `glosses` supplies the label for each score index (dictionary entry order).
/// Emissions are the full-vocabulary softmax values of the selected entries;
/// ties are broken by ascending index.
pub fn normalize_and_topk(
    dist: &SimilarityDistribution,
    glosses: &[String],
    segment_index: usize,
    config: &DecoderConfig,
) -> Result<CandidateSet> {
    config.validate()?;
    if dist.len() != glosses.len() {
        return Err(Error::LengthMismatch {
            left: dist.len(),
            right: glosses.len(),
        });
    }
    if config.top_k > dist.len() {
        return Err(Error::InvalidConfig(format!(
            "top_k {} exceeds vocabulary size {}",
            config.top_k,
            dist.len()
        )));
    }
    let scaled: Vec<f64> = dist
        .scores()
        .iter()
        .map(|s| s / config.softmax_temperature)
        .collect();
    let probs = softmax(&scaled);
    let picked = top_k_indices(&scaled, config.top_k);
    let candidates = picked
        .into_iter()
        .map(|i| Candidate {
            gloss: glosses[i].clone(),
            emission: probs[i],
        })
        .collect();
    CandidateSet::new(segment_index, candidates)
}

/// Breadth-first beam search over per-segment candidate sets.
///
/// At each step every surviving hypothesis is extended by every candidate,
/// transition probabilities are fetched from `lm` with the hypothesis's own
/// prefix as context, and the `beam_width` best extensions survive. Returns
/// up to `beam_width` hypotheses sorted best-first. Backend queries are
/// cached by `(context, candidate list)` within the call.
pub fn beam_search(
    candidate_sets: &[CandidateSet],
    lm: &dyn TransitionModel,
    config: &DecoderConfig,
) -> Result<Vec<BeamHypothesis>> {
    config.validate()?;
    if candidate_sets.is_empty() {
        return Err(Error::InvalidConfig(
            "beam search needs at least one candidate set".into(),
        ));
    }
    let mut cache: HashMap<(Vec<String>, Vec<String>), Vec<f64>> = HashMap::new();
    let mut beams = vec![BeamHypothesis::empty()];
    for set in candidate_sets {
        let candidate_glosses = set.glosses();
        let mut extended = Vec::with_capacity(beams.len() * set.len());
        for hyp in &beams {
            let context: Vec<String> = match config.context_window {
                Some(window) => hyp.glosses[hyp.glosses.len().saturating_sub(window)..].to_vec(),
                None => hyp.glosses.clone(),
            };
            let key = (context.clone(), candidate_glosses.clone());
            let probs = match cache.get(&key) {
                Some(probs) => probs.clone(),
                None => {
                    let query = TransitionQuery::new(context, candidate_glosses.clone())?;
                    let probs = lm.transition_probs(&query)?;
                    if probs.len() != set.len() {
                        return Err(Error::LengthMismatch {
                            left: probs.len(),
                            right: set.len(),
                        });
                    }
                    if probs.iter().any(|p| !(p.is_finite() && *p > 0.0)) {
                        return Err(Error::NonFinite("transition probabilities".into()));
                    }
                    cache.insert(key, probs.clone());
                    probs
                }
            };
            for (candidate, p) in set.candidates().iter().zip(&probs) {
                extended.push(hyp.extended(candidate, p.ln(), config.alpha_bs));
            }
        }
        extended.sort_by(beam_order);
        extended.truncate(config.beam_width);
        beams = extended;
    }
    Ok(beams)
}
