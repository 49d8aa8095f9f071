//! Transition-probability providers for gloss disambiguation.
//!
//! A [`TransitionModel`] answers one question: given the glosses decoded so
//! far and a candidate set for the next position, how likely is each
//! candidate? Three interchangeable backends are provided:
//!
//! - [`UniformLm`]: the null model, `1/k` for every candidate.
//! - [`NgramLm`]: add-alpha-smoothed counts from a gloss corpus, an exactly
//!   testable deterministic stand-in for a frozen LLM.
//! - [`RemoteLm`]: a completion-style logprob endpoint scored per candidate
//!   and softmaxed.
//!
//! Every backend returns a strictly positive vector summing to one over the
//! candidate set, so transition scores stay comparable across segments with
//! different candidate sets.

mod ngram;
mod prompt;
mod remote;

pub use ngram::NgramLm;
pub use prompt::{PromptStyle, PromptTemplate, EMPTY_CONTEXT_SENTINEL};
pub use remote::{parse_logprob_response, LogprobRequest, LogprobResponse, RemoteLm, API_KEY_ENV};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A request for transition probabilities: the decoded prefix plus the
/// candidate glosses for the next position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransitionQuery {
    context: Vec<String>,
    candidates: Vec<String>,
}

impl TransitionQuery {
    pub fn new(context: Vec<String>, candidates: Vec<String>) -> Result<Self> {
        if candidates.is_empty() {
            return Err(Error::InvalidCandidates);
        }
        let mut seen = std::collections::BTreeSet::new();
        if !candidates.iter().all(|c| seen.insert(c.as_str())) {
            return Err(Error::InvalidCandidates);
        }
        Ok(Self {
            context,
            candidates,
        })
    }

    pub fn context(&self) -> &[String] {
        &self.context
    }

    pub fn candidates(&self) -> &[String] {
        &self.candidates
    }
}

/// A source of transition probabilities over candidate glosses.
pub trait TransitionModel: Send + Sync {
    /// Returns one probability per candidate, in candidate order. Entries are
    /// strictly positive and sum to one.
    fn transition_probs(&self, query: &TransitionQuery) -> Result<Vec<f64>>;
}

/// The null model: every candidate gets `1/k`.
#[derive(Debug, Clone, Copy, Default)]
pub struct UniformLm;

impl TransitionModel for UniformLm {
    fn transition_probs(&self, query: &TransitionQuery) -> Result<Vec<f64>> {
        let k = query.candidates.len();
        Ok(vec![1.0 / k as f64; k])
    }
}

/// Which backend to construct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LmKind {
    Uniform,
    Ngram,
    Remote,
}

/// Declarative backend configuration, echoed into output files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LmBackendConfig {
    pub kind: LmKind,
    pub ngram_order: usize,
    pub smoothing_alpha: f64,
    pub endpoint_url: String,
    pub model_name: String,
    pub timeout_ms: u64,
    pub max_retries: u32,
}

impl Default for LmBackendConfig {
    fn default() -> Self {
        Self {
            kind: LmKind::Uniform,
            ngram_order: 2,
            smoothing_alpha: 0.1,
            endpoint_url: String::new(),
            model_name: String::new(),
            timeout_ms: 10_000,
            max_retries: 2,
        }
    }
}

impl LmBackendConfig {
    pub fn validate(&self) -> Result<()> {
        if self.kind == LmKind::Ngram {
            if self.ngram_order < 1 {
                return Err(Error::InvalidConfig("ngram order must be >= 1".into()));
            }
            if self.smoothing_alpha <= 0.0 {
                return Err(Error::InvalidConfig(
                    "smoothing alpha must be positive".into(),
                ));
            }
        }
        if self.kind == LmKind::Remote {
            if self.endpoint_url.is_empty() {
                return Err(Error::InvalidConfig(
                    "remote backend requires an endpoint url".into(),
                ));
            }
            if self.model_name.is_empty() {
                return Err(Error::InvalidConfig(
                    "remote backend requires a model name".into(),
                ));
            }
            if self.timeout_ms == 0 {
                return Err(Error::InvalidConfig("timeout must be positive".into()));
            }
        }
        Ok(())
    }
}
