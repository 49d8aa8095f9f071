//! Count-based n-gram transition model with add-alpha smoothing.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lm::{TransitionModel, TransitionQuery};

/// Begin-of-sequence padding symbol. Angle brackets keep it out of the gloss
/// namespace (glosses are uppercase alphanumerics with `-`/`_`).
const BOS: &str = "<s>";

/// An order-n gloss language model trained by counting.
///
/// Counts are kept for every context length from 0 to `order - 1`, with
/// begin-of-sequence padding, so queries near the sentence start resolve to
/// genuine conditional counts rather than falling back to smoothing alone.
/// Probabilities are add-alpha smoothed and renormalized over the queried
/// candidate set.
#[derive(Debug, Clone)]
pub struct NgramLm {
    order: usize,
    smoothing_alpha: f64,
    counts: HashMap<Vec<String>, HashMap<String, u64>>,
}

impl NgramLm {
    /// Trains on a corpus of gloss sequences.
    pub fn train(corpus: &[Vec<String>], order: usize, smoothing_alpha: f64) -> Result<Self> {
        if corpus.is_empty() {
            return Err(Error::InvalidConfig("ngram corpus is empty".into()));
        }
        if order < 1 {
            return Err(Error::InvalidConfig("ngram order must be >= 1".into()));
        }
        if smoothing_alpha <= 0.0 {
            return Err(Error::InvalidConfig(
                "smoothing alpha must be positive".into(),
            ));
        }
        let mut counts: HashMap<Vec<String>, HashMap<String, u64>> = HashMap::new();
        for sentence in corpus {
            let mut padded: Vec<String> = vec![BOS.to_string(); order - 1];
            padded.extend(sentence.iter().cloned());
            for i in (order - 1)..padded.len() {
                let token = &padded[i];
                for ctx_len in 0..order {
                    let context = padded[i - ctx_len..i].to_vec();
                    *counts
                        .entry(context)
                        .or_default()
                        .entry(token.clone())
                        .or_insert(0) += 1;
                }
            }
        }
        Ok(Self {
            order,
            smoothing_alpha,
            counts,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Raw count of `next` after `context` (context trimmed/padded to the
    /// model's conditioning length).
    pub fn count(&self, context: &[&str], next: &str) -> u64 {
        let ctx = self.conditioning_context(context);
        self.counts
            .get(&ctx)
            .and_then(|nexts| nexts.get(next))
            .copied()
            .unwrap_or(0)
    }

    fn conditioning_context(&self, context: &[&str]) -> Vec<String> {
        let want = self.order - 1;
        let mut ctx: Vec<String> = Vec::with_capacity(want);
        let have = context.len().min(want);
        for _ in 0..(want - have) {
            ctx.push(BOS.to_string());
        }
        for token in &context[context.len() - have..] {
            ctx.push((*token).to_string());
        }
        ctx
    }
}

impl TransitionModel for NgramLm {
    fn transition_probs(&self, query: &TransitionQuery) -> Result<Vec<f64>> {
        let context: Vec<&str> = query.context().iter().map(|s| s.as_str()).collect();
        let smoothed: Vec<f64> = query
            .candidates()
            .iter()
            .map(|c| self.count(&context, c) as f64 + self.smoothing_alpha)
            .collect();
        let total: f64 = smoothed.iter().sum();
        Ok(smoothed.into_iter().map(|s| s / total).collect())
    }
}
