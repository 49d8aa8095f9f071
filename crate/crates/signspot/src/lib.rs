//! Dictionary-based sign spotting with language-model-guided gloss disambiguation.
//!
//! The pipeline has two stages. The spotting stage matches per-segment feature
//! sequences against a gloss dictionary with DTW and cosine similarity
//! ([`similarity`], [`dictionary`]) and combines modalities at the distribution
//! or feature level ([`fusion`]). The disambiguation stage turns each similarity
//! distribution into a top-k candidate set and runs a beam search over the
//! sentence, mixing emission probabilities with transition probabilities from a
//! pluggable language model ([`decoder`], [`lm`]).
//!
//! [`synth`] generates controlled evaluation data: pseudo-gloss sentences from a
//! POS-tagged corpus, clean similarity distributions from a word embedder, and
//! two noise injections (word replacement and distribution corruption). [`eval`]
//! provides WER, top-k accuracy, and a grid sweep runner. [`formats`] defines
//! the versioned on-disk file formats tying the stages together.

pub mod decoder;
pub mod dictionary;
pub mod error;
pub mod eval;
pub mod features;
pub mod formats;
pub mod fusion;
pub mod lm;
pub mod pipeline;
pub mod similarity;
pub mod synth;

mod util;

pub use error::{Error, ErrorCategory, Result};
pub use features::{FeatureSequence, Modality, PooledVector};
