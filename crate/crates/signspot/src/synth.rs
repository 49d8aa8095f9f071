//! Synthetic evaluation pipeline: vocabulary construction, pseudo-gloss
//! generation, clean similarity distributions from a word embedder, and
//! controlled noise injection.
//!
//! The pipeline simulates a sign spotter's output well enough to exercise the
//! disambiguation stage in isolation. A pseudo-gloss sentence is derived from
//! a POS-tagged sentence by keeping content-word tags; each retained word
//! becomes one segment whose clean similarity distribution is the cosine of
//! its embedding against every vocabulary word (so the target ranks first).
//! Two noise operators then degrade the distribution:
//!
//! - **Word replacement (WR)** knocks the top-1 word off rank 1 with a given
//!   probability, simulating a misclassification.
//! - **Distribution corruption (DC)** boosts a chosen number of dissimilar
//!   words above the previous maximum, flooding the top-k with noise.
//!
//! Everything is deterministic given the seed: each sentence derives its own
//! ChaCha8 stream from `(seed, sentence_index)`, so corpus-level runs are
//! reproducible and order-independent.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dictionary::{canonicalize_gloss, SimilarityDistribution, SourceTag};
use crate::error::{Error, Result};

/// Universal POS tag inventory accepted in tagged corpora.
pub const UPOS_TAGS: [&str; 17] = [
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM", "PART", "PRON", "PROPN",
    "PUNCT", "SCONJ", "SYM", "VERB", "X",
];

/// Tags whose tokens survive pseudo-gloss filtering.
pub const RETAINED_TAGS: [&str; 7] = ["NOUN", "NUM", "ADV", "PRON", "PROPN", "ADJ", "VERB"];

/// An ordered list of unique lowercase vocabulary words.
#[derive(Debug, Clone)]
pub struct Vocabulary {
    words: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    pub fn new(words: Vec<String>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::InvalidConfig("vocabulary is empty".into()));
        }
        let mut index = HashMap::with_capacity(words.len());
        let mut lowered = Vec::with_capacity(words.len());
        for word in words {
            let word = word.to_lowercase();
            if word.is_empty() {
                return Err(Error::InvalidConfig("empty vocabulary word".into()));
            }
            if index.insert(word.clone(), lowered.len()).is_some() {
                return Err(Error::InvalidConfig(format!(
                    "duplicate vocabulary word `{word}`"
                )));
            }
            lowered.push(word);
        }
        Ok(Self {
            words: lowered,
            index,
        })
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &str {
        &self.words[i]
    }

    /// Case-insensitive lookup, so gloss labels resolve directly.
    pub fn index_of(&self, word: &str) -> Option<usize> {
        self.index.get(&word.to_lowercase()).copied()
    }

    /// The vocabulary rendered as canonical gloss labels (uppercase).
    pub fn gloss_labels(&self) -> Vec<String> {
        self.words.iter().map(|w| canonicalize_gloss(w)).collect()
    }
}

/// Keeps the `target_size` most frequent words that also appear in the sign
/// lexicon, preserving frequency order.
///
/// Mirrors the capped construction of the reference vocabularies: the target
/// size may not exceed the overlap between the two lists.
pub fn build_vocab(
    frequency_list: &[String],
    sign_lexicon: &HashSet<String>,
    target_size: usize,
) -> Result<Vocabulary> {
    if target_size == 0 {
        return Err(Error::InvalidConfig("vocabulary size must be >= 1".into()));
    }
    let lexicon: HashSet<String> = sign_lexicon.iter().map(|w| w.to_lowercase()).collect();
    let mut seen = HashSet::new();
    let mut intersection = Vec::new();
    for word in frequency_list {
        let word = word.to_lowercase();
        if lexicon.contains(&word) && seen.insert(word.clone()) {
            intersection.push(word);
        }
    }
    if target_size > intersection.len() {
        return Err(Error::VocabTargetTooLarge {
            requested: target_size,
            available: intersection.len(),
        });
    }
    intersection.truncate(target_size);
    Vocabulary::new(intersection)
}

/// One token of a POS-tagged sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedToken {
    pub word: String,
    pub tag: String,
}

/// A nonempty POS-tagged sentence with tags from [`UPOS_TAGS`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedSentence {
    tokens: Vec<TaggedToken>,
}

impl TaggedSentence {
    pub fn new(tokens: Vec<TaggedToken>) -> Result<Self> {
        if tokens.is_empty() {
            return Err(Error::InvalidConfig("tagged sentence is empty".into()));
        }
        for (i, token) in tokens.iter().enumerate() {
            if token.word.is_empty() {
                return Err(Error::InvalidConfig(format!("empty word at token {i}")));
            }
            if !UPOS_TAGS.contains(&token.tag.as_str()) {
                return Err(Error::InvalidConfig(format!(
                    "unknown POS tag `{}` at token {i}",
                    token.tag
                )));
            }
        }
        Ok(Self { tokens })
    }

    pub fn tokens(&self) -> &[TaggedToken] {
        &self.tokens
    }
}

/// Uppercased content words of the sentence, in order. May be empty when no
/// token carries a retained tag; downstream stages skip such sentences.
pub fn pseudo_gloss(sentence: &TaggedSentence) -> Vec<String> {
    sentence
        .tokens()
        .iter()
        .filter(|t| RETAINED_TAGS.contains(&t.tag.as_str()))
        .map(|t| canonicalize_gloss(&t.word))
        .collect()
}

/// Maps words to real vectors for direct-matching distributions.
pub trait WordEmbedder: Send + Sync {
    fn embed(&self, word: &str) -> Result<Vec<f64>>;
    fn dim(&self) -> usize;
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash = FNV_OFFSET;
    for b in bytes {
        hash ^= u64::from(*b);
        hash = hash.wrapping_mul(FNV_PRIME);
    }
    hash
}

/// Dependency-free embedder: character trigrams of `#word#` plus a whole-word
/// token, FNV-1a hashed into a fixed-width count vector, L2-normalized.
///
/// Morphologically related words share trigrams and score high against each
/// other; unrelated words land in disjoint buckets. Deterministic across runs
/// and platforms.
#[derive(Debug, Clone, Copy)]
pub struct TrigramHashEmbedder {
    width: usize,
}

impl Default for TrigramHashEmbedder {
    fn default() -> Self {
        Self { width: 256 }
    }
}

impl TrigramHashEmbedder {
    pub fn new(width: usize) -> Result<Self> {
        if width < 8 {
            return Err(Error::InvalidConfig(
                "embedder width must be at least 8".into(),
            ));
        }
        Ok(Self { width })
    }
}

impl WordEmbedder for TrigramHashEmbedder {
    fn embed(&self, word: &str) -> Result<Vec<f64>> {
        let word = word.to_lowercase();
        if word.is_empty() {
            return Err(Error::InvalidConfig("cannot embed an empty word".into()));
        }
        let mut values = vec![0.0; self.width];
        let padded: Vec<char> = format!("#{word}#").chars().collect();
        for window in padded.windows(3) {
            let trigram: String = window.iter().collect();
            values[(fnv1a(trigram.as_bytes()) % self.width as u64) as usize] += 1.0;
        }
        // Whole-word token separates words with overlapping trigram sets.
        let whole = format!("*{word}");
        values[(fnv1a(whole.as_bytes()) % self.width as u64) as usize] += 1.0;
        let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in &mut values {
            *v /= norm;
        }
        Ok(values)
    }

    fn dim(&self) -> usize {
        self.width
    }
}

/// Embedder backed by an external word-vector table (one `word v1 v2 ...`
/// line per word). Unknown words are errors, surfaced as OOV upstream.
#[derive(Debug, Clone)]
pub struct FileEmbedder {
    vectors: HashMap<String, Vec<f64>>,
    dim: usize,
}

impl FileEmbedder {
    pub fn new(vectors: HashMap<String, Vec<f64>>) -> Result<Self> {
        let mut dims = vectors.values().map(Vec::len);
        let Some(dim) = dims.next() else {
            return Err(Error::InvalidConfig("word-vector table is empty".into()));
        };
        if dims.any(|d| d != dim) || dim == 0 {
            return Err(Error::InvalidConfig(
                "word vectors must share one positive dimension".into(),
            ));
        }
        Ok(Self { vectors, dim })
    }
}

impl WordEmbedder for FileEmbedder {
    fn embed(&self, word: &str) -> Result<Vec<f64>> {
        self.vectors
            .get(&word.to_lowercase())
            .cloned()
            .ok_or_else(|| Error::OutOfVocabulary(word.to_string()))
    }

    fn dim(&self) -> usize {
        self.dim
    }
}

/// A vocabulary with precomputed unit-norm embeddings, so per-segment clean
/// distributions reduce to dot products.
pub struct EmbeddedVocabulary {
    vocab: Vocabulary,
    unit_vectors: Vec<Vec<f64>>,
}

impl EmbeddedVocabulary {
    pub fn new(vocab: Vocabulary, embedder: &dyn WordEmbedder) -> Result<Self> {
        let mut unit_vectors = Vec::with_capacity(vocab.size());
        for word in vocab.words() {
            let v = embedder.embed(word)?;
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm == 0.0 {
                return Err(Error::ZeroNorm);
            }
            unit_vectors.push(v.into_iter().map(|x| x / norm).collect());
        }
        Ok(Self {
            vocab,
            unit_vectors,
        })
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    /// Cosine of the target word against every vocabulary word. The target
    /// itself scores 1 and therefore ranks first.
    pub fn clean_distribution(&self, target: &str) -> Result<SimilarityDistribution> {
        let target_index = self
            .vocab
            .index_of(target)
            .ok_or_else(|| Error::OutOfVocabulary(target.to_string()))?;
        let t = &self.unit_vectors[target_index];
        let scores = self
            .unit_vectors
            .iter()
            .map(|v| {
                let dot: f64 = t.iter().zip(v).map(|(a, b)| a * b).sum();
                dot.clamp(-1.0, 1.0)
            })
            .collect();
        SimilarityDistribution::new(scores, SourceTag::Synth)
    }
}

/// Convenience wrapper over [`EmbeddedVocabulary::clean_distribution`] for
/// one-off queries.
pub fn clean_distribution(
    target: &str,
    vocab: &Vocabulary,
    embedder: &dyn WordEmbedder,
) -> Result<SimilarityDistribution> {
    EmbeddedVocabulary::new(vocab.clone(), embedder)?.clean_distribution(target)
}

/// Where the displaced top-1 word ends up after word replacement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WrPlacement {
    /// The random word is boosted just above the old maximum; the former
    /// top-1 keeps its score and becomes the runner-up. This keeps the true
    /// word inside the top candidates, which is what makes downstream
    /// correction possible at all.
    #[default]
    RunnerUp,
    /// Scores of the top-1 and the random word are exchanged: a pure
    /// permutation of the score multiset, dropping the former top-1 to the
    /// random word's old rank.
    Swap,
    /// The random word takes the old top score; the former top-1 drops
    /// strictly below the minimum.
    DemoteToLast,
}

impl fmt::Display for WrPlacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WrPlacement::RunnerUp => "runner-up",
            WrPlacement::Swap => "swap",
            WrPlacement::DemoteToLast => "demote-last",
        };
        f.write_str(s)
    }
}

impl FromStr for WrPlacement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "runner-up" | "runnerup" => Ok(WrPlacement::RunnerUp),
            "swap" => Ok(WrPlacement::Swap),
            "demote-last" | "demote" => Ok(WrPlacement::DemoteToLast),
            other => Err(Error::InvalidConfig(format!(
                "unknown wr placement `{other}`"
            ))),
        }
    }
}

/// Noise injection parameters. Echoed into output files for reproducibility.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseConfig {
    pub wr_rate: f64,
    pub dc_count: usize,
    pub seed: u64,
    #[serde(default)]
    pub wr_placement: WrPlacement,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self {
            wr_rate: 0.0,
            dc_count: 0,
            seed: 0,
            wr_placement: WrPlacement::default(),
        }
    }
}

impl NoiseConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.wr_rate) {
            return Err(Error::ParameterRange {
                name: "wr_rate",
                value: self.wr_rate,
                range: "[0, 1]",
            });
        }
        Ok(())
    }
}

/// The per-sentence random stream: the corpus seed keys the generator, the
/// sentence index selects the ChaCha stream. Sentences can be processed in
/// any order (or in parallel) with identical results.
pub fn sentence_rng(seed: u64, sentence_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sentence_index);
    rng
}

fn boost(rng: &mut ChaCha8Rng) -> f64 {
    // Uniform over (0, 0.1]: strictly positive so boosted entries dominate.
    0.1 - rng.random_range(0.0..0.1)
}

/// With probability `wr_rate`, displaces the current top-1 entry in favor of
/// a uniformly random other entry, according to [`WrPlacement`]. Otherwise
/// returns the distribution unchanged.
pub fn word_replacement(
    dist: &SimilarityDistribution,
    cfg: &NoiseConfig,
    rng: &mut ChaCha8Rng,
) -> Result<SimilarityDistribution> {
    cfg.validate()?;
    if cfg.wr_rate == 0.0 {
        return Ok(dist.clone());
    }
    if dist.len() < 2 {
        return Err(Error::InvalidConfig(
            "word replacement needs at least two entries".into(),
        ));
    }
    if rng.random::<f64>() >= cfg.wr_rate {
        return Ok(dist.clone());
    }
    let top = dist.argmax();
    let draw = rng.random_range(0..dist.len() - 1);
    let partner = if draw >= top { draw + 1 } else { draw };
    let mut out = dist.clone();
    let scores = out.scores_mut();
    match cfg.wr_placement {
        WrPlacement::RunnerUp => {
            scores[partner] = scores[top] + boost(rng);
        }
        WrPlacement::Swap => {
            scores.swap(top, partner);
        }
        WrPlacement::DemoteToLast => {
            let min = scores.iter().cloned().fold(f64::INFINITY, f64::min);
            scores[partner] = scores[top];
            scores[top] = min - 1e-3;
        }
    }
    Ok(out)
}

/// Boosts `dc_count` entries sampled uniformly from the bottom half of the
/// ranking (excluding the target) to strictly above the previous maximum.
///
/// The distribution's scores are taken as the similarity-to-target ranking,
/// which holds for clean synthetic distributions. Exactly `dc_count` entries
/// exceed the former maximum afterwards; the target's score is untouched.
pub fn distribution_corruption(
    dist: &SimilarityDistribution,
    target_index: usize,
    cfg: &NoiseConfig,
    rng: &mut ChaCha8Rng,
) -> Result<SimilarityDistribution> {
    if cfg.dc_count == 0 {
        return Ok(dist.clone());
    }
    let v = dist.len();
    if target_index >= v {
        return Err(Error::IndexOutOfRange {
            index: target_index,
            len: v,
        });
    }
    if cfg.dc_count >= v {
        return Err(Error::InvalidConfig(format!(
            "dc_count {} must be smaller than the vocabulary size {v}",
            cfg.dc_count
        )));
    }
    let mut ascending: Vec<usize> = (0..v).collect();
    ascending.sort_by(|&a, &b| {
        dist.scores()[a]
            .partial_cmp(&dist.scores()[b])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let pool: Vec<usize> = ascending[..v / 2]
        .iter()
        .copied()
        .filter(|&i| i != target_index)
        .collect();
    if cfg.dc_count > pool.len() {
        return Err(Error::InvalidConfig(format!(
            "dc_count {} exceeds the {} dissimilar entries available (bottom half, target excluded)",
            cfg.dc_count,
            pool.len()
        )));
    }
    let prev_max = dist
        .scores()
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let chosen = rand::seq::index::sample(rng, pool.len(), cfg.dc_count);
    let mut out = dist.clone();
    let scores = out.scores_mut();
    for pick in chosen.iter() {
        scores[pool[pick]] = prev_max + boost(rng);
    }
    Ok(out)
}

/// One synthesized sentence: kept references with their vocabulary indices
/// and noisy distributions, plus the count of dropped OOV tokens.
#[derive(Debug, Clone)]
pub struct SynthSentence {
    pub reference: Vec<String>,
    pub target_indices: Vec<usize>,
    pub distributions: Vec<SimilarityDistribution>,
    pub oov_dropped: usize,
}

/// Runs the full noise pipeline for one tagged sentence: pseudo-gloss, clean
/// distribution per in-vocabulary token, then WR and DC with the sentence's
/// own random stream. OOV tokens are dropped and counted, not fatal.
pub fn synthesize_sentence(
    sentence: &TaggedSentence,
    embedded: &EmbeddedVocabulary,
    noise: &NoiseConfig,
    sentence_index: u64,
) -> Result<SynthSentence> {
    noise.validate()?;
    let mut rng = sentence_rng(noise.seed, sentence_index);
    let mut reference = Vec::new();
    let mut target_indices = Vec::new();
    let mut distributions = Vec::new();
    let mut oov_dropped = 0;
    for gloss in pseudo_gloss(sentence) {
        let Some(target_index) = embedded.vocab().index_of(&gloss) else {
            oov_dropped += 1;
            continue;
        };
        let clean = embedded.clean_distribution(embedded.vocab().word(target_index))?;
        let replaced = word_replacement(&clean, noise, &mut rng)?;
        let corrupted = distribution_corruption(&replaced, target_index, noise, &mut rng)?;
        reference.push(gloss);
        target_indices.push(target_index);
        distributions.push(corrupted);
    }
    Ok(SynthSentence {
        reference,
        target_indices,
        distributions,
        oov_dropped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn lexicon(list: &[&str]) -> HashSet<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn build_vocab_intersects_in_frequency_order() {
        let vocab = build_vocab(&words(&["a", "b", "c", "d"]), &lexicon(&["b", "d"]), 2).unwrap();
        assert_eq!(vocab.words(), &["b", "d"]);
    }

    #[test]
    fn build_vocab_rejects_oversized_target() {
        let err = build_vocab(&words(&["a", "b"]), &lexicon(&["a", "b"]), 3).unwrap_err();
        assert!(matches!(
            err,
            Error::VocabTargetTooLarge {
                requested: 3,
                available: 2
            }
        ));
    }

    #[test]
    fn pseudo_gloss_keeps_content_tags_in_order() {
        let sentence = TaggedSentence::new(
            [
                ("I", "PRON"),
                ("love", "VERB"),
                ("walking", "VERB"),
                ("on", "ADP"),
                ("a", "DET"),
                ("Sunday", "PROPN"),
                ("afternoon", "NOUN"),
            ]
            .iter()
            .map(|(w, t)| TaggedToken {
                word: w.to_string(),
                tag: t.to_string(),
            })
            .collect(),
        )
        .unwrap();
        assert_eq!(
            pseudo_gloss(&sentence),
            words(&["I", "LOVE", "WALKING", "SUNDAY", "AFTERNOON"])
        );
    }

    #[test]
    fn pseudo_gloss_can_be_empty_and_keeps_num() {
        let all_det = TaggedSentence::new(vec![
            TaggedToken {
                word: "the".into(),
                tag: "DET".into(),
            },
            TaggedToken {
                word: "a".into(),
                tag: "DET".into(),
            },
        ])
        .unwrap();
        assert!(pseudo_gloss(&all_det).is_empty());
        let nums = TaggedSentence::new(vec![
            TaggedToken {
                word: "five".into(),
                tag: "NUM".into(),
            },
            TaggedToken {
                word: "dogs".into(),
                tag: "NOUN".into(),
            },
        ])
        .unwrap();
        assert_eq!(pseudo_gloss(&nums), words(&["FIVE", "DOGS"]));
    }

    #[test]
    fn tagged_sentence_rejects_unknown_tags() {
        let err = TaggedSentence::new(vec![TaggedToken {
            word: "x".into(),
            tag: "FOO".into(),
        }]);
        assert!(err.is_err());
    }

    #[test]
    fn trigram_embedder_prefers_shared_trigrams() {
        let embedder = TrigramHashEmbedder::default();
        let walk = embedder.embed("walk").unwrap();
        let walking = embedder.embed("walking").unwrap();
        let purple = embedder.embed("purple").unwrap();
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        let norm = |a: &[f64]| dot(a, a).sqrt();
        let cos_related = dot(&walk, &walking) / (norm(&walk) * norm(&walking));
        let cos_unrelated = dot(&walk, &purple) / (norm(&walk) * norm(&purple));
        assert!(cos_related > cos_unrelated);
        assert!(cos_related > 0.3);
    }

    #[test]
    fn clean_distribution_ranks_target_first() {
        let vocab = Vocabulary::new(words(&["dog", "cat", "walking"])).unwrap();
        let dist = clean_distribution("dog", &vocab, &TrigramHashEmbedder::default()).unwrap();
        assert_eq!(dist.argmax(), 0);
        assert!((dist.scores()[0] - 1.0).abs() < 1e-9);
        assert_eq!(dist.source(), SourceTag::Synth);
    }

    #[test]
    fn clean_distribution_degenerate_vocab() {
        let vocab = Vocabulary::new(words(&["only"])).unwrap();
        let dist = clean_distribution("only", &vocab, &TrigramHashEmbedder::default()).unwrap();
        assert_eq!(dist.len(), 1);
        assert!((dist.scores()[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn clean_distribution_flags_oov() {
        let vocab = Vocabulary::new(words(&["dog"])).unwrap();
        let err = clean_distribution("zebra", &vocab, &TrigramHashEmbedder::default());
        assert!(matches!(err, Err(Error::OutOfVocabulary(w)) if w == "zebra"));
    }

    fn dist(scores: Vec<f64>) -> SimilarityDistribution {
        SimilarityDistribution::new(scores, SourceTag::Synth).unwrap()
    }

    #[test]
    fn wr_zero_rate_is_identity() {
        let d = dist(vec![0.9, 0.1, 0.4]);
        let cfg = NoiseConfig::default();
        let mut rng = sentence_rng(1, 0);
        assert_eq!(word_replacement(&d, &cfg, &mut rng).unwrap(), d);
    }

    #[test]
    fn wr_forced_on_two_entries_always_flips() {
        let cfg = NoiseConfig {
            wr_rate: 1.0,
            ..Default::default()
        };
        for seed in 0..20 {
            let d = dist(vec![0.8, 0.2]);
            let mut rng = sentence_rng(seed, 0);
            let out = word_replacement(&d, &cfg, &mut rng).unwrap();
            assert_eq!(out.argmax(), 1, "seed {seed}");
        }
    }

    #[test]
    fn wr_swap_mode_permutes_two_scores() {
        let cfg = NoiseConfig {
            wr_rate: 1.0,
            wr_placement: WrPlacement::Swap,
            ..Default::default()
        };
        let d = dist(vec![0.9, 0.5, 0.1, 0.3]);
        let mut rng = sentence_rng(7, 3);
        let out = word_replacement(&d, &cfg, &mut rng).unwrap();
        let mut before = d.scores().to_vec();
        let mut after = out.scores().to_vec();
        before.sort_by(f64::total_cmp);
        after.sort_by(f64::total_cmp);
        assert_eq!(before, after);
        assert_ne!(out.argmax(), 0);
    }

    #[test]
    fn wr_demote_mode_drops_top_below_min() {
        let cfg = NoiseConfig {
            wr_rate: 1.0,
            wr_placement: WrPlacement::DemoteToLast,
            ..Default::default()
        };
        let d = dist(vec![0.9, 0.5, 0.1]);
        let mut rng = sentence_rng(11, 0);
        let out = word_replacement(&d, &cfg, &mut rng).unwrap();
        let min = out.scores().iter().cloned().fold(f64::INFINITY, f64::min);
        assert_eq!(out.scores()[0], min);
        assert!(min < 0.1);
    }

    #[test]
    fn wr_rejects_tiny_distribution() {
        let cfg = NoiseConfig {
            wr_rate: 0.5,
            ..Default::default()
        };
        let d = dist(vec![1.0]);
        let mut rng = sentence_rng(0, 0);
        assert!(word_replacement(&d, &cfg, &mut rng).is_err());
    }

    #[test]
    fn wr_monte_carlo_rate_within_two_percent() {
        let cfg = NoiseConfig {
            wr_rate: 0.5,
            ..Default::default()
        };
        let d = dist(vec![0.9, 0.6, 0.3, 0.0]);
        let mut replaced = 0;
        let trials = 10_000;
        for i in 0..trials {
            let mut rng = sentence_rng(42, i);
            let out = word_replacement(&d, &cfg, &mut rng).unwrap();
            if out.argmax() != 0 {
                replaced += 1;
            }
        }
        let rate = replaced as f64 / trials as f64;
        assert!((rate - 0.5).abs() < 0.02, "observed {rate}");
    }

    #[test]
    fn dc_zero_count_is_identity() {
        let d = dist(vec![0.9, 0.1]);
        let cfg = NoiseConfig::default();
        let mut rng = sentence_rng(0, 0);
        assert_eq!(distribution_corruption(&d, 0, &cfg, &mut rng).unwrap(), d);
    }

    #[test]
    fn dc_boosts_exactly_count_above_old_max() {
        let scores: Vec<f64> = (0..40).map(|i| 1.0 - i as f64 / 40.0).collect();
        let d = dist(scores);
        let cfg = NoiseConfig {
            dc_count: 5,
            ..Default::default()
        };
        let mut rng = sentence_rng(5, 9);
        let out = distribution_corruption(&d, 0, &cfg, &mut rng).unwrap();
        let above = out.scores().iter().filter(|&&s| s > 1.0).count();
        assert_eq!(above, 5);
        assert_eq!(out.scores()[0], 1.0); // target untouched
    }

    #[test]
    fn dc_pushes_target_out_of_small_top_k() {
        // After 5 boosts plus the intact ranking, the target sits at rank 6.
        let scores: Vec<f64> = (0..30).map(|i| 1.0 - i as f64 / 30.0).collect();
        let d = dist(scores);
        let cfg = NoiseConfig {
            dc_count: 5,
            ..Default::default()
        };
        let mut rng = sentence_rng(1, 1);
        let out = distribution_corruption(&d, 0, &cfg, &mut rng).unwrap();
        let top5 = crate::util::top_k_indices(out.scores(), 5);
        assert!(!top5.contains(&0));
        let top6 = crate::util::top_k_indices(out.scores(), 6);
        assert!(top6.contains(&0));
    }

    #[test]
    fn dc_rejects_excessive_count() {
        let d = dist(vec![0.3, 0.2, 0.1, 0.0]);
        let cfg = NoiseConfig {
            dc_count: 4,
            ..Default::default()
        };
        let mut rng = sentence_rng(0, 0);
        assert!(distribution_corruption(&d, 0, &cfg, &mut rng).is_err());
    }

    #[test]
    fn noise_is_deterministic_given_seed_and_stream() {
        let scores: Vec<f64> = (0..50).map(|i| (i as f64 * 0.7).sin()).collect();
        let d = dist(scores);
        let cfg = NoiseConfig {
            wr_rate: 0.7,
            dc_count: 5,
            seed: 123,
            ..Default::default()
        };
        let run = || {
            let mut rng = sentence_rng(cfg.seed, 17);
            let replaced = word_replacement(&d, &cfg, &mut rng).unwrap();
            distribution_corruption(&replaced, 3, &cfg, &mut rng).unwrap()
        };
        assert_eq!(run(), run());
    }
}
