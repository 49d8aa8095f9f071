//! Gloss dictionary storage, modality variants, and segment lookup.
//!
//! A dictionary maps each gloss to prototype feature sequences, one per
//! modality. Variant dictionaries for a single modality are built from the
//! same entries without retraining anything: [`Dictionary::restrict`] selects
//! a modality, and building with a `MID` config concatenates the `I3D`, `RH`
//! and `LH` streams frame-wise. [`lookup`] scores a segment against every
//! entry and returns a similarity distribution aligned with entry order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{FeatureSequence, Modality};
use crate::similarity::{combined_score_with, dtw_distance_with, DtwOptions};

/// Which pipeline stage a similarity distribution came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SourceTag {
    #[serde(rename = "I3D")]
    I3d,
    #[serde(rename = "RH")]
    Rh,
    #[serde(rename = "MID")]
    Mid,
    #[serde(rename = "LATE")]
    Late,
    #[serde(rename = "ENSEMBLE")]
    Ensemble,
    #[serde(rename = "SYNTH")]
    Synth,
}

impl SourceTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            SourceTag::I3d => "I3D",
            SourceTag::Rh => "RH",
            SourceTag::Mid => "MID",
            SourceTag::Late => "LATE",
            SourceTag::Ensemble => "ENSEMBLE",
            SourceTag::Synth => "SYNTH",
        }
    }
}

impl fmt::Display for SourceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SourceTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "I3D" => Ok(SourceTag::I3d),
            "RH" => Ok(SourceTag::Rh),
            "MID" => Ok(SourceTag::Mid),
            "LATE" => Ok(SourceTag::Late),
            "ENSEMBLE" => Ok(SourceTag::Ensemble),
            "SYNTH" => Ok(SourceTag::Synth),
            other => Err(Error::InvalidConfig(format!(
                "unknown source tag `{other}`"
            ))),
        }
    }
}

/// A score vector over the full gloss vocabulary for one segment.
///
/// Index `i` always refers to entry `i` of the dictionary (or vocabulary) the
/// distribution was computed against.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityDistribution {
    scores: Vec<f64>,
    source: SourceTag,
}

impl SimilarityDistribution {
    pub fn new(scores: Vec<f64>, source: SourceTag) -> Result<Self> {
        if scores.is_empty() {
            return Err(Error::LengthMismatch { left: 0, right: 1 });
        }
        if let Some(i) = scores.iter().position(|s| !s.is_finite()) {
            return Err(Error::NonFinite(format!("score {i}")));
        }
        Ok(Self { scores, source })
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn source(&self) -> SourceTag {
        self.source
    }

    pub fn with_source(mut self, source: SourceTag) -> Self {
        self.source = source;
        self
    }

    /// Index of the highest score, ties broken by ascending index.
    pub fn argmax(&self) -> usize {
        crate::util::argmax(&self.scores)
    }

    pub(crate) fn scores_mut(&mut self) -> &mut [f64] {
        &mut self.scores
    }
}

/// Canonical gloss form: trimmed, uppercased, internal spaces replaced by
/// hyphens. Fingerspelling prefixes like `FS_CHRIS` pass through unchanged
/// apart from case.
pub fn canonicalize_gloss(raw: &str) -> String {
    raw.trim().to_uppercase().replace(' ', "-")
}

/// One gloss with its per-modality prototype sequences.
#[derive(Debug, Clone)]
pub struct DictionaryEntry {
    gloss: String,
    features: BTreeMap<Modality, FeatureSequence>,
}

impl DictionaryEntry {
    /// Builds an entry, canonicalizing the gloss label.
    pub fn new(gloss: &str, features: BTreeMap<Modality, FeatureSequence>) -> Result<Self> {
        let gloss = canonicalize_gloss(gloss);
        if gloss.is_empty() {
            return Err(Error::InvalidConfig("empty gloss label".into()));
        }
        if features.is_empty() {
            return Err(Error::MissingModality {
                gloss,
                modality: "any".into(),
            });
        }
        Ok(Self { gloss, features })
    }

    pub fn gloss(&self) -> &str {
        &self.gloss
    }

    pub fn features(&self) -> &BTreeMap<Modality, FeatureSequence> {
        &self.features
    }

    pub fn feature(&self, modality: Modality) -> Option<&FeatureSequence> {
        self.features.get(&modality)
    }
}

/// Per-frame concatenation in the fixed order `I3D ⊕ RH ⊕ LH`.
///
/// All three sequences must have the same frame count; the output dimension
/// is the sum of the input dimensions (5120 for 1024/2048/2048 inputs).
pub fn concat_modalities(
    i3d: &FeatureSequence,
    rh: &FeatureSequence,
    lh: &FeatureSequence,
) -> Result<FeatureSequence> {
    concat_modalities_with(i3d, rh, lh, false)
}

/// Like [`concat_modalities`], optionally resampling the hand streams to the
/// I3D frame count first (hand crops are per-frame while I3D is per-window).
pub fn concat_modalities_with(
    i3d: &FeatureSequence,
    rh: &FeatureSequence,
    lh: &FeatureSequence,
    resample: bool,
) -> Result<FeatureSequence> {
    let rh_owned;
    let lh_owned;
    let (rh, lh) = if resample {
        rh_owned = rh.resample_nearest(i3d.len())?;
        lh_owned = lh.resample_nearest(i3d.len())?;
        (&rh_owned, &lh_owned)
    } else {
        (rh, lh)
    };
    for (name, seq) in [("RH", rh), ("LH", lh)] {
        if seq.len() != i3d.len() {
            return Err(Error::FrameCountMismatch {
                context: format!("I3D vs {name}"),
                left: i3d.len(),
                right: seq.len(),
            });
        }
    }
    let frames = (0..i3d.len())
        .map(|t| {
            let mut row = Vec::with_capacity(i3d.dim() + rh.dim() + lh.dim());
            row.extend_from_slice(i3d.frame(t));
            row.extend_from_slice(rh.frame(t));
            row.extend_from_slice(lh.frame(t));
            row
        })
        .collect();
    FeatureSequence::new(Modality::Mid, frames)
}

/// Whether lookup uses the weighted DTW+cosine score or DTW alone.
///
/// `DtwOnly` is the mode used with intermediate-fusion (`MID`) dictionaries,
/// where pooling before cosine would dilute the concatenated streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LookupMode {
    Combined,
    DtwOnly,
}

/// An immutable gloss dictionary restricted to a modality configuration.
#[derive(Debug, Clone)]
pub struct Dictionary {
    entries: Vec<DictionaryEntry>,
    modalities: BTreeSet<Modality>,
}

impl Dictionary {
    /// Validates and stores `entries`, keeping only the modalities in
    /// `modality_config`.
    ///
    /// With a `{MID}` config, each entry's `MID` sequence is built on the fly
    /// as the frame-wise concatenation of its `I3D`, `RH` and `LH` streams
    /// (unless the entry already carries one).
    pub fn build(
        entries: Vec<DictionaryEntry>,
        modality_config: &BTreeSet<Modality>,
    ) -> Result<Self> {
        Self::build_with(entries, modality_config, false)
    }

    /// [`Dictionary::build`] with optional nearest-index resampling of the
    /// hand streams when deriving `MID` sequences.
    pub fn build_with(
        entries: Vec<DictionaryEntry>,
        modality_config: &BTreeSet<Modality>,
        resample_mid: bool,
    ) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidConfig("dictionary has no entries".into()));
        }
        if modality_config.is_empty() {
            return Err(Error::InvalidConfig(
                "modality config must name at least one modality".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        let mut kept = Vec::with_capacity(entries.len());
        for entry in entries {
            if !seen.insert(entry.gloss.clone()) {
                return Err(Error::DuplicateGloss(entry.gloss));
            }
            let mut features = BTreeMap::new();
            for &modality in modality_config {
                match entry.features.get(&modality) {
                    Some(seq) => {
                        features.insert(modality, seq.clone());
                    }
                    None if modality == Modality::Mid => {
                        let get = |m: Modality| {
                            entry
                                .features
                                .get(&m)
                                .ok_or_else(|| Error::MissingModality {
                                    gloss: entry.gloss.clone(),
                                    modality: m.to_string(),
                                })
                        };
                        let mid = concat_modalities_with(
                            get(Modality::I3d)?,
                            get(Modality::Rh)?,
                            get(Modality::Lh)?,
                            resample_mid,
                        )
                        .map_err(|e| match e {
                            Error::FrameCountMismatch {
                                context,
                                left,
                                right,
                            } => Error::FrameCountMismatch {
                                context: format!("{} ({context})", entry.gloss),
                                left,
                                right,
                            },
                            other => other,
                        })?;
                        features.insert(Modality::Mid, mid);
                    }
                    None => {
                        return Err(Error::MissingModality {
                            gloss: entry.gloss.clone(),
                            modality: modality.to_string(),
                        });
                    }
                }
            }
            kept.push(DictionaryEntry {
                gloss: entry.gloss,
                features,
            });
        }
        Ok(Self {
            entries: kept,
            modalities: modality_config.clone(),
        })
    }

    /// Number of vocabulary entries (`V`).
    pub fn vocab_size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[DictionaryEntry] {
        &self.entries
    }

    pub fn modalities(&self) -> &BTreeSet<Modality> {
        &self.modalities
    }

    pub fn glosses(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.gloss.clone()).collect()
    }

    pub fn index_of(&self, gloss: &str) -> Option<usize> {
        let canon = canonicalize_gloss(gloss);
        self.entries.iter().position(|e| e.gloss == canon)
    }

    /// Builds the single-modality variant dictionary for `modality`.
    pub fn restrict(&self, modality: Modality) -> Result<Dictionary> {
        self.restrict_with(modality, false)
    }

    pub fn restrict_with(&self, modality: Modality, resample_mid: bool) -> Result<Dictionary> {
        let config: BTreeSet<Modality> = [modality].into();
        Dictionary::build_with(self.entries.clone(), &config, resample_mid)
    }
}

fn single_modality(dict: &Dictionary) -> Result<(Modality, SourceTag)> {
    if dict.modalities.len() != 1 {
        return Err(Error::InvalidConfig(format!(
            "lookup requires a single-modality dictionary variant, got {:?}; restrict() first",
            dict.modalities
        )));
    }
    let modality = *dict.modalities.iter().next().expect("nonempty");
    let tag = match modality {
        Modality::I3d => SourceTag::I3d,
        Modality::Rh => SourceTag::Rh,
        Modality::Mid => SourceTag::Mid,
        Modality::Synth => SourceTag::Synth,
        Modality::Lh => {
            return Err(Error::InvalidConfig(
                "left-hand features participate via MID fusion only".into(),
            ))
        }
    };
    Ok((modality, tag))
}

/// Scores a segment against every dictionary entry.
///
/// In `Combined` mode, `scores[i]` is the weighted DTW+cosine score of the
/// segment against entry `i`; in `DtwOnly` mode it is the negated DTW
/// distance. Output order matches dictionary entry order, so adding entries
/// never changes existing scores.
pub fn lookup(
    segment: &BTreeMap<Modality, FeatureSequence>,
    dict: &Dictionary,
    alpha_s: f64,
    mode: LookupMode,
) -> Result<SimilarityDistribution> {
    lookup_with(segment, dict, alpha_s, mode, &DtwOptions::default())
}

pub fn lookup_with(
    segment: &BTreeMap<Modality, FeatureSequence>,
    dict: &Dictionary,
    alpha_s: f64,
    mode: LookupMode,
    opts: &DtwOptions,
) -> Result<SimilarityDistribution> {
    let (modality, tag) = single_modality(dict)?;
    let query = segment
        .get(&modality)
        .ok_or_else(|| Error::MissingModality {
            gloss: "<segment>".into(),
            modality: modality.to_string(),
        })?;
    let mut scores = Vec::with_capacity(dict.vocab_size());
    for entry in &dict.entries {
        let proto = entry.feature(modality).expect("validated at build");
        let score = match mode {
            LookupMode::Combined => combined_score_with(query, proto, alpha_s, opts)?,
            LookupMode::DtwOnly => -dtw_distance_with(query, proto, opts)?,
        };
        scores.push(score);
    }
    SimilarityDistribution::new(scores, tag)
}
