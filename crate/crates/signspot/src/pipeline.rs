//! Strategy dispatch for the spotting stage.
//!
//! Maps a fusion strategy plus its weights onto the concrete sequence of
//! dictionary lookups and fusions producing one similarity distribution per
//! segment. Variant dictionaries are built once per run and shared.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dictionary::{
    concat_modalities_with, lookup_with, Dictionary, LookupMode, SimilarityDistribution,
};
use crate::error::{Error, Result};
use crate::features::{FeatureSequence, Modality};
use crate::fusion::{ensemble_fuse, late_fuse, min_max_rescale, FusionStrategy};
use crate::similarity::DtwOptions;

/// All weights of the spotting stage. Defaults are the tuned reference
/// settings: `alpha_s` 0.3 for I3D and 0.9 for RH, late weight 0.9, ensemble
/// weight 0.6.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpotParams {
    pub strategy: FusionStrategy,
    pub alpha_s_i3d: f64,
    pub alpha_s_rh: f64,
    pub alpha_late: f64,
    pub alpha_ens: f64,
    /// Min-max rescale both ensemble inputs before mixing.
    pub rescale: bool,
    /// Nearest-index resample hand streams to the I3D frame count when
    /// building MID sequences.
    pub resample_mid: bool,
    #[serde(default)]
    pub dtw: DtwOptions,
}

impl Default for SpotParams {
    fn default() -> Self {
        Self {
            strategy: FusionStrategy::Late,
            alpha_s_i3d: 0.3,
            alpha_s_rh: 0.9,
            alpha_late: 0.9,
            alpha_ens: 0.6,
            rescale: false,
            resample_mid: false,
            dtw: DtwOptions::default(),
        }
    }
}

impl SpotParams {
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("alpha_s_i3d", self.alpha_s_i3d),
            ("alpha_s_rh", self.alpha_s_rh),
            ("alpha_late", self.alpha_late),
            ("alpha_ens", self.alpha_ens),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidConfig(format!(
                    "{name} = {value} is outside [0, 1]"
                )));
            }
        }
        Ok(())
    }
}

/// Single-modality dictionary variants needed by one strategy.
#[derive(Debug, Clone)]
pub struct VariantDicts {
    i3d: Option<Dictionary>,
    rh: Option<Dictionary>,
    mid: Option<Dictionary>,
    vocab_size: usize,
    glosses: Vec<String>,
}

impl VariantDicts {
    /// Builds exactly the variants `strategy` needs from a source dictionary.
    pub fn for_strategy(
        source: &Dictionary,
        strategy: FusionStrategy,
        resample_mid: bool,
    ) -> Result<Self> {
        use FusionStrategy::*;
        let need_i3d = matches!(strategy, I3dOnly | Late | Ensemble);
        let need_rh = matches!(strategy, RhOnly | Late);
        let need_mid = matches!(strategy, Mid | Ensemble);
        let build = |m: Modality| source.restrict_with(m, resample_mid);
        Ok(Self {
            i3d: need_i3d.then(|| build(Modality::I3d)).transpose()?,
            rh: need_rh.then(|| build(Modality::Rh)).transpose()?,
            mid: need_mid.then(|| build(Modality::Mid)).transpose()?,
            vocab_size: source.vocab_size(),
            glosses: source.glosses(),
        })
    }

    pub fn vocab_size(&self) -> usize {
        self.vocab_size
    }

    pub fn glosses(&self) -> &[String] {
        &self.glosses
    }
}

fn segment_with_mid(
    segment: &BTreeMap<Modality, FeatureSequence>,
    resample_mid: bool,
) -> Result<BTreeMap<Modality, FeatureSequence>> {
    if segment.contains_key(&Modality::Mid) {
        return Ok(segment.clone());
    }
    let get = |m: Modality| {
        segment.get(&m).ok_or_else(|| Error::MissingModality {
            gloss: "<segment>".into(),
            modality: m.to_string(),
        })
    };
    let mid = concat_modalities_with(
        get(Modality::I3d)?,
        get(Modality::Rh)?,
        get(Modality::Lh)?,
        resample_mid,
    )?;
    let mut out = segment.clone();
    out.insert(Modality::Mid, mid);
    Ok(out)
}

/// Produces the post-fusion similarity distribution for one segment.
pub fn spot_segment(
    segment: &BTreeMap<Modality, FeatureSequence>,
    variants: &VariantDicts,
    params: &SpotParams,
) -> Result<SimilarityDistribution> {
    params.validate()?;
    let missing = |m: Modality| Error::InvalidConfig(format!("strategy needs the {m} variant"));
    let s_i3d = || -> Result<SimilarityDistribution> {
        let dict = variants
            .i3d
            .as_ref()
            .ok_or_else(|| missing(Modality::I3d))?;
        lookup_with(
            segment,
            dict,
            params.alpha_s_i3d,
            LookupMode::Combined,
            &params.dtw,
        )
    };
    let s_rh = || -> Result<SimilarityDistribution> {
        let dict = variants.rh.as_ref().ok_or_else(|| missing(Modality::Rh))?;
        lookup_with(
            segment,
            dict,
            params.alpha_s_rh,
            LookupMode::Combined,
            &params.dtw,
        )
    };
    let s_mid = || -> Result<SimilarityDistribution> {
        let dict = variants
            .mid
            .as_ref()
            .ok_or_else(|| missing(Modality::Mid))?;
        let with_mid = segment_with_mid(segment, params.resample_mid)?;
        lookup_with(&with_mid, dict, 0.0, LookupMode::DtwOnly, &params.dtw)
    };
    match params.strategy {
        FusionStrategy::I3dOnly => s_i3d(),
        FusionStrategy::RhOnly => s_rh(),
        FusionStrategy::Mid => s_mid(),
        FusionStrategy::Late => late_fuse(&s_i3d()?, &s_rh()?, params.alpha_late),
        FusionStrategy::Ensemble => {
            let (mid, i3d) = if params.rescale {
                (min_max_rescale(&s_mid()?), min_max_rescale(&s_i3d()?))
            } else {
                (s_mid()?, s_i3d()?)
            };
            ensemble_fuse(&mid, &i3d, params.alpha_ens)
        }
    }
}

/// [`spot_segment`] over a slice, preserving order.
pub fn spot_segments(
    segments: &[BTreeMap<Modality, FeatureSequence>],
    variants: &VariantDicts,
    params: &SpotParams,
) -> Result<Vec<SimilarityDistribution>> {
    segments
        .iter()
        .map(|s| spot_segment(s, variants, params))
        .collect()
}

/// A labelled spotting dataset: segments paired with their true dictionary
/// indices, used by accuracy sweeps.
#[derive(Debug, Clone)]
pub struct SpotDataset {
    pub dictionary: Dictionary,
    pub segments: Vec<BTreeMap<Modality, FeatureSequence>>,
    pub targets: Vec<usize>,
}

impl SpotDataset {
    pub fn new(
        dictionary: Dictionary,
        segments: Vec<BTreeMap<Modality, FeatureSequence>>,
        targets: Vec<usize>,
    ) -> Result<Self> {
        if segments.len() != targets.len() {
            return Err(Error::LengthMismatch {
                left: segments.len(),
                right: targets.len(),
            });
        }
        if segments.is_empty() {
            return Err(Error::InvalidConfig("dataset has no segments".into()));
        }
        if let Some(&bad) = targets.iter().find(|&&t| t >= dictionary.vocab_size()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: dictionary.vocab_size(),
            });
        }
        Ok(Self {
            dictionary,
            segments,
            targets,
        })
    }
}
