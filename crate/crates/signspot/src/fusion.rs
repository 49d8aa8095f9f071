//! Distribution-level fusion of modality scores.
//!
//! Late fusion mixes the I3D and RH distributions with a single weight, and
//! the full ensemble mixes the intermediate-fusion (`MID`) distribution with
//! the I3D one. Both operate on raw pre-softmax scores; normalization happens
//! later, at candidate generation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dictionary::{SimilarityDistribution, SourceTag};
use crate::error::{Error, Result};

/// How a segment's final similarity distribution is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FusionStrategy {
    I3dOnly,
    RhOnly,
    Late,
    Mid,
    Ensemble,
}

impl fmt::Display for FusionStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FusionStrategy::I3dOnly => "i3d",
            FusionStrategy::RhOnly => "rh",
            FusionStrategy::Late => "late",
            FusionStrategy::Mid => "mid",
            FusionStrategy::Ensemble => "ensemble",
        };
        f.write_str(s)
    }
}

impl FromStr for FusionStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "i3d" | "i3d_only" => Ok(FusionStrategy::I3dOnly),
            "rh" | "rh_only" => Ok(FusionStrategy::RhOnly),
            "late" => Ok(FusionStrategy::Late),
            "mid" => Ok(FusionStrategy::Mid),
            "ensemble" => Ok(FusionStrategy::Ensemble),
            other => Err(Error::InvalidConfig(format!(
                "unknown fusion strategy `{other}`"
            ))),
        }
    }
}

/// Fusion weights plus the strategy selecting how they are applied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FusionConfig {
    pub alpha_late: f64,
    pub alpha_ens: f64,
    pub strategy: FusionStrategy,
    /// Min-max rescale both inputs of the ensemble before mixing.
    pub rescale: bool,
}

impl Default for FusionConfig {
    fn default() -> Self {
        Self {
            alpha_late: 0.9,
            alpha_ens: 0.6,
            strategy: FusionStrategy::Late,
            rescale: false,
        }
    }
}

impl FusionConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("alpha_late", self.alpha_late),
            ("alpha_ens", self.alpha_ens),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::ParameterRange {
                    name: if name == "alpha_late" {
                        "alpha_late"
                    } else {
                        "alpha_ens"
                    },
                    value,
                    range: "[0, 1]",
                });
            }
        }
        Ok(())
    }
}

fn weighted_sum(
    a: &SimilarityDistribution,
    b: &SimilarityDistribution,
    alpha: f64,
    name: &'static str,
    tag: SourceTag,
) -> Result<SimilarityDistribution> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::ParameterRange {
            name,
            value: alpha,
            range: "[0, 1]",
        });
    }
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let scores = a
        .scores()
        .iter()
        .zip(b.scores())
        .map(|(x, y)| alpha * x + (1.0 - alpha) * y)
        .collect();
    SimilarityDistribution::new(scores, tag)
}

/// `alpha_late * S_i3d + (1 - alpha_late) * S_rh`, elementwise.
pub fn late_fuse(
    s_i3d: &SimilarityDistribution,
    s_rh: &SimilarityDistribution,
    alpha_late: f64,
) -> Result<SimilarityDistribution> {
    weighted_sum(s_i3d, s_rh, alpha_late, "alpha_late", SourceTag::Late)
}

/// `alpha_ens * S_mid + (1 - alpha_ens) * S_i3d`, elementwise.
pub fn ensemble_fuse(
    s_mid: &SimilarityDistribution,
    s_i3d: &SimilarityDistribution,
    alpha_ens: f64,
) -> Result<SimilarityDistribution> {
    weighted_sum(s_mid, s_i3d, alpha_ens, "alpha_ens", SourceTag::Ensemble)
}

/// Maps scores linearly onto `[0, 1]`. A constant distribution maps to all
/// zeros. Available behind [`FusionConfig::rescale`] for mixing distributions
/// with very different raw ranges.
pub fn min_max_rescale(dist: &SimilarityDistribution) -> SimilarityDistribution {
    let min = dist.scores().iter().cloned().fold(f64::INFINITY, f64::min);
    let max = dist
        .scores()
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let span = max - min;
    let scores: Vec<f64> = if span == 0.0 {
        vec![0.0; dist.len()]
    } else {
        dist.scores().iter().map(|s| (s - min) / span).collect()
    };
    SimilarityDistribution::new(scores, dist.source()).expect("finite rescale")
}
