//! Per-segment feature sequences and pooled segment embeddings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Feature stream a sequence was extracted from.
///
/// `I3D` is the spatio-temporal stream (1024-d per window), `LH`/`RH` are the
/// per-hand shape streams (2048-d per frame), `MID` is their frame-wise
/// concatenation, and `SYNTH` marks synthetic-pipeline data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Modality {
    #[serde(rename = "I3D")]
    I3d,
    #[serde(rename = "LH")]
    Lh,
    #[serde(rename = "RH")]
    Rh,
    #[serde(rename = "MID")]
    Mid,
    #[serde(rename = "SYNTH")]
    Synth,
}

impl Modality {
    pub fn as_str(&self) -> &'static str {
        match self {
            Modality::I3d => "I3D",
            Modality::Lh => "LH",
            Modality::Rh => "RH",
            Modality::Mid => "MID",
            Modality::Synth => "SYNTH",
        }
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Modality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "I3D" => Ok(Modality::I3d),
            "LH" => Ok(Modality::Lh),
            "RH" => Ok(Modality::Rh),
            "MID" => Ok(Modality::Mid),
            "SYNTH" => Ok(Modality::Synth),
            other => Err(Error::InvalidConfig(format!("unknown modality `{other}`"))),
        }
    }
}

/// A time-ordered matrix of per-frame feature vectors for one modality.
///
/// Construction enforces the type's invariants: at least one frame, a uniform
/// row width, and finite entries throughout.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSequence {
    modality: Modality,
    dim: usize,
    frames: Vec<Vec<f64>>,
}

impl FeatureSequence {
    pub fn new(modality: Modality, frames: Vec<Vec<f64>>) -> Result<Self> {
        let Some(first) = frames.first() else {
            return Err(Error::EmptySequence);
        };
        let dim = first.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch { left: 0, right: 1 });
        }
        for (t, frame) in frames.iter().enumerate() {
            if frame.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: frame.len(),
                    right: dim,
                });
            }
            if frame.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite(format!("frame {t}")));
            }
        }
        Ok(Self {
            modality,
            dim,
            frames,
        })
    }

    pub fn modality(&self) -> Modality {
        self.modality
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of frames (always ≥ 1).
    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn frames(&self) -> &[Vec<f64>] {
        &self.frames
    }

    pub fn frame(&self, t: usize) -> &[f64] {
        &self.frames[t]
    }

    /// Re-tag the sequence without touching its data.
    pub fn with_modality(mut self, modality: Modality) -> Self {
        self.modality = modality;
        self
    }

    /// Nearest-index resampling to `target_len` frames.
    ///
    /// Frame `t` of the output copies input frame `round(t * (T-1) / (L-1))`,
    /// so both endpoints are preserved.
    pub fn resample_nearest(&self, target_len: usize) -> Result<Self> {
        if target_len == 0 {
            return Err(Error::EmptySequence);
        }
        if target_len == self.len() {
            return Ok(self.clone());
        }
        let src = self.len();
        let frames = (0..target_len)
            .map(|t| {
                let pos = if target_len == 1 {
                    0
                } else {
                    ((t as f64) * ((src - 1) as f64) / ((target_len - 1) as f64)).round() as usize
                };
                self.frames[pos.min(src - 1)].clone()
            })
            .collect();
        Ok(Self {
            modality: self.modality,
            dim: self.dim,
            frames,
        })
    }
}

/// A fixed-size segment-level embedding produced by temporal pooling.
#[derive(Debug, Clone, PartialEq)]
pub struct PooledVector {
    values: Vec<f64>,
}

impl PooledVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::DimensionMismatch { left: 0, right: 1 });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("pooled vector".into()));
        }
        Ok(Self { values })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}
