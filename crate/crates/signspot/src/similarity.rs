//! Frame-level and segment-level similarity kernels.
//!
//! The spotter scores a segment against a dictionary entry with a weighted sum
//! of two complementary signals: a DTW alignment cost over frame sequences
//! (negated, so higher is always more similar) and the cosine similarity of
//! temporally pooled segment embeddings. [`combined_score`] mixes them as
//!
//! ```text
//! score(u, d) = (alpha_s - 1) * dtw(u, d) + alpha_s * cos(pool(u), pool(d))
//! ```
//!
//! with `alpha_s` in `[0, 1]`. All functions here are pure and thread-safe.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{FeatureSequence, PooledVector};

/// Knobs for the DTW kernel. Both default to off, which matches the scoring
/// used everywhere else in the pipeline.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DtwOptions {
    /// Divide the cumulative cost by `T_a + T_b`.
    pub path_normalize: bool,
    /// L2-normalize each frame before computing the local cost.
    pub normalize_frames: bool,
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn unit(frame: &[f64]) -> Vec<f64> {
    let norm = frame.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        frame.to_vec()
    } else {
        frame.iter().map(|v| v / norm).collect()
    }
}

/// Minimum cumulative Euclidean cost over all monotone warping paths from
/// `(0, 0)` to `(T_a-1, T_b-1)` with steps `{(+1,0), (0,+1), (+1,+1)}`.
///
/// Symmetric in its arguments; zero exactly when the sequences are identical.
pub fn dtw_distance(a: &FeatureSequence, b: &FeatureSequence) -> Result<f64> {
    dtw_distance_with(a, b, &DtwOptions::default())
}

pub fn dtw_distance_with(
    a: &FeatureSequence,
    b: &FeatureSequence,
    opts: &DtwOptions,
) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let frames_a: Vec<Vec<f64>>;
    let frames_b: Vec<Vec<f64>>;
    let (rows_a, rows_b): (&[Vec<f64>], &[Vec<f64>]) = if opts.normalize_frames {
        frames_a = a.frames().iter().map(|f| unit(f)).collect();
        frames_b = b.frames().iter().map(|f| unit(f)).collect();
        (&frames_a, &frames_b)
    } else {
        (a.frames(), b.frames())
    };

    let (ta, tb) = (rows_a.len(), rows_b.len());
    // dp row over j = 0..=tb; dp[0][0] = 0, borders unreachable.
    let mut prev = vec![f64::INFINITY; tb + 1];
    let mut curr = vec![f64::INFINITY; tb + 1];
    prev[0] = 0.0;
    for i in 1..=ta {
        curr[0] = f64::INFINITY;
        for j in 1..=tb {
            let cost = euclidean(&rows_a[i - 1], &rows_b[j - 1]);
            let best = prev[j].min(curr[j - 1]).min(prev[j - 1]);
            curr[j] = cost + best;
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    let raw = prev[tb];
    Ok(if opts.path_normalize {
        raw / (ta + tb) as f64
    } else {
        raw
    })
}

/// Coordinate-wise arithmetic mean over frames; dimension preserved.
pub fn mean_pool(a: &FeatureSequence) -> PooledVector {
    let t = a.len() as f64;
    let mut sums = vec![0.0; a.dim()];
    for frame in a.frames() {
        for (s, v) in sums.iter_mut().zip(frame) {
            *s += v;
        }
    }
    for s in &mut sums {
        *s /= t;
    }
    // Finite by construction: means of finite inputs.
    PooledVector::new(sums).expect("mean of finite frames is finite")
}

/// Cosine similarity of two pooled vectors, clamped to `[-1, 1]`.
///
/// A zero-norm input is rejected rather than mapped to zero: it signals a
/// degenerate feature upstream.
pub fn cosine_similarity(u: &PooledVector, v: &PooledVector) -> Result<f64> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    let mut dot = 0.0;
    let mut nu = 0.0;
    let mut nv = 0.0;
    for (x, y) in u.values().iter().zip(v.values()) {
        dot += x * y;
        nu += x * x;
        nv += y * y;
    }
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok((dot / (nu.sqrt() * nv.sqrt())).clamp(-1.0, 1.0))
}

/// Weighted similarity of a segment against a dictionary sequence.
///
/// The `(alpha_s - 1)` factor carries the sign flip that turns the DTW
/// distance into a similarity, so the result is monotone nonincreasing in the
/// DTW cost and nondecreasing in the cosine term. At `alpha_s = 1` the score
/// is pure cosine; at `alpha_s = 0` it is the negated DTW distance.
pub fn combined_score(u: &FeatureSequence, d: &FeatureSequence, alpha_s: f64) -> Result<f64> {
    combined_score_with(u, d, alpha_s, &DtwOptions::default())
}

pub fn combined_score_with(
    u: &FeatureSequence,
    d: &FeatureSequence,
    alpha_s: f64,
    opts: &DtwOptions,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha_s) {
        return Err(Error::ParameterRange {
            name: "alpha_s",
            value: alpha_s,
            range: "[0, 1]",
        });
    }
    let dtw = dtw_distance_with(u, d, opts)?;
    let cos = cosine_similarity(&mean_pool(u), &mean_pool(d))?;
    Ok((alpha_s - 1.0) * dtw + alpha_s * cos)
}
