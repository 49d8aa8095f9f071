//! Shared argument groups.

use clap::Args;
use signspot::decoder::DecoderConfig;
use signspot::error::{Error, Result};
use signspot::fusion::FusionStrategy;
use signspot::lm::{LmBackendConfig, LmKind};
use signspot::pipeline::SpotParams;
use signspot::similarity::DtwOptions;

/// Spotting-stage weights and switches.
#[derive(Debug, Args)]
pub struct SpotArgs {
    /// Fusion strategy: i3d, rh, late, mid, ensemble
    #[arg(long, default_value = "late")]
    pub strategy: FusionStrategy,
    /// Sets the DTW/cosine weight for both the I3D and RH kernels
    #[arg(long)]
    pub alpha_s: Option<f64>,
    /// DTW/cosine weight for the I3D kernel
    #[arg(long, default_value_t = 0.3)]
    pub alpha_s_i3d: f64,
    /// DTW/cosine weight for the RH kernel
    #[arg(long, default_value_t = 0.9)]
    pub alpha_s_rh: f64,
    /// Late-fusion weight on the I3D distribution
    #[arg(long, default_value_t = 0.9)]
    pub alpha_late: f64,
    /// Ensemble weight on the intermediate-fusion distribution
    #[arg(long, default_value_t = 0.6)]
    pub alpha_ens: f64,
    /// Min-max rescale ensemble inputs before mixing
    #[arg(long)]
    pub rescale: bool,
    /// Resample hand streams to the I3D frame count when building MID
    #[arg(long)]
    pub resample_mid: bool,
    /// Divide DTW costs by the summed sequence lengths
    #[arg(long)]
    pub dtw_path_normalize: bool,
    /// L2-normalize frames before DTW costs
    #[arg(long)]
    pub dtw_normalize_frames: bool,
}

impl SpotArgs {
    pub fn to_params(&self) -> Result<SpotParams> {
        let params = SpotParams {
            strategy: self.strategy,
            alpha_s_i3d: self.alpha_s.unwrap_or(self.alpha_s_i3d),
            alpha_s_rh: self.alpha_s.unwrap_or(self.alpha_s_rh),
            alpha_late: self.alpha_late,
            alpha_ens: self.alpha_ens,
            rescale: self.rescale,
            resample_mid: self.resample_mid,
            dtw: DtwOptions {
                path_normalize: self.dtw_path_normalize,
                normalize_frames: self.dtw_normalize_frames,
            },
        };
        params.validate()?;
        Ok(params)
    }
}

/// Candidate generation and beam search knobs.
#[derive(Debug, Args)]
pub struct DecoderArgs {
    /// Candidates forwarded to the language model per segment
    #[arg(long, default_value_t = 10)]
    pub top_k: usize,
    /// Hypotheses kept per decoding step
    #[arg(long, default_value_t = 5)]
    pub beam_width: usize,
    /// Weight of the emission probability in the beam objective
    #[arg(long, default_value_t = 1.0)]
    pub alpha_bs: f64,
    /// Softmax temperature for candidate generation
    #[arg(long, default_value_t = 1.0)]
    pub temperature: f64,
    /// Limit LM context to the last N decoded glosses (default: full prefix)
    #[arg(long)]
    pub context_window: Option<usize>,
}

impl DecoderArgs {
    pub fn to_config(&self) -> Result<DecoderConfig> {
        let config = DecoderConfig {
            top_k: self.top_k,
            beam_width: self.beam_width,
            alpha_bs: self.alpha_bs,
            softmax_temperature: self.temperature,
            context_window: self.context_window,
        };
        config.validate()?;
        Ok(config)
    }
}

/// Language-model backend selection.
#[derive(Debug, Args)]
pub struct LmArgs {
    /// Backend: uniform, ngram, remote
    #[arg(long, default_value = "uniform")]
    pub lm: String,
    /// Gloss corpus file for the ngram backend (one sentence per line)
    #[arg(long)]
    pub ngram_corpus: Option<std::path::PathBuf>,
    /// Train the ngram backend on the references carried by the input file
    #[arg(long)]
    pub ngram_from_refs: bool,
    /// N-gram order (1 = unigram, 2 = bigram, ...)
    #[arg(long, default_value_t = 2)]
    pub ngram_order: usize,
    /// Add-alpha smoothing constant
    #[arg(long, default_value_t = 0.1)]
    pub smoothing_alpha: f64,
    /// Logprob endpoint URL for the remote backend
    #[arg(long)]
    pub endpoint: Option<String>,
    /// Model name sent to the remote endpoint
    #[arg(long)]
    pub model: Option<String>,
    /// Per-request timeout in milliseconds
    #[arg(long, default_value_t = 10_000)]
    pub timeout_ms: u64,
    /// Retries after a failed remote request
    #[arg(long, default_value_t = 2)]
    pub max_retries: u32,
    /// File holding a custom prompt template ({CONTEXT}/{CANDIDATES})
    #[arg(long)]
    pub prompt_template: Option<std::path::PathBuf>,
    /// Render glosses verbatim in prompts instead of sentence-casing them
    #[arg(long)]
    pub verbatim_glosses: bool,
}

impl LmArgs {
    pub fn kind(&self) -> Result<LmKind> {
        match self.lm.to_ascii_lowercase().as_str() {
            "uniform" => Ok(LmKind::Uniform),
            "ngram" => Ok(LmKind::Ngram),
            "remote" => Ok(LmKind::Remote),
            other => Err(Error::InvalidConfig(format!(
                "unknown lm backend `{other}`"
            ))),
        }
    }

    pub fn to_config(&self) -> Result<LmBackendConfig> {
        let config = LmBackendConfig {
            kind: self.kind()?,
            ngram_order: self.ngram_order,
            smoothing_alpha: self.smoothing_alpha,
            endpoint_url: self.endpoint.clone().unwrap_or_default(),
            model_name: self.model.clone().unwrap_or_default(),
            timeout_ms: self.timeout_ms,
            max_retries: self.max_retries,
        };
        config.validate()?;
        Ok(config)
    }

    /// Short descriptor echoed into output files (never includes credentials).
    pub fn descriptor(&self) -> String {
        match self.lm.to_ascii_lowercase().as_str() {
            "ngram" => format!(
                "ngram(order={}, alpha={})",
                self.ngram_order, self.smoothing_alpha
            ),
            "remote" => format!(
                "remote({}@{}) [nondeterministic]",
                self.model.as_deref().unwrap_or("?"),
                self.endpoint.as_deref().unwrap_or("?")
            ),
            _ => "uniform".to_string(),
        }
    }
}
