//! Crate-wide error type.

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse error class, used by the CLI to pick a process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Bad inputs, violated invariants, malformed files.
    Validation,
    /// Remote language-model endpoint failures.
    Transport,
    /// Filesystem and OS-level I/O.
    Io,
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("feature sequence must contain at least one frame")]
    EmptySequence,

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("cannot compare a zero-norm vector")]
    ZeroNorm,

    #[error("{name} = {value} is outside {range}")]
    ParameterRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("duplicate gloss `{0}`")]
    DuplicateGloss(String),

    #[error("entry `{gloss}` is missing modality {modality}")]
    MissingModality { gloss: String, modality: String },

    #[error("frame count mismatch in `{context}`: {left} vs {right}")]
    FrameCountMismatch {
        context: String,
        left: usize,
        right: usize,
    },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("candidate list must be nonempty and free of duplicates")]
    InvalidCandidates,

    #[error("invalid prompt template: {0}")]
    Template(String),

    #[error("{0}")]
    InvalidConfig(String),

    #[error("word `{0}` is out of vocabulary")]
    OutOfVocabulary(String),

    #[error("vocabulary target size {requested} exceeds the {available} words shared by the frequency list and sign lexicon")]
    VocabTargetTooLarge { requested: usize, available: usize },

    #[error("transport failure after {attempts} attempt(s) to {endpoint}: {reason}")]
    Transport {
        endpoint: String,
        attempts: u32,
        reason: String,
    },

    #[error("{path}:{line}: {message}")]
    ParseLine {
        path: String,
        line: usize,
        message: String,
    },

    #[error("unsupported format tag `{found}` (expected `{expected}`)")]
    UnsupportedFormat { found: String, expected: String },

    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Transport { .. } => ErrorCategory::Transport,
            Error::Io(_) => ErrorCategory::Io,
            _ => ErrorCategory::Validation,
        }
    }
}
