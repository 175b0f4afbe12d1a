use thiserror::Error;

use crate::emotion::Emotion;

/// Errors raised anywhere in the pipeline.
///
/// [`Error::exit_code`] maps each variant onto the process exit status used by
/// the `mstn` binary: validation problems exit with 2, numerical failures with 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown emotion name `{name}`{}", location(*.line, *.column))]
    UnknownEmotion {
        name: String,
        line: Option<usize>,
        column: Option<usize>,
    },

    #[error("negative intensity {value} for emotion `{emotion}`")]
    NegativeIntensity { emotion: Emotion, value: f64 },

    #[error("emotion group index {0} is outside 1..=9")]
    InvalidGroup(u8),

    #[error("unknown mental state `{0}`")]
    UnknownState(String),

    #[error("emotion vector is all zero (no stimulus); use idle_transition instead")]
    NoStimulus,

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid episode: {0}")]
    InvalidEpisode(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid topology: {0}")]
    Topology(String),

    #[error("non-finite gradient {value} on weight {target}<-{from}@{delay}")]
    NonFiniteGradient {
        target: usize,
        from: usize,
        delay: u32,
        value: f64,
    },

    #[error("training diverged at epoch {epoch}: loss {loss}")]
    Diverged { epoch: usize, loss: f64 },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("unsupported format version `{found}` (expected `{expected}`)")]
    UnsupportedVersion { found: String, expected: String },

    #[error("episode {index} has no events")]
    EmptyEpisode { index: usize },

    #[error("scenario contains no episodes")]
    NoEpisodes,

    #[error("fixture checksum mismatch: expected {expected}, got {actual}")]
    Checksum { expected: String, actual: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn location(line: Option<usize>, column: Option<usize>) -> String {
    match (line, column) {
        (Some(l), Some(c)) => format!(" at line {l}, column {c}"),
        (Some(l), None) => format!(" at line {l}"),
        _ => String::new(),
    }
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonFiniteGradient { .. } | Error::Diverged { .. } | Error::Consistency(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
