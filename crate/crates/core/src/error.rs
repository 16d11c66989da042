use std::path::PathBuf;

use crate::state::Frame;

pub type Result<T> = std::result::Result<T, Error>;

/// One problem found while validating a configuration document.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigDiagnostic {
    pub key: String,
    pub message: String,
}

impl std::fmt::Display for ConfigDiagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.key, self.message)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("driving is singular near t = {t}: magnitude {magnitude:e} exceeds cap {cap:e}")]
    PoleProximity { t: f64, magnitude: f64, cap: f64 },

    #[error("seed function vanishes at t = {t} (|u| = {magnitude:e})")]
    ZeroDivisor { t: f64, magnitude: f64 },

    #[error("amplitude overflow at t = {t}: magnitude {magnitude:e} exceeds cap {cap:e}")]
    Overflow { t: f64, magnitude: f64, cap: f64 },

    #[error("integration aborted after last valid time t = {last_valid_t}: {cause}")]
    Aborted {
        last_valid_t: f64,
        #[source]
        cause: Box<Error>,
    },

    #[error("scenario `{name}` failed: {cause}")]
    Scenario {
        name: String,
        #[source]
        cause: Box<Error>,
    },

    #[error("state is in the {found:?} but {expected:?} was required")]
    FrameMismatch { expected: Frame, found: Frame },

    #[error("index {index} is not an interior point of a trajectory with {len} samples")]
    BoundaryIndex { index: usize, len: usize },

    #[error("analytic derivative requested but the amplitude does not provide one")]
    DerivativeUnavailable,

    #[error("unknown preset `{name}` (valid presets: {})", valid.join(", "))]
    UnknownPreset {
        name: String,
        valid: Vec<&'static str>,
    },

    #[error("initial rule `{rule}` is not valid for k = {k}: {reason}")]
    RegimeMismatch {
        rule: &'static str,
        k: f64,
        reason: &'static str,
    },

    #[error("invalid configuration:\n{}", render_diagnostics(.0))]
    Config(Vec<ConfigDiagnostic>),

    #[error("malformed CSV at line {line}: {message}")]
    Csv { line: usize, message: String },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn render_diagnostics(diags: &[ConfigDiagnostic]) -> String {
    diags
        .iter()
        .map(|d| format!("  - {d}"))
        .collect::<Vec<_>>()
        .join("\n")
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
