//! File formats, reports and verification suites behind the `nefdex` binary.

pub mod format;
pub mod report;
pub mod suites;

use nefdex_core::tau::TauConfig;
use nefdex_core::Error;

/// Failures grouped by process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("{0}")]
    Inconclusive(String),
    #[error("theorem violation: {0}")]
    Violation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Inconclusive(_) => 3,
            CliError::Violation(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconclusive { .. } => CliError::Inconclusive(e.to_string()),
            Error::TheoremViolation(_) => CliError::Violation(e.to_string()),
            // the LP layer only fails this way on malformed input
            _ => CliError::Input(e.to_string()),
        }
    }
}

pub const ITER_CAP_VAR: &str = "NEFDEX_ITER_CAP";

/// Settings shared by every command; echoed with each run.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct RunConfig {
    pub command: String,
    pub target: Option<String>,
    pub ring: Option<String>,
    pub format: Option<String>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub iteration_cap: usize,
    pub window_factor: i64,
}

impl RunConfig {
    pub fn new(command: &str) -> Self {
        let tau = TauConfig::default();
        Self {
            command: command.to_string(),
            target: None,
            ring: None,
            format: None,
            seed: None,
            samples: None,
            iteration_cap: tau.iteration_cap,
            window_factor: tau.window_factor,
        }
    }

    /// Applies an iteration cap override such as the value of
    /// [`ITER_CAP_VAR`].
    pub fn with_iteration_cap(mut self, value: Option<&str>) -> Result<Self, CliError> {
        if let Some(v) = value {
            self.iteration_cap = v
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("{ITER_CAP_VAR} must be a non-negative integer, got {v:?}")))?;
        }
        Ok(self)
    }

    pub fn tau_config(&self) -> TauConfig {
        TauConfig {
            iteration_cap: self.iteration_cap,
            window_factor: self.window_factor,
            ..TauConfig::default()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}
