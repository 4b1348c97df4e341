//! Scenario files, canonical reports, and seeded instance generation.

mod generate;
mod report;
mod scenario;

use thiserror::Error;

use crate::model::Issue;

pub use generate::{generate_instance, generate_sim_scenario, GenParams, SimGenParams};
pub use report::{format_real, load_metrics, load_report, mask_elapsed, save_metrics, save_report, to_canonical};
pub use scenario::{load_scenario, save_scenario, ScenarioDocument, ScenarioKind};

/// Only schema version understood by this crate.
pub const SCHEMA_VERSION: i64 = 1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unsupported schema_version {0} (supported: 1)")]
    UnsupportedVersion(i64),
    #[error("unknown kind `{0}`")]
    UnknownKind(String),
    #[error("{}", .0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("\n"))]
    Invalid(Vec<Issue>),
    #[error("{0}")]
    Domain(String),
}

impl ScenarioError {
    /// Located issues, if this is a validation failure.
    pub fn issues(&self) -> &[Issue] {
        match self {
            ScenarioError::Invalid(issues) => issues,
            _ => &[],
        }
    }
}

pub type Result<T, E = ScenarioError> = std::result::Result<T, E>;
