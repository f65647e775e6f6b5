//! Error and validation types shared across the crate.

use std::fmt;

/// A single violated parameter constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Name of the offending field, e.g. `"kappa_c"` or `"system.cells"`.
    pub field: String,
    /// The constraint that failed, e.g. `"kappa_c > 0"`.
    pub constraint: String,
}

impl Violation {
    pub fn new(field: impl Into<String>, constraint: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            constraint: constraint.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.constraint)
    }
}

fn join_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("grid must contain at least one point")]
    EmptyGrid,
    #[error("grid bounds must be finite with lo <= hi")]
    BadGrid,
    #[error("analytic dispersion requires decoupled sectors (j_a = j_b = j_c = 0)")]
    CoupledSectors,
    #[error("linear solve failed: (M - i omega I) is singular")]
    SingularSystem,
    #[error("config {path}: {message}")]
    Config { path: String, message: String },
    #[error("unknown figure id `{0}`")]
    UnknownFigure(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Pure constraint checking for parameter bundles. `violations` never mutates
/// and reports every failed constraint, not just the first.
pub trait Validate {
    fn violations(&self) -> Vec<Violation>;

    fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(v))
        }
    }
}
