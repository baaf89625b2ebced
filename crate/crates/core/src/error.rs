use thiserror::Error;

use crate::polytope::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polytope is not simple: {}", format_violations(.0))]
    NotSimple(Vec<Violation>),

    #[error("invalid polytope data: {0}")]
    InvalidPolytope(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid s-characteristic function: {0}")]
    InvalidCharacteristic(String),

    #[error("objective does not distinguish the vertices generically: {0}")]
    NonGenericObjective(String),

    #[error("cell construction failed at level {level}: {reason}")]
    Construction { level: usize, reason: String },

    #[error("codimension {codim} is out of range for restriction to a face of an {n}-polytope")]
    CodimOutOfRange { codim: usize, n: usize },

    #[error("an even-dimensional polytope is required, got dimension {0}")]
    OddDimension(usize),

    #[error("oracle: {0}")]
    Oracle(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
