use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Location of the first entry where a distance template disagrees with BFS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub expected: i64,
    pub actual: i64,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("size error: {0}")]
    Size(String),

    #[error("graph list is empty")]
    EmptyList,

    #[error("graph has no edges")]
    NoEdges,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    Convergence { sweeps: usize, off_norm: f64 },

    #[error("quartic has a non-real root (imaginary part {imag:e})")]
    ComplexRoot { imag: f64 },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("alignment error: {0}")]
    Alignment(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("distance template {theorem} does not match at ({}, {}): template {}, BFS {}{}",
        .violation.i, .violation.j, .violation.expected, .violation.actual,
        .hint.as_deref().map(|h| format!(" ({h})")).unwrap_or_default())]
    TemplateMismatch {
        theorem: String,
        violation: Violation,
        hint: Option<String>,
    },

    #[error("no closed form covers this construction: {0}")]
    NoClosedForm(String),

    #[error("family error: {0}")]
    FamilySize(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error at byte {offset}: {message}; expected one of: {}", .expected.join(", "))]
    Parse {
        offset: usize,
        message: String,
        expected: Vec<String>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Size(_)
            | Error::EmptyList
            | Error::NoEdges
            | Error::Disconnected
            | Error::InvalidGraph(_)
            | Error::Precondition(_)
            | Error::Alignment(_)
            | Error::LengthMismatch { .. }
            | Error::FamilySize(_) => 3,
            Error::TemplateMismatch { .. } | Error::NoClosedForm(_) => 4,
            Error::Verification(_) => 5,
            Error::Convergence { .. } | Error::ComplexRoot { .. } => 6,
            Error::Io(_) | Error::Json(_) => 1,
        }
    }
}
