use std::fmt;

use thiserror::Error;

/// Location of an offending value inside a problem file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    Cell { plan: String, attribute: String, row: usize, col: usize },
    Attribute { id: String, index: usize },
    Plan { name: String, index: usize },
    Field(String),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Cell { plan, attribute, row, col } => write!(
                f,
                "cell (plan {plan:?}, attribute {attribute:?}) at row {}, column {}",
                row + 1,
                col + 1
            ),
            Location::Attribute { id, index } => write!(f, "attribute {id:?} (column {})", index + 1),
            Location::Plan { name, index } => write!(f, "plan {name:?} (row {})", index + 1),
            Location::Field(name) => write!(f, "field `{name}`"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown linguistic term {label:?}; valid terms: {valid}")]
    InvalidTerm { label: String, valid: String },

    #[error("linguistic index {0} is outside the scale -5..=5")]
    InvalidIndex(i32),

    #[error("invalid value: {0}")]
    InvalidValue(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate problem: {0}")]
    Degenerate(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("{location}: {message}")]
    Validation { location: Location, message: String },

    #[error("malformed problem file: {0}")]
    Schema(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn at(location: Location, message: impl Into<String>) -> Self {
        Error::Validation { location, message: message.into() }
    }

    pub(crate) fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage { stage, source: Box::new(self) }
    }

    /// True when the root cause is a degenerate problem rather than bad input.
    pub fn is_degenerate(&self) -> bool {
        match self {
            Error::Degenerate(_) => true,
            Error::Stage { source, .. } => source.is_degenerate(),
            _ => false,
        }
    }

    /// True for I/O failures (unreadable input, unwritable destination).
    pub fn is_io(&self) -> bool {
        match self {
            Error::Io(_) => true,
            Error::Stage { source, .. } => source.is_io(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
