use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside the domain: requires {bound}")]
    Domain {
        name: &'static str,
        value: f64,
        bound: &'static str,
    },

    #[error("non-finite {field} at index {index}")]
    NonFinite { field: &'static str, index: usize },

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("need at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },

    #[error("degenerate regression: {0}")]
    Degenerate(&'static str),

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("invalid sample: {0}")]
    InvalidSample(String),

    #[error("samples missing {field}: {}", sources.join(", "))]
    MissingReynolds {
        field: &'static str,
        sources: Vec<String>,
    },

    #[error("{0} entries do not match")]
    LengthMismatch(&'static str),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: impl Into<f64>, bound: &'static str) -> Self {
        Error::Domain {
            name,
            value: value.into(),
            bound,
        }
    }
}
