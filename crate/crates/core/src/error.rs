use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A coordinate computation overflowed or produced NaN.
    #[error("range error: {0}")]
    Range(String),

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A surface, worldline or branch does not intersect where required.
    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("state error: {0}")]
    State(String),

    #[error("impossible outcome: {0}")]
    ImpossibleOutcome(String),

    #[error("timeline error: {0}")]
    Timeline(String),

    /// No source event satisfies the requested proper times.
    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("invalid value for `{key}`: {message}")]
    Semantic { key: String, message: String },

    /// Wraps an error raised while executing a particular trial.
    #[error("trial {trial}: {source}")]
    Trial {
        trial: u64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn semantic(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Semantic {
            key: key.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by configuration input rather than geometry.
    pub fn is_config_error(&self) -> bool {
        match self {
            Error::Syntax { .. } | Error::Semantic { .. } => true,
            Error::Trial { source, .. } => source.is_config_error(),
            _ => false,
        }
    }

    /// True for errors caused by an unsolvable spacetime arrangement.
    pub fn is_geometry_error(&self) -> bool {
        match self {
            Error::Geometry(_) | Error::Infeasible(_) | Error::Range(_) => true,
            Error::Trial { source, .. } => source.is_geometry_error(),
            _ => false,
        }
    }
}
