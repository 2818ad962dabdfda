use crate::graph::Edge;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("input contains no edges")]
    EmptyInput,

    #[error("graph has no timestamps")]
    MissingTimestamps,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("edge ({}, {}) is not in the graph", .0.lo(), .0.hi())]
    EdgeNotInGraph(Edge),

    #[error("self-loop on vertex {0}")]
    SelfLoop(u32),

    #[error("malformed stream: {0}")]
    MalformedStream(String),

    #[error("estimator invariant violated: {0}")]
    InvariantViolation(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// True for errors caused by unreadable or malformed input data.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::EmptyInput | Error::MissingTimestamps | Error::Io(_)
        )
    }

    /// True for errors caused by an inconsistent or out-of-range configuration.
    pub fn is_config_error(&self) -> bool {
        matches!(self, Error::Config(_) | Error::InvalidParameter(_))
    }
}
