use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown node id {0}")]
    UnknownNode(usize),

    #[error("unknown edge ({0}, {1})")]
    UnknownEdge(usize, usize),

    #[error("self-loop at node {0} is not allowed")]
    SelfLoop(usize),

    #[error("parallel edge ({0}, {1}) is not allowed")]
    ParallelEdge(usize, usize),

    #[error("nonpositive weight {value} for {what}")]
    NonpositiveWeight { what: String, value: f64 },

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("graph has no edges")]
    EmptyEdgeSet,

    #[error("nodes {0} and {1} are in different components")]
    Disconnected(usize, usize),

    #[error("invalid face {0:?}: {1}")]
    InvalidFace(Vec<usize>, String),

    #[error("cycle length {0} is not supported (only 3 and 4)")]
    BadCycleLength(usize),

    #[error("curvature field mismatch: {0}")]
    FieldMismatch(String),

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("{0} requires a 2-complex but none was supplied")]
    ComplexRequired(&'static str),

    #[error("not a grid complex: {0}")]
    NotGrid(String),

    #[error("matrix is not symmetric (max deviation {0:.3e})")]
    Asymmetric(f64),

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("matrix has negative entries")]
    NegativeEntries,

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("metric space violation: {0}")]
    MetricViolation(String),

    #[error("parse error at {path}:{line}: {reason}")]
    Parse {
        path: String,
        line: usize,
        reason: String,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures of numerical routines (as opposed to bad input data).
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical(_) | Error::NonFinite)
    }
}
