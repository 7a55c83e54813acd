use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("self-loop on node {0}")]
    SelfLoop(usize),

    #[error("parallel edge {{{0}, {1}}}")]
    ParallelEdge(usize, usize),

    #[error("profile has length {profile} but graph has {nodes} nodes")]
    LengthMismatch { profile: usize, nodes: usize },

    #[error("instance has {nodes} nodes, exceeding the exhaustive cap of {cap}")]
    ExceedsCap { nodes: usize, cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("malformed clause {clause}: {message}")]
    MalformedClause { clause: usize, message: String },

    #[error("profile is not a non-trivial equilibrium of the instance")]
    NotAnEquilibrium,

    #[error("assignment does not make exactly one literal true in clause {0}")]
    NotOneInThree(usize),

    #[error("unknown gadget '{0}'")]
    UnknownGadget(String),

    #[error("unknown node name '{0}'")]
    UnknownName(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
