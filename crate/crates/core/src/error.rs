use std::fmt;

use thiserror::Error;

/// Why a line of an edge-list file was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Malformed(String),
    SelfLoop(String),
    DuplicateEdge(String, String),
    BadSign(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Malformed(line) => {
                write!(f, "malformed line {line:?}, expected `<u> <v> <sign>`")
            }
            ParseErrorKind::SelfLoop(node) => write!(f, "self-loop on node {node:?}"),
            ParseErrorKind::DuplicateEdge(u, v) => write!(f, "duplicate edge {u:?} - {v:?}"),
            ParseErrorKind::BadSign(token) => {
                write!(f, "sign token {token:?} is not one of +1, -1, +, -, 1")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    #[error("dimension mismatch: expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("brute force refused: {nodes} nodes exceeds the cap of {cap}; use solve_exact instead")]
    TooLargeForBruteForce { nodes: usize, cap: usize },

    #[error("{0} is undefined for a graph without edges")]
    UndefinedMeasure(&'static str),

    #[error("spectrum refused: {nodes} nodes exceeds the spectral cap of {cap}")]
    SpectralCap { nodes: usize, cap: usize },

    #[error("eigensolver did not reach the residual tolerance (achieved {residual:e})")]
    NonConvergence { residual: f64 },

    #[error("data error: {0}")]
    Data(String),

    #[error("run {run} stopped with bounds {lower}..{upper} before proving optimality")]
    NotExact { run: usize, lower: usize, upper: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
