use thiserror::Error;

/// Errors raised by graph ingestion, validation, sampling and counting.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("MalformedLine: line {line}: {text:?}")]
    MalformedLine { line: usize, text: String },

    #[error("SelfLoop: line {line}: vertex {vertex}")]
    SelfLoop { line: usize, vertex: u64 },

    #[error("DuplicateEdge: line {line}: edge {u} {v}")]
    DuplicateEdge { line: usize, u: u64, v: u64 },

    #[error("EmptyGraph: no edges")]
    EmptyGraph,

    #[error("Disconnected: graph has {components} connected components")]
    Disconnected { components: usize },

    #[error("TooFewEdges: m = {m} < n = {n}, the bicircular matroid has no basis")]
    TooFewEdges { n: usize, m: usize },

    #[error("NotACycle: {0}")]
    NotACycle(String),

    #[error("TooLarge: {what} = {size} exceeds the enumeration limit {limit}")]
    TooLarge { what: &'static str, size: f64, limit: f64 },

    #[error("EmptySupport: no flawless arrow configuration")]
    EmptySupport,

    #[error("ZeroRatio: no sample avoided edge {edge} at deletion step {step}")]
    ZeroRatio { step: usize, edge: usize },

    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
