use thiserror::Error;

/// Errors produced by graph parsing, structure validation and the generators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: malformed input: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: vertex out of range 1..={n}")]
    VertexOutOfRange { line: usize, n: usize },
    #[error("line {line}: duplicate edge")]
    DuplicateEdge { line: usize },
    #[error("line {line}: self-loop")]
    SelfLoop { line: usize },
    #[error("sequence is not a permutation of 1..={n}")]
    NotAPermutation { n: usize },
    #[error("ordering is not a perfect elimination ordering")]
    NotAPeo,
    #[error("graph is not chordal")]
    NotChordal,
    #[error("graph is not a tree")]
    NotATree,
    #[error("invalid forest: {0}")]
    InvalidForest(String),
    #[error("rotation undefined: {0}")]
    RotationUndefined(String),
    #[error("vertex {vertex} has {count} smaller children")]
    AmbiguousSmallerChild { vertex: usize, count: usize },
    #[error("insertion index {index} out of range 1..={max}")]
    InsertionIndexOutOfRange { index: usize, max: usize },
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
}

pub type Result<T> = std::result::Result<T, Error>;
