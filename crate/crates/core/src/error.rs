use thiserror::Error;

/// Hard limit on the number of hyperplanes. Flats are tracked as `u64`
/// bitmasks of hyperplane indices.
pub const MAX_HYPERPLANES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed rational `{token}`")]
    MalformedRational { line: usize, token: String },
    #[error("line {line}: malformed integer `{token}`")]
    MalformedInteger { line: usize, token: String },
    #[error("line {line}: expected {expected} coordinates, found {found}")]
    WrongCoordinateCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: zero normal vector does not define a hyperplane")]
    ZeroNormal { line: usize },
    #[error("line {line}: hyperplane duplicates the one on line {first_line}")]
    DuplicateHyperplane { line: usize, first_line: usize },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: i64, n: usize },
    #[error("line {line}: loop at vertex {vertex}")]
    Loop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {{{i}, {j}}}")]
    DuplicateEdge { line: usize, i: usize, j: usize },
    #[error("line {line}: expected two vertices `i j`, found {found} tokens")]
    MalformedEdge { line: usize, found: usize },
    #[error("missing header line")]
    MissingHeader,
    #[error("arrangement has no hyperplanes")]
    EmptyArrangement,
    #[error("{count} hyperplanes exceeds the supported maximum of {MAX_HYPERPLANES}")]
    TooManyHyperplanes { count: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),
    #[error("graph has no edges")]
    EdgelessGraph,
    #[error(
        "graph has {components} connected components; the flag-complex criterion \
         is stated for connected graphs only"
    )]
    Disconnected { components: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
