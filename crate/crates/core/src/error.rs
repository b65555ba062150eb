use thiserror::Error;

/// Errors produced by the library. Every variant has a stable short tag
/// (see [`Error::tag`]) that the CLI reports alongside the message.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree sequence must have at least one entry")]
    EmptySequence,
    #[error("degree sum {0} is odd")]
    OddSum(usize),
    #[error("vertex index {index} out of range for n = {n}")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("minus perturbation at ({i}, {j}) would make a degree negative")]
    Underflow { i: usize, j: usize },
    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("instance too large: {what} = {got} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("degree sequence is not graphic")]
    NotGraphic,
    #[error("invalid alternating trail at position {position}: {reason}")]
    InvalidTrail { position: usize, reason: String },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("sets do not partition the vertex set: {0}")]
    NotAPartition(String),
    #[error("neighbourhoods of {p} and {q} differ")]
    NeighborhoodsDiffer { p: usize, q: usize },
    #[error("neighbourhoods of {i} and {j} are equal")]
    NeighborhoodsEqual { i: usize, j: usize },
    #[error(
        "neighbourhoods of {i} and {j} differ only by their mutual edge; \
         the edge itself is a 1-witness trail"
    )]
    MutualEdgeOnly { i: usize, j: usize },
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("({0}, {1}) is already an edge")]
    AlreadyAnEdge(usize, usize),
    #[error("hinge-flip vertices must be distinct, got ({0}, {1}, {2})")]
    DegenerateVertices(usize, usize, usize),
    #[error("case mismatch: {0}")]
    CaseMismatch(String),
    #[error("internal invariant failure: {0}")]
    InternalInvariantFailure(String),
    #[error("bipartite fill infeasible: {0}")]
    Infeasible(String),
    #[error("r must be even and at least 2, got {0}")]
    OddR(usize),
    #[error("no integer x satisfies the overlap condition")]
    EmptyWindow,
    #[error("discriminant {0} is negative")]
    NegativeDiscriminant(i128),
    #[error("sigma {sigma} is not covered by any interval I^x")]
    SigmaOutsideWindow { sigma: usize },
    #[error("parity mismatch: {0}")]
    ParityImpossible(String),
    #[error("switch chain needs at least two edges, got {0}")]
    TooFewEdges(usize),
    #[error("exact total variation needs n <= {limit}, got {n}")]
    TooLargeForExactTv { n: usize, limit: usize },
    #[error("cannot parse {what}: {input}")]
    Parse { what: &'static str, input: String },
}

impl Error {
    /// Short machine-readable tag.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::EmptySequence => "EmptySequence",
            Error::OddSum(_) => "OddSum",
            Error::VertexOutOfRange { .. } => "VertexOutOfRange",
            Error::Underflow { .. } => "Underflow",
            Error::InvalidEdge(..) => "InvalidEdge",
            Error::DuplicateEdge(..) => "DuplicateEdge",
            Error::InvalidRegion(_) => "InvalidRegion",
            Error::TooLarge { .. } => "TooLarge",
            Error::NotGraphic => "NotGraphic",
            Error::InvalidTrail { .. } => "InvalidTrail",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::NotAPartition(_) => "NotAPartition",
            Error::NeighborhoodsDiffer { .. } => "NeighborhoodsDiffer",
            Error::NeighborhoodsEqual { .. } => "NeighborhoodsEqual",
            Error::MutualEdgeOnly { .. } => "MutualEdgeOnly",
            Error::NotAnEdge(..) => "NotAnEdge",
            Error::AlreadyAnEdge(..) => "AlreadyAnEdge",
            Error::DegenerateVertices(..) => "DegenerateVertices",
            Error::CaseMismatch(_) => "CaseMismatch",
            Error::InternalInvariantFailure(_) => "InternalInvariantFailure",
            Error::Infeasible(_) => "Infeasible",
            Error::OddR(_) => "OddR",
            Error::EmptyWindow => "EmptyWindow",
            Error::NegativeDiscriminant(_) => "NegativeDiscriminant",
            Error::SigmaOutsideWindow { .. } => "SigmaOutsideWindow",
            Error::ParityImpossible(_) => "ParityImpossible",
            Error::TooFewEdges(_) => "TooFewEdges",
            Error::TooLargeForExactTv { .. } => "TooLargeForExactTV",
            Error::Parse { .. } => "Parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
