use thiserror::Error;

/// Errors raised while building or reading instances and models.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    EndpointOutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {0} has negative weight")]
    NegativeWeight(usize),
    #[error("{what} has length {got}, expected {expected}")]
    LengthMismatch { what: &'static str, got: usize, expected: usize },
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
}

/// Errors raised by tree-model construction and expansion.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("host tree is empty")]
    EmptyHost,
    #[error("host node {0} is out of range")]
    NodeOutOfRange(usize),
    #[error("host tree has {0} roots, expected exactly one")]
    RootCount(usize),
    #[error("host parent links contain a cycle through node {0}")]
    ParentCycle(usize),
    #[error("subtree of vertex {0} is empty")]
    EmptySubtree(usize),
    #[error("subtree of vertex {0} is not connected in the host tree")]
    DisconnectedSubtree(usize),
    #[error("model has {got} subtrees but the instance has {expected} vertices")]
    VertexCount { got: usize, expected: usize },
    #[error("trivial model: host tree has {0} node(s) and no non-leaf node")]
    Trivial(usize),
    #[error("model is not a rooted path model: subtree of vertex {0} has {1} leaves")]
    NotRootedPath(usize, usize),
    #[error("invalid expanded model: {0}")]
    NotExpanded(String),
}

/// Errors raised by the solvers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("memory budget exceeded: {entries} table entries at leafage {leafage}")]
    Resource { leafage: usize, entries: usize },
    #[error("oracle timeout after {0} search nodes")]
    OracleTimeout(u64),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("graph is not chordal")]
    NotChordal,
    #[error("model does not realize the graph: {0}")]
    ModelMismatch(String),
}

/// Errors raised by the text formats.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing {0} header")]
    MissingHeader(&'static str),
    #[error("{0}")]
    Count(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Errors raised by the instance generators and certificate builders.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("colour classes must all have the same size")]
    NonUniformClasses,
    #[error("{0} is not an edge of the base graph")]
    NotAClique(String),
    #[error("expected one vertex from each of the {expected} classes")]
    NotMulticolored { expected: usize },
    #[error("base vertex {0} is out of range")]
    VertexOutOfRange(usize),
}
