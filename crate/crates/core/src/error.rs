use thiserror::Error;

/// Violations found while validating a complex description.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("duplicate {kind} identifier `{id}`")]
    DuplicateId { kind: &'static str, id: String },
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    DanglingVertex { edge: String, vertex: String },
    #[error("disc `{disc}` references unknown edge `{edge}`")]
    DanglingEdge { disc: String, edge: String },
    #[error("disc `{disc}` has an empty boundary word")]
    EmptyBoundary { disc: String },
    #[error("disc `{disc}`: letter {index} has sign {sign}, expected +1 or -1")]
    BadSign { disc: String, index: usize, sign: i64 },
    #[error("disc `{disc}`: boundary word is not closed between letters {index} and {next}")]
    NotClosed { disc: String, index: usize, next: usize },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("complex is empty or disconnected")]
    NotConnected,
}

/// Violations found while checking a cellular map.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("map tables have the wrong size for its source complex ({0})")]
    Shape(&'static str),
    #[error("{kind} `{id}` is sent to a cell that does not exist in the target")]
    OutOfRange { kind: &'static str, id: String },
    #[error("edge `{edge}` does not respect endpoints under the vertex map")]
    EndpointMismatch { edge: String },
    #[error("disc `{disc}`: boundary word does not match its image at letter {index}")]
    BoundaryMismatch { disc: String, index: usize },
    #[error("disc `{disc}` has length {source_len} but its image has length {target_len}")]
    LengthMismatch { disc: String, source_len: usize, target_len: usize },
    #[error("maps cannot be composed: target of the first is not the source of the second")]
    DomainMismatch,
    #[error("map refers to unknown {kind} `{id}`")]
    UnknownId { kind: &'static str, id: String },
}

/// Errors raised by embedding validation and the thickening construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("complex does not satisfy the construction preconditions: {0}")]
    Precondition(String),
    #[error("edge `{edge}`: blade list is incomplete or duplicated ({detail})")]
    Blades { edge: String, detail: String },
    #[error("disc `{disc}`: co-orientation contradiction between occurrences {first} and {second}")]
    Coorientation { disc: String, first: usize, second: usize },
    #[error("vertex `{0}` has a disconnected link")]
    DisconnectedLink(String),
    #[error("vertex `{vertex}` link is not spherical: nodes - arcs + faces = {euler}")]
    NonSphericalLink { vertex: String, euler: i64 },
    #[error("embedding refers to unknown cell `{0}`")]
    UnknownId(String),
    #[error("restriction requires a plain inclusion map: {0}")]
    NotInclusion(String),
    #[error("boundary construction invariant violated: {0}")]
    Invariant(String),
    #[error("boundary sphere does not immerse: link of `{0}` is folded")]
    NotImmersion(String),
    #[error("complex is not simply connected: {0}")]
    NotSimplyConnected(String),
}

/// Problems with a cover assignment.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("assignment has {found} permutations but the complex has {expected} edges")]
    Shape { expected: usize, found: usize },
    #[error("edge `{0}` is not assigned a permutation of the sheet set")]
    NotPermutation(String),
    #[error("relator of disc `{0}` does not act trivially on sheets")]
    Relator(String),
    #[error("sheet action is not transitive")]
    NotTransitive,
    #[error("degree must be at least 1")]
    ZeroDegree,
}
