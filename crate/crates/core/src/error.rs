use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed word at position {position}: {reason}")]
    MalformedWord { position: usize, reason: String },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("cannot substitute a word of length {given} into a word with {params} parameters")]
    SubstitutionArity { given: usize, params: usize },

    #[error("enumeration would produce {count} items, cap is {cap}")]
    BoundTooLarge { count: u128, cap: u128 },

    #[error("{word} is not in the subspace described by the envelope")]
    NotInSubspace { word: String },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("structure on {size} vertices exceeds the brute-force cap of {cap}")]
    SizeCap { size: usize, cap: usize },

    #[error("structure is not triangle-free")]
    NotTriangleFree,

    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),

    #[error("map is not an embedding: {0}")]
    NotAnEmbedding(String),

    #[error("internal check failed: {0}")]
    InternalCheckFailed(String),

    #[error("invalid triple: {0}")]
    InvalidTriple(String),

    #[error("extension conflict: {0}")]
    ExtensionConflict(String),

    #[error("bad tuple: {0}")]
    BadTuple(String),

    #[error("not a chain: {0}")]
    NotAChain(String),

    #[error("unsupported kind for this operation: {0}")]
    KindUnsupported(String),

    #[error("enumeration cap exceeded: about {estimate} candidates, cap is {cap}")]
    CapExceeded { estimate: u128, cap: u128 },

    #[error("search cap exceeded: {explored} nodes explored, cap is {cap}")]
    SearchCapExceeded { explored: u128, cap: u128 },

    #[error("no colour assigned to {0}")]
    MissingColor(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
