use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("the quiver of the algebra has a directed cycle")]
    CyclicGamma,

    #[error("algebra is not finite dimensional: paths survive at length {max_len}")]
    NotFiniteDimensional { max_len: usize },

    #[error("representation violates relation {relation}: {detail}")]
    RelationViolation { relation: usize, detail: String },

    #[error("action is not compatible with the multiplication: {0}")]
    ActionIncompatible(String),

    #[error("objects live over different algebras")]
    AlgebraMismatch,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a module homomorphism: {0}")]
    NotAHomomorphism(String),
}
