use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid labelling: {0}")]
    InvalidLabelling(String),
    #[error("labelling is not magic")]
    NotMagic,
    #[error("labelling has repeated labels")]
    NotDistinct,
    #[error("inapplicable input: {0}")]
    Inapplicable(&'static str),
    #[error("multiplicity k{index} is negative ({value})")]
    NegativeMultiplicity { index: usize, value: i64 },
    #[error("label arithmetic overflowed")]
    Overflow,
    #[error("edge id {0} is outside 1..=12")]
    EdgeOutOfRange(usize),
    #[error("sequences share symbols")]
    OverlappingSymbols,
    #[error("ordering constraints contain a cycle")]
    CyclicConstraint,
    #[error("unknown cone type `{0}`")]
    UnknownType(String),
    #[error("malformed permutation: {0}")]
    InvalidPermutation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
