use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("negative power {0}; invert the word first")]
    NegativePower(i64),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("homomorphism has no image for generator {0}")]
    MissingImage(usize),

    #[error("homomorphism does not kill relator {0}")]
    InvalidHom(usize),

    #[error("transversal generators do not reach every coset of the image")]
    InsufficientSubset,

    #[error("word is not a transversal representative")]
    NotRepresentative,

    #[error("word does not lie in the kernel")]
    NotInKernel,

    #[error("generator {gen} occurs {count} times in the relator (expected exactly once)")]
    NotEliminable { gen: usize, count: usize },

    #[error("coset table is incomplete")]
    IncompleteTable,

    #[error("alphabet mismatch: word uses generator {gen} but only {size} are available")]
    AlphabetMismatch { gen: usize, size: usize },

    #[error("rank {0} exceeds the matching search bound of 8")]
    RankTooLarge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
