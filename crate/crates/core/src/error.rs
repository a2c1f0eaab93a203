use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: expected {expected}, found {found}")]
    Dimension {
        op: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("matrix is singular")]
    Singular,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("substitution table is not proper: difference vectors are linearly dependent")]
    ImproperTable,
    #[error("invalid masking recipe: {0}")]
    InvalidRecipe(&'static str),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("parameter sets of the inputs do not match")]
    ParamsMismatch,
    #[error("ciphertext rejected: re-encryption does not match")]
    Reject,
    #[error("key was built from explicit parts and has no seed to serialize")]
    NotSeedDerived,
    #[error("search space of 2^{exponent} exceeds the cap of 2^{cap}")]
    CapExceeded { exponent: usize, cap: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Decode(#[from] DecodeError),
}

/// Failures while reading the binary formats. Every variant is distinct so
/// callers can tell corruption from version skew.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("bad magic, expected \"LINE\"")]
    BadMagic,
    #[error("unsupported format version {0}")]
    Version(u8),
    #[error("wrong object kind: expected {expected}, found {found}")]
    Kind { expected: u8, found: u8 },
    #[error("truncated input: need {needed} bytes, have {available}")]
    Truncated { needed: usize, available: usize },
    #[error("{0} trailing bytes after object")]
    Trailing(usize),
    #[error("header parameters are invalid: {0}")]
    Params(String),
    #[error("header parameters do not match the expected parameter set")]
    ParamsMismatch,
    #[error("malformed payload: {0}")]
    Payload(&'static str),
}
