use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("modulus must be an even integer >= 2, got {0}")]
    OddModulus(u32),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),

    #[error("{what} = {value} is outside {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    #[error("entry {value} is not a residue mod {modulus}")]
    EntryOutOfRange { value: u32, modulus: u32 },

    #[error("invalid permutation {0}")]
    InvalidPermutation(String),

    #[error("no assignment for variable {0}")]
    MissingAssignment(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(
    what: &'static str,
    value: impl TryInto<i64>,
    min: i64,
    max: i64,
) -> Error {
    Error::OutOfRange {
        what,
        value: value.try_into().unwrap_or(i64::MAX),
        min,
        max,
    }
}
