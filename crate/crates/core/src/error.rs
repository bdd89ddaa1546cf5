use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("coordinate count must be at least 1")]
    NoCoordinates,

    #[error("p^m overflows for p={p}, m={m}")]
    LevelTooLarge { p: u32, m: u32 },

    #[error("binomial ({k} choose {sub}) requires {sub} <= {k}")]
    BinomialRange { k: u64, sub: u64 },

    #[error("multi-index {lower} is not componentwise below {upper}")]
    NotBelow { lower: String, upper: String },

    #[error("multi-index lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("coordinate {index} out of range 1..={n}")]
    CoordinateOutOfRange { index: usize, n: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("chains live over different parameters")]
    ParamsMismatch,

    #[error("empty slot list")]
    EmptySlots,

    #[error("slot {0} is not in the slot-index set")]
    SlotOutOfRange(String),

    #[error("symbol {0} is not canonical")]
    NonCanonical(String),

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("operator is not defined in degree 0")]
    DegreeZero,

    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("parse error: {0}")]
    Parse(String),

    /// The divided-power quotient binom/mbinom did not come out integral.
    #[error("inexact quotient: {numerator} / {denominator}")]
    InexactQuotient {
        numerator: String,
        denominator: String,
    },

    /// A basis claim failed: the generator span meets the span of the basis.
    #[error("coordinates are not unique: {0}")]
    NonUniqueCoordinates(String),

    /// A symbol that should be expressible in the reduced basis was not.
    #[error("symbol {0} has no expansion in the reduced basis")]
    NotExpressible(String),
}

impl Error {
    /// True for errors that indicate the tool itself (or a claim it relies on)
    /// is inconsistent, as opposed to bad input.
    pub fn is_internal_inconsistency(&self) -> bool {
        matches!(
            self,
            Error::InexactQuotient { .. }
                | Error::NonUniqueCoordinates(_)
                | Error::NotExpressible(_)
        )
    }
}
