use num_bigint::BigUint;
use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("word {word} is not allowed in the subshift")]
    NotAllowed { word: String },

    #[error("subshift has no gluing constant")]
    MissingGluingConstant,

    #[error("base stream is constant or could not be certified non-constant within {cap} symbols")]
    ConstantBase { cap: u64 },

    #[error("base stream uses symbol {symbol}, outside the alphabet {{{low}, {high}}}")]
    BaseOutsideAlphabet { symbol: u64, low: u64, high: u64 },

    #[error("safe symbol K = 0 overlaps the base alphabet; dense family needs K >= 1")]
    DegenerateSafeSymbol,

    #[error("symbol arithmetic overflowed u64")]
    SymbolOverflow,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid seed: {0}")]
    InvalidSeed(String),

    #[error("streams agree on the first {cap} symbols; no disagreement found")]
    NoDisagreement { cap: u64 },

    #[error("schedule variant mismatch: expected {expected}, found {found}")]
    VariantMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("points come from different constructions: {0}")]
    ConstructionMismatch(String),

    #[error(
        "checkpoint j = {j} needs {needed} symbol reads, budget is {budget} (largest feasible j: {largest_feasible:?})"
    )]
    BudgetExceeded {
        j: usize,
        needed: BigUint,
        budget: u64,
        largest_feasible: Option<usize>,
    },

    #[error("zero denominator")]
    ZeroLength,

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
