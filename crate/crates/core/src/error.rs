use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building or analyzing a finite
/// semigroup. Enumeration caps report `*Exceeded` variants rather than
/// silently truncating.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table entry {value} at row {row}, column {col} is out of range for order {order}")]
    OutOfRangeEntry {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },

    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("invalid labels: {reason}")]
    InvalidLabels { reason: String },

    #[error("size bound exceeded: requested {requested}, bound {bound}")]
    SizeBoundExceeded { requested: usize, bound: usize },

    #[error("operands live on different carrier semigroups")]
    CarrierMismatch,

    #[error("not a homomorphism: f({a}*{b}) != f({a})*f({b})")]
    NotAHomomorphism { a: usize, b: usize },

    #[error("congruence enumeration exceeded the cap of {cap} members")]
    CongruenceCapExceeded { cap: usize },

    #[error("endomorphism enumeration exceeded the cap of {cap} elements")]
    EnumerationCapExceeded { cap: usize },

    #[error("brute-force oracle bound exceeded: needs {required} candidates, bound {bound}")]
    OracleBoundExceeded { required: u128, bound: u128 },

    #[error("map does not respect the congruence at pair ({a},{b})")]
    NotInvariant { a: usize, b: usize },

    #[error("congruence is not fully invariant: endomorphism {endo:?} breaks pair ({a},{b})")]
    NotFullyInvariant { endo: Vec<usize>, a: usize, b: usize },

    #[error("set does not generate the semigroup: element {missing} unreachable")]
    NotGenerating { missing: usize },

    #[error("family members {i} and {j} are refinement-incomparable, not a chain")]
    NotAChain { i: usize, j: usize },

    #[error("family has no equality member and so does not separate points")]
    NoEqualityMember,

    #[error("level {level} out of range for a tower with {levels} levels")]
    LevelOutOfRange { level: usize, levels: usize },

    #[error("connecting map {index} is not surjective")]
    NotSurjective { index: usize },

    #[error("invalid partition: {reason}")]
    InvalidPartition { reason: String },

    #[error("partition is not a congruence: {a} ~ {b} but translates by {s} land in different blocks")]
    NotACongruence { a: usize, b: usize, s: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// True for cap/bound failures, as opposed to domain errors.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(
            self,
            Error::SizeBoundExceeded { .. }
                | Error::CongruenceCapExceeded { .. }
                | Error::EnumerationCapExceeded { .. }
                | Error::OracleBoundExceeded { .. }
        )
    }

    /// True for file-format problems (the input never parsed).
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}
