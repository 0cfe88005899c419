use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("modulus {0} is composite")]
    CompositeModulus(u64),
    #[error("modulus 2 is not allowed, an odd prime is required")]
    EvenModulus,
    #[error("residue {0} is divisible by the modulus")]
    BadResidue(u64),
    #[error("moment spec has rank {spec} but the table has rank {table}")]
    RankMismatch { spec: u32, table: u32 },
    #[error("requested size {got} exceeds the documented cap {cap}")]
    CapExceeded { got: u64, cap: u64 },
    #[error("symplectic rank {0} must be even")]
    OddRank(u32),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("inputs are too close to a degenerate configuration (min pairwise gap {0:.3e})")]
    NearDegenerate(f64),
    #[error("Satake tuple does not have unit determinant (|prod - 1| = {0:.3e})")]
    NonUnitDeterminant(f64),
    #[error("Satake tuple violates the Ramanujan-type bound at q = {q}")]
    RamanujanViolation { q: u64 },
    #[error("sieve limit {got} exceeds the memory guard {cap}")]
    LimitExceeded { got: u64, cap: u64 },
    #[error("Hurwitz zeta evaluated at its pole s = 1")]
    PoleAtOne,
    #[error("Stieltjes index {0} exceeds the supported range")]
    IndexExceeded(u32),
    #[error("residue-class sum for p = {0} exceeds the supported modulus range")]
    TupleLoopTooLarge(u64),
    #[error("gamma function evaluated at a pole")]
    PoleInput,
    #[error("contour is too short for the requested accuracy (tail estimate {0:.3e})")]
    ContourTooShort(f64),
    #[error("dual-sum truncation is insufficient (tail estimate {0:.3e})")]
    TruncationInsufficient(f64),
    #[error("sieve limit {0} not available for this scale")]
    SieveLimit(u64),
    #[error("shift parameters must be distinct in F_p^*/{{±1}}")]
    DistinctnessViolation,
    #[error("truncation order {got} is below the required minimum {min}")]
    TruncationTooShort { got: u64, min: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
