use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero is not allowed here")]
    ZeroInput,

    #[error("{0} is not prime")]
    NotPrime(BigInt),

    /// The cofactor left after trial division could not be certified
    /// prime, so the square-free part of the input is unknown.
    #[error("cannot certify the factorization: cofactor {0} is composite with no factor below the trial-division bound")]
    UncertifiedFactorization(BigInt),

    #[error("malformed rational {0:?}")]
    ParseRational(String),

    #[error("quaternion algebra mismatch")]
    AlgebraMismatch,

    #[error("involution element must be a nonzero pure quaternion")]
    NotPure,

    #[error("element is not invertible")]
    NotInvertible,

    #[error("vectors span a lattice of rank {0}, expected full rank")]
    RankDeficient(usize),

    #[error("not an order: {0}")]
    NotAnOrder(String),

    #[error("singular bilinear form")]
    SingularForm,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("orthogonal basis does not exist: norm ideal is strictly smaller than the scale")]
    NoOrthogonalBasis,

    #[error("work budget of {0} steps exhausted")]
    BudgetExhausted(u64),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
