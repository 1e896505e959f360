use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group has positive rank {rank}; its order is infinite")]
    InfiniteGroup { rank: usize },

    #[error("valuation of zero is undefined")]
    ZeroValuation,

    #[error("{0} is not a prime")]
    NotPrime(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(String),

    #[error("cohomology in degree {degree} is infinite (rank {rank})")]
    InfiniteCohomology { degree: i64, rank: usize },

    #[error("malformed complex: {0}")]
    MalformedComplex(String),

    #[error("not a chain map: {0}")]
    NotChainMap(String),

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("factor over q = {q} vanishes or has a pole at t = q^{exponent}; input violates the Weil bounds")]
    WeilViolation { q: String, exponent: i64 },

    #[error("expression contains a number-ring atom; only finite-characteristic data is supported here")]
    CharZeroAtom,

    #[error("expression mixes base fields: q = {0} and q = {1}")]
    MixedBase(String, String),

    #[error("graded cohomology orders are unavailable for this expression ({0})")]
    GradedUnavailable(String),

    #[error("only the Euler characteristic is known for this expression; full equivariant dimensions are unavailable")]
    EulerOnly,

    #[error("requested precision of {requested} digits not reached (error bound 1e{achieved})")]
    PrecisionUnderflow { requested: u32, achieved: i64 },

    #[error("expected a rational value but got an irrational cyclotomic number: {0}")]
    NotRational(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code for reports and exit statuses.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InfiniteGroup { .. } => "infinite-group",
            Error::ZeroValuation => "zero-valuation",
            Error::NotPrime(_) => "not-prime",
            Error::NotPrimePower(_) => "not-prime-power",
            Error::InfiniteCohomology { .. } => "infinite-cohomology",
            Error::MalformedComplex(_) => "malformed-complex",
            Error::NotChainMap(_) => "not-chain-map",
            Error::Shape(_) => "shape-mismatch",
            Error::WeilViolation { .. } => "weil-violation",
            Error::CharZeroAtom => "char-zero-atom",
            Error::MixedBase(..) => "mixed-base",
            Error::GradedUnavailable(_) => "graded-data-unavailable",
            Error::EulerOnly => "euler-only-data",
            Error::PrecisionUnderflow { .. } => "precision-underflow",
            Error::NotRational(_) => "rationality-failure",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Parse(_) => "parse-error",
            Error::Internal(_) => "internal",
        }
    }
}
