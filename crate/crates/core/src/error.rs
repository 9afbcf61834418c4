use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid field modulus: {0}")]
    InvalidModulus(String),

    #[error("polynomials live over different fields")]
    FieldMismatch,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("polynomial must have positive degree")]
    ConstantPolynomial,

    #[error("{what}: requested {requested}, limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parameter outside the proven range: {0}")]
    OutOfRange(String),

    #[error("evaluation point {0} is a pole")]
    Pole(String),

    #[error("L-function of the principal character is not a polynomial")]
    PrincipalCharacter,

    #[error("root finder did not converge (residual {residual:e})")]
    NoConvergence { residual: f64 },

    #[error("{0} is not coprime to the modulus")]
    NotCoprime(String),

    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn budget(what: &'static str, requested: impl Into<u128>, limit: impl Into<u128>) -> Self {
        Error::BudgetExceeded {
            what,
            requested: requested.into(),
            limit: limit.into(),
        }
    }

    pub(crate) fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }
}
