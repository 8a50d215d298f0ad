use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("table of {requested} entries exceeds the limit of {limit}")]
    TableTooLarge { requested: u128, limit: usize },

    #[error("unsupported arity {0}")]
    UnsupportedArity(usize),

    #[error("codomain size {b} differs from domain size {k}; operation requires b = k")]
    UnsupportedCodomain { k: usize, b: usize },

    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    #[error("arity gap undefined: function has {ess} essential variable(s), at least 2 required")]
    GapUndefined { ess: usize },

    #[error("no essentially at most unary support: quasi-arity is {qa}")]
    NoSuchSupport { qa: usize },

    #[error("oracle infeasible: {needed} tables needed, budget is {budget}")]
    OracleInfeasible { needed: u128, budget: u128 },
}

impl Error {
    /// Domain errors are well-formed requests the mathematics does not cover;
    /// everything else is a malformed request.
    pub fn is_domain_error(&self) -> bool {
        matches!(
            self,
            Error::UnsupportedArity(_)
                | Error::UnsupportedCodomain { .. }
                | Error::UnsupportedDomain(_)
                | Error::GapUndefined { .. }
                | Error::NoSuchSupport { .. }
                | Error::OracleInfeasible { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
