use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument fell outside the domain of a function.
    #[error("{param} = {value} is outside the admissible range {expected}")]
    Domain {
        param: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// A logarithm or ratio in the formula degenerates at this argument.
    #[error("{param} = {value} is a singular point of the formula")]
    Singular { param: &'static str, value: f64 },

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("non-finite matrix entry")]
    NonFinite,

    /// The state does not have the structure an operation expects.
    #[error("unexpected state structure: {0}")]
    Structure(String),

    /// Bad inputs to an estimator or fit.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(
    param: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    expected: &'static str,
) -> Result<()> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(())
    } else {
        Err(Error::Domain {
            param,
            value,
            expected,
        })
    }
}
