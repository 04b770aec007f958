use alloc::string::String;
use core::fmt;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside an operation's documented domain.
    InvalidInput(String),
    /// The prime divides the numerator or denominator of a rational base,
    /// so the base has no residue mod p. Censuses skip such primes.
    NotInvertible { p: u64 },
    /// The requested index does not divide p - 1.
    IndexNotDividing { d: u64, p: u64 },
    /// The prime exceeds the baby-step/giant-step table budget (p < 2^40).
    DlogBudgetExceeded { p: u64 },
    /// An indicator evaluated too far from 0 or 1; the identity behind it
    /// is broken, so this is an error rather than a warning.
    ResidualExceeded { residual: f64, budget: f64 },
    /// The tuple of bases is multiplicatively dependent.
    InadmissibleTuple,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::NotInvertible { p } => {
                write!(f, "base is not invertible mod {p}; skip this prime")
            }
            Error::IndexNotDividing { d, p } => {
                write!(f, "index {d} does not divide {p} - 1")
            }
            Error::DlogBudgetExceeded { p } => {
                write!(f, "discrete-log budget exceeded: p = {p} >= 2^40")
            }
            Error::ResidualExceeded { residual, budget } => {
                write!(
                    f,
                    "indicator residual {residual:e} exceeds budget {budget:e}"
                )
            }
            Error::InadmissibleTuple => write!(f, "tuple of bases is not admissible"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
