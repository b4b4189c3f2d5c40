use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// An argument outside the domain of the operation (zero where nonzero is
    /// required, inverse of zero, `u = 0`, ...).
    Domain(&'static str),
    /// The discriminant vanishes.
    SingularCurve,
    /// A coordinate change produced non-integral coefficients.
    NonIntegralModel,
    /// The point does not satisfy the curve equation.
    NotOnCurve,
    /// Tate's algorithm found the equation non-minimal at `p`.
    NotMinimal { p: BigInt },
    /// The operation needs bad reduction at `p`.
    GoodReduction { p: BigInt },
    /// A documented precondition does not hold.
    Precondition(String),
    /// A result would not fit the representation used for it.
    Overflow(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::SingularCurve => f.write_str("singular curve: discriminant is zero"),
            Error::NonIntegralModel => f.write_str("coordinate change gives a non-integral model"),
            Error::NotOnCurve => f.write_str("point is not on the curve"),
            Error::NotMinimal { p } => write!(f, "model is not minimal at p = {p}"),
            Error::GoodReduction { p } => write!(f, "curve has good reduction at p = {p}"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Overflow(what) => write!(f, "value too large: {what}"),
        }
    }
}
impl core::error::Error for Error {}
