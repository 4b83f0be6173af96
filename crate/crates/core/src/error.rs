//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Division or inversion of a zero field element.
    DivisionByZero,
    /// Modulus given to `FieldSpec::prime` failed the primality check.
    NotPrime(u64),
    /// Requested sampling set does not fit inside the field.
    SetTooLarge { set_size: u64, field_size: u64 },
    /// Factorials up to `required` are not invertible modulo `modulus`.
    CharacteristicTooSmall { modulus: u64, required: u64 },
    /// Operands live in different fields.
    MixedFields,
    /// Vector or point length does not match the expected dimension.
    DimensionMismatch { expected: usize, got: usize },
    /// Interpolation nodes are not pairwise distinct.
    DuplicateNodes,
    /// Field has too few elements for the requested interpolation.
    FieldTooSmall { needed: u64 },
    /// Schwartz-Zippel sampling set of the required size exceeds the field.
    CannotMeetEpsilon { needed: u64, field_size: u64 },
    /// Operation requires a deterministic (hitting-set) engine.
    NondeterministicEngine,
    /// Linear scan failed to locate a nonzero point.
    NotFound,
    /// Dense expansion exceeds the configured size limits.
    TooLarge(String),
    /// Expression or file syntax error, with byte position.
    Parse { pos: usize, message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero field element"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::SetTooLarge {
                set_size,
                field_size,
            } => write!(
                f,
                "sampling set of size {set_size} does not fit in a field of size {field_size}"
            ),
            Error::CharacteristicTooSmall { modulus, required } => write!(
                f,
                "characteristic {modulus} is too small: factorials up to {required}! must be invertible"
            ),
            Error::MixedFields => write!(f, "operands belong to different fields"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::DuplicateNodes => write!(f, "interpolation nodes must be pairwise distinct"),
            Error::FieldTooSmall { needed } => {
                write!(f, "field has fewer than {needed} elements")
            }
            Error::CannotMeetEpsilon { needed, field_size } => write!(
                f,
                "cannot meet error bound: sampling set of size {needed} exceeds field size {field_size}"
            ),
            Error::NondeterministicEngine => {
                write!(f, "operation requires a deterministic PIT engine")
            }
            Error::NotFound => write!(f, "no nonzero point found by the linear scan"),
            Error::TooLarge(what) => write!(f, "dense expansion too large: {what}"),
            Error::Parse { pos, message } => write!(f, "parse error at byte {pos}: {message}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
