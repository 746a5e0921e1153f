//! Error types shared by all engine modules.

use std::fmt;

/// Everything that can go wrong in an exact computation.
///
/// Most variants are mathematical obstructions (a non-unit where a unit is
/// required, a seed that does not match the data, ...) rather than bugs;
/// callers are expected to surface them in reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Inversion of zero in the scalar field.
    ZeroDivision,
    /// Series inversion requested on a non-unit: the lowest x-order
    /// coefficient is not invertible in the truncated coefficient ring.
    NotAUnit { detail: String },
    /// A series had support outside what the operation admits
    /// (e.g. a non-negative exponent fed to the antiderivative solver).
    BadSupport { detail: String },
    /// `s` does not divide `m`, so the Galois action on `x_s` cannot be
    /// expressed over the chosen cyclotomic field.
    IncompatibleCyclotomy { s: u32, m: u32 },
    /// Matrix/vector shapes disagree.
    DimensionMismatch { detail: String },
    /// A matrix (or leading datum) that must be invertible is not.
    NotInvertible { detail: String },
    /// A characteristic polynomial does not split into linear factors over
    /// the chosen cyclotomic field; the unresolved factor is rendered.
    DoesNotSplit { factor: String },
    /// An order-by-order recursion ran out of certified window before it
    /// could decide.
    InsufficientPrecision { detail: String },
    /// A Sylvester (or projector) leading operator failed its unit test;
    /// this is the turning-point obstruction.  `order` is the first
    /// x_s-order at which solvability fails.
    TurningPoint { order: i64, detail: String },
    /// The order-0 data of a connection contradicts the supplied seeds.
    SeedMismatch { detail: String },
    /// Two TLJ blocks carry the same character class.
    DuplicateCharacter { detail: String },
    /// The verified characteristic polynomial differs from the product of
    /// the supplied eigenvalue factors.
    CharPolyMismatch { detail: String },
    /// A levelwise decomposition failed to commute with the Artinian
    /// shift action.
    LambdaViolation { detail: String },
    /// Header/parameter violation (CLI-facing).
    ParamError { detail: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDivision => write!(f, "division by zero in the scalar field"),
            Error::NotAUnit { detail } => write!(f, "not a unit: {detail}"),
            Error::BadSupport { detail } => write!(f, "bad support: {detail}"),
            Error::IncompatibleCyclotomy { s, m } => {
                write!(f, "ramification {s} does not divide cyclotomic order {m}")
            }
            Error::DimensionMismatch { detail } => write!(f, "dimension mismatch: {detail}"),
            Error::NotInvertible { detail } => write!(f, "not invertible: {detail}"),
            Error::DoesNotSplit { factor } => {
                write!(f, "characteristic polynomial does not split over Q(zeta_m); unresolved factor: {factor}")
            }
            Error::InsufficientPrecision { detail } => {
                write!(f, "insufficient precision: {detail}")
            }
            Error::TurningPoint { order, detail } => {
                write!(f, "turning point at x-order {order}: {detail}")
            }
            Error::SeedMismatch { detail } => write!(f, "seed mismatch: {detail}"),
            Error::DuplicateCharacter { detail } => write!(f, "duplicate character: {detail}"),
            Error::CharPolyMismatch { detail } => {
                write!(f, "characteristic polynomial mismatch: {detail}")
            }
            Error::LambdaViolation { detail } => {
                write!(f, "Artinian action violation: {detail}")
            }
            Error::ParamError { detail } => write!(f, "parameter error: {detail}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
