//! Error type shared by all modules of the crate.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong when validating inputs or evaluating one of
/// the formulas. Variants are coarse on purpose: callers either report the
/// message or map the error to an exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A divisor class has the wrong number of coordinates for the lattice.
    DimensionMismatch { expected: usize, got: usize },
    /// The intersection matrix is not square or not symmetric.
    GramNotSymmetric,
    /// The polarization fails the necessary ampleness check `H^2 > 0`.
    NonPositivePolarization { h_squared: i64 },
    /// No builtin surface with this name.
    UnknownSurface(String),
    /// A system type violates `1 <= n` or `0 <= k < n`.
    InvalidSystemType { n: u32, k: u32 },
    /// A sheaf must have positive rank.
    ZeroRank,
    /// An alpha parameter must have degree at most one.
    AlphaDegreeTooHigh { degree: usize },
    /// An alpha parameter must be eventually positive.
    AlphaNotPositive,
    /// A subsystem candidate violates its constraints.
    InvalidCandidate(&'static str),
    /// A denominator in one of the formulas vanished.
    DivisionByZero(&'static str),
    /// A kernel-rank choice outside `1..=k-1`.
    KernelRankOutOfRange { k0: u32, k: u32 },
    /// The operation needs `k >= 1`.
    SectionsRequired,
    /// The strictness case analysis needs `delta > 0`.
    NonPositiveDelta,
    /// The strict-failure test needs `epsilon > 0`.
    NonPositiveEpsilon,
    /// A parameter violates an operation's stated constraints.
    InvalidParams(&'static str),
    /// A wall search window with an empty or inconsistent range.
    InvalidWindow(&'static str),
    /// The operation is only defined on a specific builtin surface.
    WrongSurface(&'static str),
    /// The second Chern class does not match the value forced by the input.
    SecondChernMismatch { expected: i64, got: i64 },
    /// An intersection number left the 64-bit range.
    Overflow,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "divisor class has {got} coordinates, lattice rank is {expected}")
            }
            Error::GramNotSymmetric => write!(f, "intersection matrix must be square and symmetric"),
            Error::NonPositivePolarization { h_squared } => {
                write!(f, "polarization fails H^2 > 0 (H^2 = {h_squared})")
            }
            Error::UnknownSurface(name) => write!(f, "unknown builtin surface `{name}`"),
            Error::InvalidSystemType { n, k } => {
                write!(f, "system type needs 1 <= n and k < n, got n = {n}, k = {k}")
            }
            Error::ZeroRank => write!(f, "sheaf rank must be positive"),
            Error::AlphaDegreeTooHigh { degree } => {
                write!(f, "alpha must have degree < 2, got degree {degree}")
            }
            Error::AlphaNotPositive => write!(f, "alpha must be eventually positive"),
            Error::InvalidCandidate(why) => write!(f, "invalid subsystem candidate: {why}"),
            Error::DivisionByZero(what) => write!(f, "division by zero in {what}"),
            Error::KernelRankOutOfRange { k0, k } => {
                write!(f, "kernel rank k0 = {k0} outside 1..={} for k = {k}", k.saturating_sub(1))
            }
            Error::SectionsRequired => write!(f, "operation requires k >= 1"),
            Error::NonPositiveDelta => write!(f, "delta must be positive"),
            Error::NonPositiveEpsilon => write!(f, "epsilon must be positive"),
            Error::InvalidParams(why) => write!(f, "invalid parameters: {why}"),
            Error::InvalidWindow(why) => write!(f, "invalid wall search window: {why}"),
            Error::WrongSurface(which) => write!(f, "operation only defined on {which}"),
            Error::SecondChernMismatch { expected, got } => {
                write!(f, "second Chern class must be {expected}, got {got}")
            }
            Error::Overflow => write!(f, "intersection number exceeds 64-bit range"),
        }
    }
}

impl core::error::Error for Error {}
