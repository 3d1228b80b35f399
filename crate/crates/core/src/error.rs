use core::fmt;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Bessel argument below zero.
    NegativeArgument(f64),
    /// Bessel order outside the supported `|n| <= 64`.
    OrderOutOfRange(i32),
    /// Series did not reach its tail tolerance within `max_terms`.
    SeriesNotConverged {
        order: i32,
        x: f64,
        terms: usize,
    },
    InvalidConfig(&'static str),
    InvalidQuantumNumbers(&'static str),
    /// `E = m`: only possible with `κ = k_z = 0`.
    DegenerateKinematics,
    /// `λ = 0` in the free-λ spinor.
    ZeroLambda,
    QuadratureNotConverged {
        a: f64,
        b: f64,
        subdivisions: usize,
    },
    NonPositiveIntegral(f64),
    /// Zero denominator in the Frobenius recurrence at index `k`.
    SingularDenominator {
        k: usize,
    },
    /// Series evaluated beyond its certified `κr`.
    SeriesRange {
        kr: f64,
        tail: f64,
    },
    /// The canonical `C0 = 1/(2^{n-1} Γ(n))` has a pole at this `n`.
    CanonicalC0Pole(i32),
    GridTooCoarse {
        count: usize,
    },
    AxisIntrusion {
        rho: f64,
        min: f64,
    },
    TooFewLevels(usize),
    /// Operator output does not keep the mode structure of the input.
    ModeMismatch,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NegativeArgument(x) => write!(f, "bessel argument must be >= 0, got {x}"),
            Error::OrderOutOfRange(n) => write!(f, "bessel order {n} outside supported range |n| <= 64"),
            Error::SeriesNotConverged { order, x, terms } => {
                write!(f, "series for J_{order}({x}) not converged after {terms} terms")
            }
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::InvalidQuantumNumbers(msg) => write!(f, "invalid quantum numbers: {msg}"),
            Error::DegenerateKinematics => write!(f, "degenerate kinematics: E = m"),
            Error::ZeroLambda => write!(f, "lambda must be nonzero"),
            Error::QuadratureNotConverged { a, b, subdivisions } => {
                write!(f, "quadrature on [{a}, {b}] not converged after {subdivisions} subdivisions")
            }
            Error::NonPositiveIntegral(v) => write!(f, "radial integral must be positive, got {v}"),
            Error::SingularDenominator { k } => write!(f, "singular recurrence denominator at k = {k}"),
            Error::SeriesRange { kr, tail } => {
                write!(f, "kappa*r = {kr} outside the certified range of the series (tail ratio {tail:e})")
            }
            Error::CanonicalC0Pole(n) => write!(f, "canonical C0 = 1/(2^(n-1) Gamma(n)) has a pole at n = {n}"),
            Error::GridTooCoarse { count } => write!(f, "radial grid needs at least 32 nodes, got {count}"),
            Error::AxisIntrusion { rho, min } => {
                write!(f, "stencil at rho = {rho} comes closer than {min} to the axis")
            }
            Error::TooFewLevels(l) => write!(f, "need at least 2 grid levels, got {l}"),
            Error::ModeMismatch => write!(f, "operator output does not keep the azimuthal mode structure"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
