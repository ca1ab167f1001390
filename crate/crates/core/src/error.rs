//! Error type shared by every spectral computation.

use thiserror::Error;

/// Errors raised by the spectral maps and their inverses.
#[derive(Debug, Clone, Error)]
pub enum SpectralError {
    /// A polynomial expected to have only real roots has a nonreal factor
    /// beyond tolerance, or a repeated root where simple roots are required.
    #[error("polynomial is not real-rooted: {0}")]
    NotRealRooted(String),

    /// A rational function has a multiple or nonreal pole where simple real
    /// poles are required.
    #[error("invalid pole structure: {0}")]
    PoleStructure(String),

    /// An intermediate denominator of a continued fraction vanished at the
    /// evaluation point.
    #[error("continued fraction evaluation hit a pole: {0}")]
    PoleHit(String),

    /// The rational function is not in the admissible class for Stieltjes
    /// extraction (wrong sign pattern, wrong degree structure, or a
    /// degenerate block).
    #[error("not an admissible spectral function: {0}")]
    NotAdmissible(String),

    /// Two peak positions coincide modulo the period.
    #[error("duplicate node position: {0}")]
    DuplicatePosition(String),

    /// The base-point masses contradict the continued-fraction data
    /// recovered from the spectral input.
    #[error("inconsistent base-point mass: {0}")]
    InconsistentBaseMass(String),

    /// The discriminant value at zero does not match cosh(l/2).
    #[error("discriminant normalization violated: {0}")]
    BadNormalization(String),

    /// A critical value of the discriminant lies strictly inside (-1, 1).
    #[error("critical value inside the spectral band: {0}")]
    CriticalValueInsideBand(String),

    /// A divisor point violates the torus equation or leaves its gap.
    #[error("divisor point off the isospectral torus: {0}")]
    DivisorOffTorus(String),

    /// The asymptotic matching produced a negative point mass at the base.
    #[error("negative upsilon at the base point: {0}")]
    NegativeUpsilonA(String),

    /// A norming constant came out nonpositive.
    #[error("nonpositive norming constant: {0}")]
    NonpositiveGamma(String),

    /// A quantity that is guaranteed by the underlying theory failed its
    /// runtime check; this signals a numeric breakdown, not bad input.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    /// A precondition on the arguments was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Exact arithmetic was requested but an intermediate value has no
    /// exact representation (a square root of a non-square rational).
    #[error("value is irrational in exact mode: {0}")]
    IrrationalInExactMode(String),
}

pub type Result<T> = std::result::Result<T, SpectralError>;
