//! Crate-wide error type.
//!
//! Every validation failure names the violated constraint and carries a
//! stable machine-readable code, so the CLI can emit structured error
//! objects and callers can match on the failure class.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("type 0 curves have no fixed circles, got {circles}")]
    CurveTypeZeroCircles { circles: u32 },

    #[error("type I curve of genus {genus} requires 1 <= circles <= {max}, got {circles}")]
    CurveCirclesRange { genus: u32, circles: u32, max: u32 },

    #[error("type I curve of genus {genus} requires circles == genus + 1 (mod 2), got {circles}")]
    CurveCirclesParity { genus: u32, circles: u32 },

    #[error("type II curve of genus {genus} requires 1 <= circles <= genus, got {circles}")]
    CurveTypeTwoCirclesRange { genus: u32, circles: u32 },

    #[error("w1 pattern has {pattern_len} bits but the curve has {circles} fixed circles")]
    BitPatternLength { pattern_len: usize, circles: u32 },

    #[error("degree {degree} and w1 weight {weight} must have equal parity")]
    DegreeWeightParity { degree: i64, weight: u32 },

    #[error("a curve without real points only carries even-degree Real bundles, got degree {degree}")]
    NoRealPointsOddDegree { degree: i64 },

    #[error("quaternionic bundle needs degree == rank*(genus-1) (mod 2): rank {rank}, degree {degree}, genus {genus}")]
    QuaternionicParity { rank: u32, degree: i64, genus: u32 },

    #[error("odd-rank quaternionic bundles exist only over curves without real points")]
    QuaternionicOddRankRealPoints,

    #[error("{operation} requires a curve with real points (at least one fixed circle)")]
    RealPointsRequired { operation: &'static str },

    #[error("{operation} is a rank-two computation, got rank {rank}")]
    RankNotTwo { operation: &'static str, rank: u32 },

    #[error("characteristic 2 unsupported: results hold for characteristic 0 or odd prime fields")]
    CharacteristicTwo,

    #[error("characteristic must be 0 or an odd prime, got {0}")]
    CharacteristicNotPrime(u32),

    #[error("{operation} requires odd degree, got {degree}")]
    OddDegreeRequired { operation: &'static str, degree: i64 },

    #[error("{operation} requires even degree, got {degree}")]
    EvenDegreeRequired { operation: &'static str, degree: i64 },

    #[error("{operation} requires genus >= {min}, got {genus}")]
    GenusTooSmall { operation: &'static str, genus: u32, min: u32 },

    #[error("no stratum contribution for an indeterminate orientability verdict")]
    IndeterminateContribution,

    #[error("cyclotomic divisor index must be positive")]
    ZeroCyclotomicIndex,

    #[error("series truncation {requested} exceeds available data (degree {available})")]
    TruncationBeyondData { requested: usize, available: usize },

    #[error("unsupported relation: {0}")]
    UnsupportedRelation(String),

    #[error("inconsistent circle kinds: {0}")]
    InconsistentCircleKinds(String),

    #[error("differential image of {label} is not homogeneous of degree {expected}")]
    NonHomogeneousDifferential { label: String, expected: u32 },

    #[error("unknown generator label: {0}")]
    UnknownGenerator(String),

    #[error("duplicate generator label: {0}")]
    DuplicateGenerator(String),

    #[error("exterior generators have odd degree, polynomial and divided-power generators even degree: {label} (degree {degree})")]
    GeneratorDegreeParity { label: String, degree: u32 },

    #[error("generator degrees must be positive: {label}")]
    GeneratorDegreeZero { label: String },

    #[error("exterior exponent exceeds 1 for {label}")]
    ExteriorExponent { label: String },

    #[error("atlas genus range must stay within 1..=12, got {genus}")]
    GenusGuardrail { genus: u32 },

    #[error("invalid w1 pattern: expected a string of '0' and '1' characters")]
    BadBitPattern,

    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    /// Stable code for machine-readable error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::CurveTypeZeroCircles { .. } => "curve/type0-circles",
            Error::CurveCirclesRange { .. } => "curve/circles-range",
            Error::CurveCirclesParity { .. } => "curve/circles-parity",
            Error::CurveTypeTwoCirclesRange { .. } => "curve/circles-range",
            Error::BitPatternLength { .. } => "bundle/w1-length",
            Error::DegreeWeightParity { .. } => "bundle/degree-parity",
            Error::NoRealPointsOddDegree { .. } => "bundle/no-real-points",
            Error::QuaternionicParity { .. } => "quaternionic/parity",
            Error::QuaternionicOddRankRealPoints => "quaternionic/odd-rank",
            Error::RealPointsRequired { .. } => "real-points-required",
            Error::RankNotTwo { .. } => "rank-not-two",
            Error::CharacteristicTwo => "char/two",
            Error::CharacteristicNotPrime(_) => "char/not-prime",
            Error::OddDegreeRequired { .. } => "degree/odd-required",
            Error::EvenDegreeRequired { .. } => "degree/even-required",
            Error::GenusTooSmall { .. } => "genus/too-small",
            Error::IndeterminateContribution => "contribution/indeterminate",
            Error::ZeroCyclotomicIndex => "series/zero-cyclotomic",
            Error::TruncationBeyondData { .. } => "series/truncation",
            Error::UnsupportedRelation(_) => "presentation/unsupported-relation",
            Error::InconsistentCircleKinds(_) => "cdga/inconsistent-circles",
            Error::NonHomogeneousDifferential { .. } => "cdga/non-homogeneous",
            Error::UnknownGenerator(_) => "cdga/unknown-generator",
            Error::DuplicateGenerator(_) => "cdga/duplicate-generator",
            Error::GeneratorDegreeParity { .. } => "cdga/degree-parity",
            Error::GeneratorDegreeZero { .. } => "cdga/degree-zero",
            Error::ExteriorExponent { .. } => "cdga/exterior-exponent",
            Error::GenusGuardrail { .. } => "atlas/guardrail",
            Error::BadBitPattern => "bundle/bad-w1",
            Error::Usage(_) => "cli/usage",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
