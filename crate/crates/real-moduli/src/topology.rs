//! Real curve topologies and topological types of Real/Quaternionic bundles.
//!
//! A real curve is a closed genus-`g` surface with an anti-holomorphic
//! involution; its fixed locus is a disjoint union of `a` circles. The
//! classical trichotomy: type 0 (no fixed circles), type I (the complement of
//! the fixed circles is disconnected, which forces `a ≡ g+1 mod 2` and
//! `a ≤ g+1`), type II (complement connected, `1 ≤ a ≤ g`).
//!
//! Rank-`r`, degree-`d` Real bundles over a fixed curve are classified by the
//! per-circle first Stiefel–Whitney data of the real-point sub-bundle,
//! subject to `d ≡ (number of Möbius circles) mod 2`; with `a ≥ 1` circles
//! there are exactly `2^{a-1}` types. Quaternionic bundles are classified by
//! `(r, d)` with `d ≡ r(g-1) mod 2`, and odd rank forces an empty real locus.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The three topological types of a real structure on a genus-`g` surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CurveKind {
    #[serde(rename = "0")]
    Type0,
    #[serde(rename = "I")]
    TypeI,
    #[serde(rename = "II")]
    TypeII,
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveKind::Type0 => write!(f, "0"),
            CurveKind::TypeI => write!(f, "I"),
            CurveKind::TypeII => write!(f, "II"),
        }
    }
}

impl FromStr for CurveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0" => Ok(CurveKind::Type0),
            "I" | "i" => Ok(CurveKind::TypeI),
            "II" | "ii" => Ok(CurveKind::TypeII),
            other => Err(Error::Usage(format!(
                "unknown curve type {other:?}, expected 0, I or II"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveTopology {
    pub genus: u32,
    pub kind: CurveKind,
    pub fixed_circles: u32,
}

impl CurveTopology {
    /// Validating constructor.
    pub fn new(genus: u32, kind: CurveKind, fixed_circles: u32) -> Result<Self> {
        let curve = CurveTopology {
            genus,
            kind,
            fixed_circles,
        };
        curve.validate()?;
        Ok(curve)
    }

    /// Check the topological constraints relating genus, type and circle count.
    pub fn validate(&self) -> Result<()> {
        let (g, a) = (self.genus, self.fixed_circles);
        match self.kind {
            CurveKind::Type0 => {
                if a != 0 {
                    return Err(Error::CurveTypeZeroCircles { circles: a });
                }
            }
            CurveKind::TypeI => {
                if a < 1 || a > g + 1 {
                    return Err(Error::CurveCirclesRange {
                        genus: g,
                        circles: a,
                        max: g + 1,
                    });
                }
                if a % 2 != (g + 1) % 2 {
                    return Err(Error::CurveCirclesParity {
                        genus: g,
                        circles: a,
                    });
                }
            }
            CurveKind::TypeII => {
                if a < 1 || a > g {
                    return Err(Error::CurveTypeTwoCirclesRange {
                        genus: g,
                        circles: a,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn has_real_points(&self) -> bool {
        self.fixed_circles > 0
    }
}

/// Per-circle orientability of the real-point sub-bundle: bit `i` is set iff
/// the restriction to fixed circle `i` is a Möbius bundle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct W1Pattern(Vec<bool>);

impl W1Pattern {
    pub fn new(bits: Vec<bool>) -> Self {
        W1Pattern(bits)
    }

    /// The empty pattern (curves without real points).
    pub fn empty() -> Self {
        W1Pattern(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Number of Möbius circles.
    pub fn weight(&self) -> u32 {
        self.0.iter().filter(|&&b| b).count() as u32
    }

    pub fn all_moebius(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|&b| b)
    }

    pub fn all_orientable(&self) -> bool {
        self.0.iter().all(|&b| !b)
    }
}

impl fmt::Display for W1Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &bit in &self.0 {
            write!(f, "{}", if bit { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl FromStr for W1Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::BadBitPattern),
            })
            .collect::<Result<Vec<bool>>>()
            .map(W1Pattern)
    }
}

impl Serialize for W1Pattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for W1Pattern {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Topological type of a Real bundle: rank, degree and per-circle w1 data.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RealBundleType {
    pub rank: u32,
    pub degree: i64,
    pub w1: W1Pattern,
}

impl RealBundleType {
    pub fn new(rank: u32, degree: i64, w1: W1Pattern) -> Self {
        RealBundleType { rank, degree, w1 }
    }

    /// Check the classification constraints against a given curve.
    pub fn validate_for(&self, curve: &CurveTopology) -> Result<()> {
        curve.validate()?;
        if self.w1.len() != curve.fixed_circles as usize {
            return Err(Error::BitPatternLength {
                pattern_len: self.w1.len(),
                circles: curve.fixed_circles,
            });
        }
        if curve.fixed_circles == 0 {
            if self.degree.rem_euclid(2) != 0 {
                return Err(Error::NoRealPointsOddDegree {
                    degree: self.degree,
                });
            }
            return Ok(());
        }
        if self.degree.rem_euclid(2) != i64::from(self.w1.weight() % 2) {
            return Err(Error::DegreeWeightParity {
                degree: self.degree,
                weight: self.w1.weight(),
            });
        }
        Ok(())
    }
}

/// Topological type of a Quaternionic bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuaternionicBundleType {
    pub rank: u32,
    pub degree: i64,
}

impl QuaternionicBundleType {
    pub fn new(rank: u32, degree: i64) -> Self {
        QuaternionicBundleType { rank, degree }
    }

    pub fn validate_for(&self, curve: &CurveTopology) -> Result<()> {
        validate_quaternionic(curve, self.rank, self.degree)
    }
}

/// All Real bundle types of the given rank and degree over `curve`: every w1
/// pattern whose weight matches the degree parity. For `a ≥ 1` circles there
/// are `2^{a-1}` of them; without real points the degree must be even and the
/// unique type carries the empty pattern.
pub fn enumerate_real_bundles(
    curve: &CurveTopology,
    rank: u32,
    degree: i64,
) -> Result<Vec<RealBundleType>> {
    curve.validate()?;
    let a = curve.fixed_circles;
    if a == 0 {
        return Ok(if degree.rem_euclid(2) == 0 {
            vec![RealBundleType::new(rank, degree, W1Pattern::empty())]
        } else {
            Vec::new()
        });
    }
    let parity = degree.rem_euclid(2) as u32;
    let mut bundles = Vec::with_capacity(1 << (a - 1));
    // Ascending as bitstrings (most significant bit first), so the output
    // order is lexicographic.
    for mask in 0u64..(1u64 << a) {
        let bits: Vec<bool> = (0..a).map(|i| mask >> (a - 1 - i) & 1 == 1).collect();
        let weight = bits.iter().filter(|&&b| b).count() as u32;
        if weight % 2 == parity {
            bundles.push(RealBundleType::new(rank, degree, W1Pattern::new(bits)));
        }
    }
    Ok(bundles)
}

/// Quaternionic classification constraints: `d ≡ r(g-1) mod 2`, and odd rank
/// only over curves without real points.
pub fn validate_quaternionic(curve: &CurveTopology, rank: u32, degree: i64) -> Result<()> {
    curve.validate()?;
    // (g - 1) and (g + 1) have the same parity, avoiding underflow at g = 0
    if degree.rem_euclid(2) != i64::from((rank % 2) * ((curve.genus + 1) % 2)) {
        return Err(Error::QuaternionicParity {
            rank,
            degree,
            genus: curve.genus,
        });
    }
    if rank % 2 == 1 && curve.kind != CurveKind::Type0 {
        return Err(Error::QuaternionicOddRankRealPoints);
    }
    Ok(())
}

/// A curve presented as two mirror copies of a genus-`ĝ` surface with `n`
/// boundary circles, glued along the boundary: `a` circles by the identity
/// (these become the fixed circles) and the rest antipodally. The genus of
/// the doubled surface is `2ĝ + n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDecomposition {
    pub half_genus: u32,
    pub boundary_circles: u32,
    pub identity_glued: u32,
}

impl SurfaceDecomposition {
    pub fn genus(&self) -> u32 {
        2 * self.half_genus + self.boundary_circles - 1
    }
}

/// Canonical decomposition of a curve with real points. Type I forces
/// `n = a`; for type II we take the smallest `n > a` of the right parity.
pub fn decompose_surface(curve: &CurveTopology) -> Result<SurfaceDecomposition> {
    curve.validate()?;
    let (g, a) = (curve.genus, curve.fixed_circles);
    match curve.kind {
        CurveKind::Type0 => Err(Error::RealPointsRequired {
            operation: "surface decomposition",
        }),
        CurveKind::TypeI => Ok(SurfaceDecomposition {
            half_genus: (g + 1 - a) / 2,
            boundary_circles: a,
            identity_glued: a,
        }),
        CurveKind::TypeII => {
            let n = if (a + 1) % 2 == (g + 1) % 2 { a + 1 } else { a + 2 };
            Ok(SurfaceDecomposition {
                half_genus: (g + 1 - n) / 2,
                boundary_circles: n,
                identity_glued: a,
            })
        }
    }
}

/// Behaviour of the gauge symmetries over one boundary circle of a
/// decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CircleKind {
    /// Identity-glued circle with orientable (trivial) real-point restriction.
    IdentityOrientable,
    /// Identity-glued circle whose restriction is a Möbius bundle.
    IdentityMoebius,
    /// Antipodally glued circle.
    Antipodal,
}

impl CircleKind {
    /// Möbius circles are the ones whose boundary gauge group is homotopy
    /// trivial in characteristic != 2.
    pub fn is_moebius(&self) -> bool {
        matches!(self, CircleKind::IdentityMoebius)
    }
}

/// Boundary circle kinds of a decomposition, given the w1 data on the fixed
/// circles: the `a` identity-glued circles first, then antipodal circles.
pub fn circle_kinds(dec: &SurfaceDecomposition, w1: &W1Pattern) -> Result<Vec<CircleKind>> {
    if w1.len() != dec.identity_glued as usize {
        return Err(Error::BitPatternLength {
            pattern_len: w1.len(),
            circles: dec.identity_glued,
        });
    }
    let mut kinds: Vec<CircleKind> = w1
        .bits()
        .iter()
        .map(|&moebius| {
            if moebius {
                CircleKind::IdentityMoebius
            } else {
                CircleKind::IdentityOrientable
            }
        })
        .collect();
    kinds.resize(dec.boundary_circles as usize, CircleKind::Antipodal);
    Ok(kinds)
}

/// The case split governing the gauge classifying-space cohomology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GaugeCase {
    /// At least one circle with nontrivial loop-group cohomology and at least
    /// one Möbius circle (or an antipodal circle alongside Möbius data).
    Generic,
    /// Type I with a Möbius restriction on every fixed circle: every boundary
    /// circle of the decomposition is Möbius.
    AllMoebius,
    /// Orientable restriction on every fixed circle: no Möbius circles.
    AllOrientable,
}

impl fmt::Display for GaugeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaugeCase::Generic => write!(f, "generic"),
            GaugeCase::AllMoebius => write!(f, "all-moebius"),
            GaugeCase::AllOrientable => write!(f, "all-orientable"),
        }
    }
}

/// Classify which of the three gauge cohomology cases a configuration lands
/// in. Requires real points; the curve itself is not re-validated, only the
/// structural fit of the w1 pattern.
pub fn classify_gauge_case(curve: &CurveTopology, bundle: &RealBundleType) -> Result<GaugeCase> {
    if curve.fixed_circles == 0 {
        return Err(Error::RealPointsRequired {
            operation: "gauge case classification",
        });
    }
    if bundle.w1.len() != curve.fixed_circles as usize {
        return Err(Error::BitPatternLength {
            pattern_len: bundle.w1.len(),
            circles: curve.fixed_circles,
        });
    }
    if curve.kind == CurveKind::TypeI && bundle.w1.all_moebius() {
        Ok(GaugeCase::AllMoebius)
    } else if bundle.w1.all_orientable() {
        Ok(GaugeCase::AllOrientable)
    } else {
        Ok(GaugeCase::Generic)
    }
}
