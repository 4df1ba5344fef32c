//! Exact truncated formal power series over the integers.
//!
//! All Poincaré series arithmetic in this crate runs through
//! [`TruncatedSeries`]: a coefficient vector indexed by degree `0..=N`
//! together with the truncation degree `N`. Coefficients are
//! arbitrary-precision integers and every operation is exact; there is no
//! floating point anywhere in this module. Binary operations on series with
//! different truncations resolve to the minimum, so no coefficient is ever
//! fabricated beyond known data.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::{Error as _, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::presentation::{GeneratorKind, GradedAlgebraPresentation, Relation};

/// Integer power series truncated at an inclusive degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    /// Coefficient of `t^i` at index `i`; length is `truncation + 1`.
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// The zero series truncated at `truncation`.
    pub fn zero(truncation: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); truncation + 1],
        }
    }

    /// The constant series 1 truncated at `truncation`.
    pub fn one(truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// `1 + t^degree`, truncated at `truncation`.
    pub fn one_plus_power(degree: usize, truncation: usize) -> Self {
        let mut s = Self::one(truncation);
        if degree <= truncation {
            s.coeffs[degree] = BigInt::one();
        }
        s
    }

    /// `1 - t^degree`, truncated at `truncation`.
    pub fn one_minus_power(degree: usize, truncation: usize) -> Self {
        let mut s = Self::one(truncation);
        if degree <= truncation {
            s.coeffs[degree] = -BigInt::one();
        }
        s
    }

    /// Build from explicit coefficients; the truncation is `len - 1`.
    pub fn from_coefficients(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least degree 0");
        TruncatedSeries { coeffs }
    }

    pub fn from_i64_coefficients(coeffs: &[i64]) -> Self {
        Self::from_coefficients(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^degree`; `None` beyond the truncation.
    pub fn coefficient(&self, degree: usize) -> Option<&BigInt> {
        self.coeffs.get(degree)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drop data above `truncation`. Never extends: asking for more data than
    /// the series holds is an error, not a zero-fill.
    pub fn truncated(&self, truncation: usize) -> Result<Self> {
        if truncation > self.truncation() {
            return Err(Error::TruncationBeyondData {
                requested: truncation,
                available: self.truncation(),
            });
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[..=truncation].to_vec(),
        })
    }

    /// `self^exponent` at the truncation of `self`.
    pub fn pow(&self, exponent: u32) -> Self {
        let mut acc = Self::one(self.truncation());
        for _ in 0..exponent {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply by the formal inverse of `1 - t^k`, i.e. by the geometric
    /// series `1 + t^k + t^{2k} + …`. Keeps the truncation of `self`.
    pub fn div_cyclotomic(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroCyclotomicIndex);
        }
        let mut out = self.coeffs.clone();
        for m in k..out.len() {
            let prev = out[m - k].clone();
            out[m] += prev;
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Multiply by the formal inverse of `1 + t^k` (alternating geometric
    /// series). Keeps the truncation of `self`.
    pub fn div_one_plus_power(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroCyclotomicIndex);
        }
        let mut out = self.coeffs.clone();
        for m in k..out.len() {
            let prev = out[m - k].clone();
            out[m] -= prev;
        }
        Ok(TruncatedSeries { coeffs: out })
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    /// Convolution product, truncated at the smaller truncation.
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let trunc = self.truncation().min(rhs.truncation());
        let mut out = vec![BigInt::zero(); trunc + 1];
        for (i, a) in self.coeffs.iter().take(trunc + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(trunc + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

impl Mul for TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: TruncatedSeries) -> TruncatedSeries {
        &self * &rhs
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (deg, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                if c.is_negative() {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mag = c.abs();
            match deg {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if deg == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{deg}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.truncation() + 1)
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("TruncatedSeries", 2)?;
        st.serialize_field("truncation", &self.truncation())?;
        let numbers = self
            .coeffs
            .iter()
            .map(|c| serde_json::Number::from_str(&c.to_string()).map_err(S::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        st.serialize_field("coefficients", &numbers)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            truncation: usize,
            coefficients: Vec<serde_json::Number>,
        }
        let repr = Repr::deserialize(deserializer)?;
        if repr.coefficients.len() != repr.truncation + 1 {
            return Err(D::Error::custom(format!(
                "series with truncation {} needs {} coefficients, got {}",
                repr.truncation,
                repr.truncation + 1,
                repr.coefficients.len()
            )));
        }
        let coeffs = repr
            .coefficients
            .iter()
            .map(|n| BigInt::from_str(&n.to_string()).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries { coeffs })
    }
}

/// Poincaré series of a presented graded algebra, truncated at `truncation`.
///
/// An exterior generator of degree `d` contributes a factor `1 + t^d`; a
/// polynomial or divided-power generator contributes `1/(1 - t^d)`. A sum
/// relation among `m` same-degree exterior generators replaces `(1+t^d)^m`
/// by `(1+t^d)^{m-1}`: the quotient is again free exterior, on one fewer
/// generator of that degree.
pub fn presentation_poincare(
    presentation: &GradedAlgebraPresentation,
    truncation: usize,
) -> Result<TruncatedSeries> {
    presentation.validate()?;

    // Count exterior factors per degree so sum relations can strike one each.
    let mut exterior: std::collections::BTreeMap<u32, usize> = std::collections::BTreeMap::new();
    let mut towers: Vec<u32> = Vec::new();
    for g in &presentation.generators {
        match g.kind {
            GeneratorKind::Exterior => *exterior.entry(g.degree).or_insert(0) += 1,
            GeneratorKind::Polynomial | GeneratorKind::DividedPower => towers.push(g.degree),
        }
    }
    for rel in &presentation.relations {
        if let Relation::Sum(labels) = rel {
            // validate() guarantees the labels exist, are exterior, and share a degree
            let degree = presentation.lookup(&labels[0]).unwrap().degree;
            let count = exterior.get_mut(&degree).unwrap();
            if *count == 0 {
                return Err(Error::UnsupportedRelation(format!(
                    "no exterior factor of degree {degree} left to quotient"
                )));
            }
            *count -= 1;
        }
    }

    let mut series = TruncatedSeries::one(truncation);
    for (&degree, &count) in &exterior {
        let factor = TruncatedSeries::one_plus_power(degree as usize, truncation);
        for _ in 0..count {
            series = &series * &factor;
        }
    }
    for degree in towers {
        series = series.div_cyclotomic(degree as usize)?;
    }
    Ok(series)
}
