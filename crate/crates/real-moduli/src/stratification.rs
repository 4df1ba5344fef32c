//! Harder–Narasimhan strata of the space of invariant Cauchy–Riemann
//! operators: codimension bookkeeping, orientability of stratum normal
//! bundles, and the resulting contribution rule for each stratum.
//!
//! A rank-two unstable stratum is indexed by the degree `d₁ > d/2` of the
//! maximal destabilizing line sub-bundle and has real codimension
//! `2d₁ - d + g - 1`. Whether a stratum's normal bundle is orientable is
//! decided by three conditions on the discrete data alone; nonorientable
//! normal bundles contribute nothing in characteristic ≠ 2, orientable ones
//! contribute through a Gysin sequence shifted by the codimension.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::topology::{CurveKind, CurveTopology, RealBundleType};

/// One unstable stratum of the rank-two stratification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    /// Degree of the maximal destabilizing line sub-bundle.
    pub scss_degree: i64,
    /// Real codimension `2 d₁ - d + g - 1`; always at least 1.
    pub real_codim: u32,
}

impl Stratum {
    /// Number of path components of the stratum's fixed locus, `2^{2a-2}`
    /// when the curve has `a ≥ 1` fixed circles; undefined without real
    /// points.
    pub fn fixed_component_count(&self, fixed_circles: u32) -> Option<BigUint> {
        if fixed_circles == 0 {
            None
        } else {
            Some(BigUint::from(1u32) << (2 * fixed_circles as usize - 2))
        }
    }
}

/// All strata with `d₁ > d/2` and codimension at most `max_codim`, ascending
/// in `d₁`. The codimension grows by 2 with each step in `d₁`, so the list is
/// finite; a degenerate genus-zero stratum of non-positive codimension is
/// never emitted.
pub fn enumerate_strata(genus: u32, degree: i64, max_codim: u32) -> Vec<Stratum> {
    let mut strata = Vec::new();
    let mut d1 = degree.div_euclid(2) + 1;
    loop {
        let codim = 2 * d1 - degree + i64::from(genus) - 1;
        if codim > i64::from(max_codim) {
            break;
        }
        if codim >= 1 {
            strata.push(Stratum {
                scss_degree: d1,
                real_codim: codim as u32,
            });
        }
        d1 += 1;
    }
    strata
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientability {
    AllNonorientable,
    AllOrientable,
    Indeterminate,
}

/// Which of the decision rules fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriggeredCondition {
    /// Degree and genus of equal parity.
    Parity,
    /// Type I with an orientable restriction on some fixed circle.
    TypeIVanishingComponent,
    /// Type II curve.
    #[serde(rename = "type_ii")]
    TypeII,
    /// None of the conditions fired and the curve has real points.
    Converse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientabilityVerdict {
    pub orientability: Orientability,
    pub triggered_condition: Option<TriggeredCondition>,
}

/// Decide orientability of all unstable stratum normal bundles for a rank-two
/// configuration.
///
/// The normal bundles are all nonorientable if (1) `d ≡ g mod 2`, or (2) the
/// curve is type I and some w1 bit vanishes, or (3) the curve is type II.
/// When the curve has real points and none of the conditions hold they are
/// all orientable. Without real points the converse is unavailable, so a
/// type 0 curve with `d ≢ g` yields an indeterminate verdict rather than a
/// guess.
pub fn normal_bundle_orientability(
    curve: &CurveTopology,
    bundle: &RealBundleType,
) -> Result<OrientabilityVerdict> {
    curve.validate()?;
    bundle.validate_for(curve)?;
    if bundle.rank != 2 {
        return Err(Error::RankNotTwo {
            operation: "normal bundle orientability",
            rank: bundle.rank,
        });
    }

    let fired = if (bundle.degree - i64::from(curve.genus)).rem_euclid(2) == 0 {
        Some(TriggeredCondition::Parity)
    } else if curve.kind == CurveKind::TypeI && !bundle.w1.all_moebius() {
        Some(TriggeredCondition::TypeIVanishingComponent)
    } else if curve.kind == CurveKind::TypeII {
        Some(TriggeredCondition::TypeII)
    } else {
        None
    };

    Ok(match fired {
        Some(condition) => OrientabilityVerdict {
            orientability: Orientability::AllNonorientable,
            triggered_condition: Some(condition),
        },
        None if curve.has_real_points() => OrientabilityVerdict {
            orientability: Orientability::AllOrientable,
            triggered_condition: Some(TriggeredCondition::Converse),
        },
        None => OrientabilityVerdict {
            orientability: Orientability::Indeterminate,
            triggered_condition: None,
        },
    })
}

/// How a stratum enters the cohomology computation in characteristic ≠ 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "rule")]
pub enum ContributionRule {
    /// Nonorientable normal bundle: the stratum's relative cohomology
    /// vanishes and it drops out entirely.
    Vanishing,
    /// Orientable normal bundle: a Gysin sequence with the stated degree
    /// shift.
    Gysin { shift: u32 },
}

pub fn stratum_contribution(
    verdict: &OrientabilityVerdict,
    stratum: &Stratum,
) -> Result<ContributionRule> {
    match verdict.orientability {
        Orientability::AllNonorientable => Ok(ContributionRule::Vanishing),
        Orientability::AllOrientable => Ok(ContributionRule::Gysin {
            shift: stratum.real_codim,
        }),
        Orientability::Indeterminate => Err(Error::IndeterminateContribution),
    }
}

/// Largest degree through which moduli-space Betti numbers agree with those
/// of the full gauge classifying space: (minimal unstable codimension) - 2,
/// which is `g - 2` for odd degree. Only meaningful for odd degree; the value
/// is reported as-is and can be zero or negative for small genus.
pub fn betti_agreement_cutoff(genus: u32, degree: i64) -> Result<i64> {
    if degree.rem_euclid(2) == 0 {
        return Err(Error::OddDegreeRequired {
            operation: "Betti agreement cutoff",
            degree,
        });
    }
    let d1_min = degree.div_euclid(2) + 1;
    let min_codim = 2 * d1_min - degree + i64::from(genus) - 1;
    Ok(min_codim - 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{enumerate_real_bundles, W1Pattern};

    fn curve(g: u32, kind: CurveKind, a: u32) -> CurveTopology {
        CurveTopology {
            genus: g,
            kind,
            fixed_circles: a,
        }
    }

    #[test]
    fn enumerate_examples() {
        let strata = enumerate_strata(2, 1, 6);
        let pairs: Vec<(i64, u32)> = strata.iter().map(|s| (s.scss_degree, s.real_codim)).collect();
        assert_eq!(pairs, vec![(1, 2), (2, 4), (3, 6)]);

        assert!(enumerate_strata(2, 1, 1).is_empty());

        let strata = enumerate_strata(4, 1, 4);
        assert_eq!(strata.len(), 1);
        assert_eq!((strata[0].scss_degree, strata[0].real_codim), (1, 4));
    }

    #[test]
    fn strata_step_by_two_and_minimal_codim_is_genus_for_odd_degree() {
        for g in 1u32..=8 {
            for d in [-5i64, -3, -1, 1, 3, 5] {
                let strata = enumerate_strata(g, d, 25);
                assert_eq!(strata[0].real_codim, g);
                for pair in strata.windows(2) {
                    assert_eq!(pair[1].real_codim, pair[0].real_codim + 2);
                    assert_eq!(pair[1].scss_degree, pair[0].scss_degree + 1);
                }
                assert_eq!(betti_agreement_cutoff(g, d).unwrap(), i64::from(g) - 2);
            }
        }
    }

    #[test]
    fn fixed_component_count_powers() {
        let s = Stratum {
            scss_degree: 1,
            real_codim: 2,
        };
        assert_eq!(s.fixed_component_count(0), None);
        for a in 1u32..=6 {
            assert_eq!(
                s.fixed_component_count(a),
                Some(BigUint::from(1u32) << (2 * a as usize - 2))
            );
        }
    }

    #[test]
    fn orientability_examples() {
        let b = |w1: &str, d: i64| RealBundleType::new(2, d, w1.parse::<W1Pattern>().unwrap());

        let v =
            normal_bundle_orientability(&curve(2, CurveKind::TypeII, 1), &b("1", 1)).unwrap();
        assert_eq!(v.orientability, Orientability::AllNonorientable);
        assert_eq!(v.triggered_condition, Some(TriggeredCondition::TypeII));

        let v = normal_bundle_orientability(&curve(2, CurveKind::TypeI, 1), &b("1", 1)).unwrap();
        assert_eq!(v.orientability, Orientability::AllOrientable);

        // odd degree and odd genus: the parity condition fires first
        let v = normal_bundle_orientability(&curve(3, CurveKind::TypeI, 2), &b("10", 1)).unwrap();
        assert_eq!(v.orientability, Orientability::AllNonorientable);
        assert_eq!(v.triggered_condition, Some(TriggeredCondition::Parity));

        let v = normal_bundle_orientability(&curve(3, CurveKind::TypeI, 2), &b("00", 0)).unwrap();
        assert_eq!(v.triggered_condition, Some(TriggeredCondition::TypeIVanishingComponent));

        // rank is part of the hypothesis
        let bad = RealBundleType::new(3, 1, "1".parse().unwrap());
        assert!(matches!(
            normal_bundle_orientability(&curve(2, CurveKind::TypeI, 1), &bad),
            Err(Error::RankNotTwo { .. })
        ));
    }

    #[test]
    fn orientability_truth_table() {
        // Exhaustive over valid configurations with g <= 6, |d| <= 5.
        for g in 0u32..=6 {
            for kind in [CurveKind::Type0, CurveKind::TypeI, CurveKind::TypeII] {
                for a in 0..=g + 1 {
                    let c = curve(g, kind, a);
                    if c.validate().is_err() {
                        continue;
                    }
                    for d in -5i64..=5 {
                        for bundle in enumerate_real_bundles(&c, 2, d).unwrap() {
                            let v = normal_bundle_orientability(&c, &bundle).unwrap();
                            let expect_orientable = kind == CurveKind::TypeI
                                && (d - i64::from(g)).rem_euclid(2) == 1
                                && bundle.w1.all_moebius();
                            let any_condition = (d - i64::from(g)).rem_euclid(2) == 0
                                || (kind == CurveKind::TypeI && !bundle.w1.all_moebius())
                                || kind == CurveKind::TypeII;
                            let expected = if any_condition {
                                Orientability::AllNonorientable
                            } else if expect_orientable {
                                Orientability::AllOrientable
                            } else {
                                Orientability::Indeterminate
                            };
                            assert_eq!(v.orientability, expected, "g={g} {kind:?} a={a} d={d}");
                            if v.orientability == Orientability::Indeterminate {
                                assert_eq!(kind, CurveKind::Type0);
                                assert_eq!((d - i64::from(g)).rem_euclid(2), 1);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn contribution_rules() {
        let stratum = Stratum {
            scss_degree: 1,
            real_codim: 4,
        };
        let nonorientable = OrientabilityVerdict {
            orientability: Orientability::AllNonorientable,
            triggered_condition: Some(TriggeredCondition::Parity),
        };
        assert_eq!(
            stratum_contribution(&nonorientable, &stratum).unwrap(),
            ContributionRule::Vanishing
        );

        let orientable = OrientabilityVerdict {
            orientability: Orientability::AllOrientable,
            triggered_condition: Some(TriggeredCondition::Converse),
        };
        assert_eq!(
            stratum_contribution(&orientable, &stratum).unwrap(),
            ContributionRule::Gysin { shift: 4 }
        );

        let indeterminate = OrientabilityVerdict {
            orientability: Orientability::Indeterminate,
            triggered_condition: None,
        };
        assert!(matches!(
            stratum_contribution(&indeterminate, &stratum),
            Err(Error::IndeterminateContribution)
        ));
    }

    #[test]
    fn cutoff_examples() {
        assert_eq!(betti_agreement_cutoff(4, 1).unwrap(), 2);
        assert_eq!(betti_agreement_cutoff(2, 1).unwrap(), 0);
        assert_eq!(betti_agreement_cutoff(5, 3).unwrap(), 3);
        assert!(betti_agreement_cutoff(4, 2).is_err());
    }
}
