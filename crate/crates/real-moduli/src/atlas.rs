//! Batch atlas generation: one row per (curve topology, bundle type) pair,
//! aggregating classification, orientability, strata and cohomology data.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauge::{
    bg_cohomology, fixed_determinant_invariants, moduli_cohomology, FieldSpec, TriState,
};
use crate::series::TruncatedSeries;
use crate::stratification::{
    enumerate_strata, normal_bundle_orientability, stratum_contribution, OrientabilityVerdict,
};
use crate::topology::{
    classify_gauge_case, enumerate_real_bundles, validate_quaternionic, CurveKind, CurveTopology,
    GaugeCase, W1Pattern,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumSummary {
    pub scss_degree: i64,
    pub real_codim: u32,
    /// "vanishing", "gysin(shift=c)" or "indeterminate".
    pub contribution: String,
}

/// One atlas row; round-trips losslessly through JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtlasRow {
    pub genus: u32,
    pub kind: CurveKind,
    pub circles: u32,
    pub w1: W1Pattern,
    pub rank: u32,
    pub degree: i64,
    pub case: Option<GaugeCase>,
    pub orientability: OrientabilityVerdict,
    pub quaternionic_ok: bool,
    pub strata: Vec<StratumSummary>,
    pub bg_series: Option<TruncatedSeries>,
    pub moduli_series: Option<TruncatedSeries>,
    pub moduli_partial_up_to: Option<u32>,
    pub moduli_is_exterior: Option<TriState>,
    pub fixed_determinant_series: Option<TruncatedSeries>,
    pub citations: Vec<String>,
}

/// Atlas parameters echoed in the emitted document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasParameters {
    pub degree: i64,
    pub characteristic: u32,
    pub truncation: usize,
    pub max_codim: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtlasDocument {
    pub parameters: AtlasParameters,
    pub rows: Vec<AtlasRow>,
}

/// Build the atlas for every genus in `genus_range` (guardrail: 1..=12),
/// rank two, the given degree. Rows are ordered by (genus, kind, circles,
/// w1), so output is deterministic.
pub fn atlas(
    genus_range: impl IntoIterator<Item = u32>,
    degree: i64,
    field: &FieldSpec,
    truncation: usize,
    max_codim: u32,
) -> Result<AtlasDocument> {
    let mut rows = Vec::new();
    for genus in genus_range {
        if !(1..=12).contains(&genus) {
            return Err(Error::GenusGuardrail { genus });
        }
        for curve in curves_of_genus(genus) {
            for bundle in enumerate_real_bundles(&curve, 2, degree)? {
                rows.push(build_row(&curve, &bundle.w1, degree, field, truncation, max_codim)?);
            }
        }
    }
    Ok(AtlasDocument {
        parameters: AtlasParameters {
            degree,
            characteristic: field.characteristic(),
            truncation,
            max_codim,
        },
        rows,
    })
}

/// All valid curve topologies of a genus, ordered by (kind, circles).
pub fn curves_of_genus(genus: u32) -> Vec<CurveTopology> {
    let mut curves = vec![CurveTopology {
        genus,
        kind: CurveKind::Type0,
        fixed_circles: 0,
    }];
    for a in 1..=genus + 1 {
        if a % 2 == (genus + 1) % 2 {
            curves.push(CurveTopology {
                genus,
                kind: CurveKind::TypeI,
                fixed_circles: a,
            });
        }
    }
    for a in 1..=genus {
        curves.push(CurveTopology {
            genus,
            kind: CurveKind::TypeII,
            fixed_circles: a,
        });
    }
    curves
}

fn build_row(
    curve: &CurveTopology,
    w1: &W1Pattern,
    degree: i64,
    field: &FieldSpec,
    truncation: usize,
    max_codim: u32,
) -> Result<AtlasRow> {
    let bundle = crate::topology::RealBundleType::new(2, degree, w1.clone());
    let verdict = normal_bundle_orientability(curve, &bundle)?;
    let strata = enumerate_strata(curve.genus, degree, max_codim)
        .into_iter()
        .map(|s| StratumSummary {
            scss_degree: s.scss_degree,
            real_codim: s.real_codim,
            contribution: match stratum_contribution(&verdict, &s) {
                Ok(crate::stratification::ContributionRule::Vanishing) => "vanishing".to_string(),
                Ok(crate::stratification::ContributionRule::Gysin { shift }) => {
                    format!("gysin(shift={shift})")
                }
                Err(_) => "indeterminate".to_string(),
            },
        })
        .collect();

    let mut citations = Vec::new();
    let (case, bg_series) = if curve.has_real_points() {
        let report = bg_cohomology(curve, &bundle, field, truncation)?;
        citations.extend(report.citations.clone());
        (Some(classify_gauge_case(curve, &bundle)?), report.series)
    } else {
        (None, None)
    };

    let moduli_applicable =
        degree.rem_euclid(2) == 1 && curve.genus >= 2 && curve.has_real_points();
    let (moduli_series, moduli_partial_up_to, moduli_is_exterior, fixed_determinant_series) =
        if moduli_applicable {
            let moduli = moduli_cohomology(curve, &bundle, field, truncation)?;
            let fdi = fixed_determinant_invariants(curve, &bundle, field, truncation)?;
            for c in moduli.citations.iter().chain(fdi.citations.iter()) {
                if !citations.contains(c) {
                    citations.push(c.clone());
                }
            }
            (
                moduli.series,
                moduli.partial_up_to,
                Some(moduli.flags.is_exterior),
                fdi.series,
            )
        } else {
            (None, None, None, None)
        };

    Ok(AtlasRow {
        genus: curve.genus,
        kind: curve.kind,
        circles: curve.fixed_circles,
        w1: w1.clone(),
        rank: 2,
        degree,
        case,
        orientability: verdict,
        quaternionic_ok: validate_quaternionic(curve, 2, degree).is_ok(),
        strata,
        bg_series,
        moduli_series,
        moduli_partial_up_to,
        moduli_is_exterior,
        fixed_determinant_series,
        citations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_odd_degree_has_eight_rows() {
        let doc = atlas([2], 1, &FieldSpec::rationals(), 8, 6).unwrap();
        assert_eq!(doc.rows.len(), 8);
        // type I a=1 (1), type I a=3 (4), type II a=1 (1), type II a=2 (2)
        let counts: Vec<(CurveKind, u32)> =
            doc.rows.iter().map(|r| (r.kind, r.circles)).collect();
        assert_eq!(counts.iter().filter(|(k, _)| *k == CurveKind::TypeI).count(), 5);
        assert_eq!(counts.iter().filter(|(k, _)| *k == CurveKind::TypeII).count(), 3);
        // deterministic order: sorted by (genus, kind, circles, w1)
        let mut sorted = doc.rows.clone();
        sorted.sort_by(|a, b| {
            (a.genus, a.kind, a.circles, a.w1.clone())
                .cmp(&(b.genus, b.kind, b.circles, b.w1.clone()))
        });
        assert_eq!(doc.rows, sorted);
    }

    #[test]
    fn even_degree_includes_all_orientable_and_type0_rows() {
        let doc = atlas([2], 2, &FieldSpec::rationals(), 8, 6).unwrap();
        assert!(doc
            .rows
            .iter()
            .any(|r| r.case == Some(GaugeCase::AllOrientable)));
        assert!(doc.rows.iter().any(|r| r.kind == CurveKind::Type0));
        // no moduli column for even degree
        assert!(doc.rows.iter().all(|r| r.moduli_series.is_none()));
    }

    #[test]
    fn empty_range_gives_empty_document() {
        let doc = atlas(2..2, 1, &FieldSpec::rationals(), 8, 6).unwrap();
        assert!(doc.rows.is_empty());
    }

    #[test]
    fn guardrail() {
        assert!(matches!(
            atlas([13], 1, &FieldSpec::rationals(), 8, 6),
            Err(Error::GenusGuardrail { genus: 13 })
        ));
        assert!(matches!(
            atlas([0], 1, &FieldSpec::rationals(), 8, 6),
            Err(Error::GenusGuardrail { genus: 0 })
        ));
    }

    #[test]
    fn rows_round_trip_through_json() {
        let doc = atlas([1, 2], 1, &FieldSpec::rationals(), 6, 4).unwrap();
        let json = serde_json::to_string(&doc).unwrap();
        let back: AtlasDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn row_count_matches_type_counts() {
        // for fixed g and odd d the row count is the sum of 2^{a-1} over
        // valid (kind, a)
        for g in 1u32..=5 {
            let doc = atlas([g], 1, &FieldSpec::rationals(), 6, 4).unwrap();
            let expected: usize = curves_of_genus(g)
                .iter()
                .filter(|c| c.fixed_circles > 0)
                .map(|c| 1usize << (c.fixed_circles - 1))
                .sum();
            assert_eq!(doc.rows.len(), expected);
        }
    }
}
