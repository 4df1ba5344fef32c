//! Closed-form cohomology of gauge classifying spaces and of the moduli
//! spaces of semistable rank-two Real bundles, plus the Koszul–Tate complex
//! that the oracle checks those closed forms against.
//!
//! Over a curve of genus `g` with real points the classifying space of the
//! real gauge group of a rank-two Real bundle has Poincaré series
//!
//! * `(1+t)^g (1+t^3)^{g-1}` generically,
//! * `(1+t)^g (1+t^3)^g / (1-t^2)` when every fixed circle is Möbius
//!   (type I only), and
//! * `(1+t)^g (1+t^3)^g / (1-t^4)` when every fixed circle is orientable,
//!
//! over any coefficient field of characteristic ≠ 2. For odd degree the
//! unstable strata drop out except in the all-Möbius case, identifying the
//! moduli-space cohomology with the classifying-space answer; in the
//! all-Möbius case the two agree only through degree `g-2` and the reports
//! are partial.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{Cdga, Term};
use crate::presentation::{FreenessClaim, Generator, GeneratorKind, GradedAlgebraPresentation};
use crate::series::TruncatedSeries;
use crate::stratification::betti_agreement_cutoff;
use crate::topology::{
    classify_gauge_case, CircleKind, CurveTopology, GaugeCase, QuaternionicBundleType,
    RealBundleType, SurfaceDecomposition,
};

/// Coefficient field: characteristic 0 (the rationals) or an odd prime.
/// Characteristic 2 is rejected; none of the results here hold there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct FieldSpec {
    characteristic: u32,
}

impl FieldSpec {
    pub fn new(characteristic: u32) -> Result<Self> {
        match characteristic {
            0 => Ok(FieldSpec { characteristic: 0 }),
            2 => Err(Error::CharacteristicTwo),
            p if is_prime(p) => Ok(FieldSpec { characteristic: p }),
            p => Err(Error::CharacteristicNotPrime(p)),
        }
    }

    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn is_char_zero(&self) -> bool {
        self.characteristic == 0
    }
}

impl TryFrom<u32> for FieldSpec {
    type Error = Error;

    fn try_from(value: u32) -> Result<Self> {
        FieldSpec::new(value)
    }
}

impl From<FieldSpec> for u32 {
    fn from(f: FieldSpec) -> u32 {
        f.characteristic
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// What a report is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    ClassifyingSpace,
    ModuliSpace,
    ModuliStack,
    FixedDeterminantInvariants,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriState {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFlags {
    pub is_exterior: TriState,
    pub ring_known: bool,
    /// Set on exceptional fixed-determinant reports of genus ≥ 4: the first
    /// positive-degree invariant Betti number sits in degree 2.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_positive_invariant_betti_degree: Option<u32>,
}

/// Per-configuration cohomology answer. When `partial_up_to` is set the
/// series stops at that degree: coefficients beyond it are genuinely absent
/// from the report, never zero-filled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub subject: Subject,
    pub case: Option<GaugeCase>,
    pub genus: u32,
    pub degree: i64,
    pub series: Option<TruncatedSeries>,
    pub presentation: Option<GradedAlgebraPresentation>,
    pub partial_up_to: Option<u32>,
    pub dimension: Option<u32>,
    pub flags: ReportFlags,
    pub citations: Vec<String>,
}

impl CohomologyReport {
    /// Human-readable markdown rendering.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("| field | value |\n|---|---|\n");
        out.push_str(&format!("| subject | {:?} |\n", self.subject));
        out.push_str(&format!(
            "| case | {} |\n",
            self.case.map_or("-".to_string(), |c| c.to_string())
        ));
        out.push_str(&format!("| genus | {} |\n", self.genus));
        out.push_str(&format!("| degree | {} |\n", self.degree));
        if let Some(series) = &self.series {
            out.push_str(&format!("| series | {series} |\n"));
        }
        if let Some(pres) = &self.presentation {
            out.push_str(&format!("| ring | {pres} |\n"));
        }
        if let Some(cutoff) = self.partial_up_to {
            out.push_str(&format!("| partial up to degree | {cutoff} |\n"));
        }
        if let Some(dim) = self.dimension {
            out.push_str(&format!("| dimension | {dim} |\n"));
        }
        out.push_str(&format!("| is exterior | {:?} |\n", self.flags.is_exterior));
        out.push_str(&format!("| ring known | {} |\n", self.flags.ring_known));
        for c in &self.citations {
            out.push_str(&format!("| rule | {c} |\n"));
        }
        out
    }
}

pub mod citations {
    pub const BG_GENERIC: &str =
        "classifying-space/generic: P(t) = (1+t)^g (1+t^3)^(g-1), exterior on g degree-1 and g-1 degree-3 generators";
    pub const BG_ALL_MOEBIUS: &str =
        "classifying-space/all-moebius: P(t) = (1+t)^g (1+t^3)^g / (1-t^2), free graded-commutative with a degree-2 divided-power generator";
    pub const BG_ALL_ORIENTABLE: &str =
        "classifying-space/all-orientable: P(t) = (1+t)^g (1+t^3)^g / (1-t^4); free graded-commutative in characteristic zero";
    pub const MODULI_AGREES_WITH_BG: &str =
        "moduli/odd-degree: nonorientable unstable normal bundles make every stratum contribution vanish, so moduli and classifying-space cohomology agree";
    pub const MODULI_EXCEPTIONAL: &str =
        "moduli/exceptional: unstable strata have orientable normal bundles; Gysin truncation pins Betti numbers only through degree g-2";
    pub const MODULI_NOT_EXTERIOR: &str =
        "moduli/exceptional: b1 = g and b2 = C(g,2)+1 rule out an exterior algebra for genus >= 4";
    pub const FIXED_DET_GENERIC: &str =
        "fixed-determinant/invariants: the 2-torsion-invariant ring is exterior on g-1 degree-3 generators";
    pub const FIXED_DET_EXCEPTIONAL: &str =
        "fixed-determinant/exceptional: invariant series is the moduli partial series with the (1+t)^g torus factor divided out; first positive-degree invariant Betti number sits in degree 2";
    pub const QUATERNIONIC_STACK: &str =
        "quaternionic/stack: over a curve with real points a rank-two quaternionic bundle admits no destabilizing quaternionic line sub-bundle, so the semistable moduli stack is the full gauge classifying space";
    pub const COVERING_FACTORIZATION: &str =
        "fixed-determinant/covering: tensoring by degree-zero Real line bundles is a covering with transitive 2-torsion deck group, so moduli cohomology factors as invariants times an exterior algebra on g degree-1 classes";
}

/// Closed-form Poincaré series of the gauge classifying space, by genus and
/// case.
pub fn bg_series(genus: u32, case: GaugeCase, truncation: usize) -> Result<TruncatedSeries> {
    let one_plus_t = TruncatedSeries::one_plus_power(1, truncation);
    let one_plus_t3 = TruncatedSeries::one_plus_power(3, truncation);
    match case {
        GaugeCase::Generic => {
            if genus == 0 {
                return Err(Error::GenusTooSmall {
                    operation: "generic classifying-space series",
                    genus,
                    min: 1,
                });
            }
            Ok(&one_plus_t.pow(genus) * &one_plus_t3.pow(genus - 1))
        }
        GaugeCase::AllMoebius => {
            (&one_plus_t.pow(genus) * &one_plus_t3.pow(genus)).div_cyclotomic(2)
        }
        GaugeCase::AllOrientable => {
            (&one_plus_t.pow(genus) * &one_plus_t3.pow(genus)).div_cyclotomic(4)
        }
    }
}

fn exterior_block(prefix: &str, degree: u32, count: u32) -> Vec<Generator> {
    (1..=count)
        .map(|i| Generator::new(format!("{prefix}{i}"), degree, GeneratorKind::Exterior))
        .collect()
}

fn bg_presentation(genus: u32, case: GaugeCase, field: &FieldSpec) -> GradedAlgebraPresentation {
    let mut generators = exterior_block("a", 1, genus);
    match case {
        GaugeCase::Generic => {
            generators.extend(exterior_block("c", 3, genus.saturating_sub(1)));
            GradedAlgebraPresentation::free(generators, FreenessClaim::Free)
        }
        GaugeCase::AllMoebius => {
            generators.extend(exterior_block("c", 3, genus));
            generators.push(Generator::new("z", 2, GeneratorKind::DividedPower));
            let claim = if field.is_char_zero() {
                FreenessClaim::Free
            } else {
                FreenessClaim::FreeCharZeroOnly
            };
            GradedAlgebraPresentation::free(generators, claim)
        }
        GaugeCase::AllOrientable => {
            generators.extend(exterior_block("c", 3, genus));
            generators.push(Generator::new("p", 4, GeneratorKind::Polynomial));
            let claim = if field.is_char_zero() {
                FreenessClaim::Free
            } else {
                FreenessClaim::Unknown
            };
            GradedAlgebraPresentation::free(generators, claim)
        }
    }
}

/// Cohomology of the classifying space of the real gauge group.
///
/// Only the structural hypotheses are enforced — real points, rank two, a w1
/// pattern matching the circle count, characteristic ≠ 2. The answer depends
/// only on the genus and the gauge case, and is valid for any degree (for
/// even degree it describes the moduli stack level rather than a coarse
/// moduli space).
pub fn bg_cohomology(
    curve: &CurveTopology,
    bundle: &RealBundleType,
    field: &FieldSpec,
    truncation: usize,
) -> Result<CohomologyReport> {
    if bundle.rank != 2 {
        return Err(Error::RankNotTwo {
            operation: "classifying-space cohomology",
            rank: bundle.rank,
        });
    }
    let case = classify_gauge_case(curve, bundle)?;
    let series = bg_series(curve.genus, case, truncation)?;
    let presentation = bg_presentation(curve.genus, case, field);
    let (is_exterior, ring_known, citation) = match case {
        GaugeCase::Generic => (TriState::Yes, true, citations::BG_GENERIC),
        GaugeCase::AllMoebius => (TriState::No, true, citations::BG_ALL_MOEBIUS),
        GaugeCase::AllOrientable => (
            TriState::No,
            field.is_char_zero(),
            citations::BG_ALL_ORIENTABLE,
        ),
    };
    Ok(CohomologyReport {
        subject: Subject::ClassifyingSpace,
        case: Some(case),
        genus: curve.genus,
        degree: bundle.degree,
        series: Some(series),
        presentation: Some(presentation),
        partial_up_to: None,
        dimension: None,
        flags: ReportFlags {
            is_exterior,
            ring_known,
            first_positive_invariant_betti_degree: None,
        },
        citations: vec![citation.to_string()],
    })
}

/// The Koszul–Tate complex computing the second page of the Eilenberg–Moore
/// spectral sequence of the gauge-group pull-back square, collapsed to total
/// degree.
///
/// With `n` boundary circles of which `f` are not Möbius (reindexed to
/// positions `1..=f`), and half-genus `ĝ`, the generators are `q_1..q_f`
/// (degree 3), `p_1..p_f` (degree 4), `x_1..x_{n-1}` (degree 1),
/// `y_1..y_{n-1}` (degree 3), `z` (degree 2; polynomial in characteristic 0,
/// divided-power otherwise) and exterior `α_1..α_{2ĝ}`, `β_1..β_{2ĝ}` of
/// degrees 1 and 3. The differential vanishes on everything except
///
/// * `δ(y_i) = p_i - p_n` when `f = n`, `p_i` for `i ≤ f < n`, `0` for
///   `i > f`;
/// * `δ(z) = q_1 + … + q_f` when `f > 0`.
pub fn build_koszul_tate(
    dec: &SurfaceDecomposition,
    circles: &[CircleKind],
    field: &FieldSpec,
) -> Result<Cdga> {
    let n = dec.boundary_circles as usize;
    let a = dec.identity_glued as usize;
    if circles.len() != n {
        return Err(Error::InconsistentCircleKinds(format!(
            "{} circle kinds for {} boundary circles",
            circles.len(),
            n
        )));
    }
    for (i, kind) in circles.iter().enumerate() {
        let identity_region = i < a;
        let is_identity = matches!(
            kind,
            CircleKind::IdentityOrientable | CircleKind::IdentityMoebius
        );
        if identity_region != is_identity {
            return Err(Error::InconsistentCircleKinds(format!(
                "circle {} should be {} for this decomposition",
                i + 1,
                if identity_region { "identity-glued" } else { "antipodal" }
            )));
        }
    }

    let moebius = circles.iter().filter(|k| k.is_moebius()).count();
    let f = n - moebius;
    let doubled = 2 * dec.half_genus;

    let mut generators = Vec::new();
    for i in 1..=f {
        generators.push(Generator::new(format!("q{i}"), 3, GeneratorKind::Exterior));
    }
    for i in 1..=f {
        generators.push(Generator::new(format!("p{i}"), 4, GeneratorKind::Polynomial));
    }
    for i in 1..n {
        generators.push(Generator::new(format!("x{i}"), 1, GeneratorKind::Exterior));
    }
    for i in 1..n {
        generators.push(Generator::new(format!("y{i}"), 3, GeneratorKind::Exterior));
    }
    let z_kind = if field.is_char_zero() {
        GeneratorKind::Polynomial
    } else {
        GeneratorKind::DividedPower
    };
    generators.push(Generator::new("z", 2, z_kind));
    for i in 1..=doubled {
        generators.push(Generator::new(format!("alpha{i}"), 1, GeneratorKind::Exterior));
    }
    for i in 1..=doubled {
        generators.push(Generator::new(format!("beta{i}"), 3, GeneratorKind::Exterior));
    }

    let mut differential: Vec<(String, Vec<Term>)> = Vec::new();
    for i in 1..n {
        let image = if f == n {
            vec![
                Term::generator(1, format!("p{i}")),
                Term::generator(-1, format!("p{n}")),
            ]
        } else if i <= f {
            vec![Term::generator(1, format!("p{i}"))]
        } else {
            Vec::new()
        };
        if !image.is_empty() {
            differential.push((format!("y{i}"), image));
        }
    }
    if f > 0 {
        let image = (1..=f).map(|i| Term::generator(1, format!("q{i}"))).collect();
        differential.push(("z".to_string(), image));
    }

    Cdga::new(generators, differential, *field)
}

/// Cohomology of the moduli space of semistable rank-two, odd-degree Real
/// bundles (genus at least 2).
///
/// Away from the exceptional all-Möbius type the answer is the full
/// classifying-space ring: an exterior algebra on `g` degree-1 and `g-1`
/// degree-3 generators, with series truncated at `min(N, 4g-3)`. For the
/// exceptional type (type I, every circle Möbius, which forces even genus)
/// only the Betti numbers through degree `g-2` are pinned down and the report
/// is partial.
pub fn moduli_cohomology(
    curve: &CurveTopology,
    bundle: &RealBundleType,
    field: &FieldSpec,
    truncation: usize,
) -> Result<CohomologyReport> {
    validate_moduli_input(curve, bundle)?;
    let g = curve.genus;
    let case = classify_gauge_case(curve, bundle)?;
    let dimension = 4 * g - 3;

    if case != GaugeCase::AllMoebius {
        let n = truncation.min(dimension as usize);
        let series = bg_series(g, GaugeCase::Generic, n)?;
        let presentation = bg_presentation(g, GaugeCase::Generic, field);
        return Ok(CohomologyReport {
            subject: Subject::ModuliSpace,
            case: Some(case),
            genus: g,
            degree: bundle.degree,
            series: Some(series),
            presentation: Some(presentation),
            partial_up_to: None,
            dimension: Some(dimension),
            flags: ReportFlags {
                is_exterior: TriState::Yes,
                ring_known: true,
                first_positive_invariant_betti_degree: None,
            },
            citations: vec![
                citations::BG_GENERIC.to_string(),
                citations::MODULI_AGREES_WITH_BG.to_string(),
            ],
        });
    }

    // Exceptional type: Betti numbers agree with the classifying space only
    // through degree g-2.
    let cutoff = betti_agreement_cutoff(g, bundle.degree)? as usize;
    let series = bg_series(g, GaugeCase::AllMoebius, cutoff)?;
    let (is_exterior, mut cites) = if g >= 4 {
        (
            TriState::No,
            vec![
                citations::MODULI_EXCEPTIONAL.to_string(),
                citations::MODULI_NOT_EXTERIOR.to_string(),
            ],
        )
    } else {
        (TriState::Unknown, vec![citations::MODULI_EXCEPTIONAL.to_string()])
    };
    cites.insert(0, citations::BG_ALL_MOEBIUS.to_string());
    Ok(CohomologyReport {
        subject: Subject::ModuliSpace,
        case: Some(case),
        genus: g,
        degree: bundle.degree,
        series: Some(series),
        presentation: None,
        partial_up_to: Some(cutoff as u32),
        dimension: Some(dimension),
        flags: ReportFlags {
            is_exterior,
            ring_known: false,
            first_positive_invariant_betti_degree: None,
        },
        citations: cites,
    })
}

/// Ring of 2-torsion invariants of the fixed-determinant moduli space.
///
/// Non-exceptional types give an exterior algebra on `g-1` degree-3
/// generators. For the exceptional type the report is partial: the moduli
/// partial series with the `(1+t)^g` factor divided out, valid through the
/// same cutoff.
pub fn fixed_determinant_invariants(
    curve: &CurveTopology,
    bundle: &RealBundleType,
    field: &FieldSpec,
    truncation: usize,
) -> Result<CohomologyReport> {
    validate_moduli_input(curve, bundle)?;
    let g = curve.genus;
    let case = classify_gauge_case(curve, bundle)?;
    let dimension = 3 * g - 3;

    if case != GaugeCase::AllMoebius {
        let n = truncation.min((4 * g - 3) as usize);
        let series = TruncatedSeries::one_plus_power(3, n).pow(g - 1);
        let presentation = GradedAlgebraPresentation::free(
            exterior_block("c", 3, g - 1),
            FreenessClaim::Free,
        );
        return Ok(CohomologyReport {
            subject: Subject::FixedDeterminantInvariants,
            case: Some(case),
            genus: g,
            degree: bundle.degree,
            series: Some(series),
            presentation: Some(presentation),
            partial_up_to: None,
            dimension: Some(dimension),
            flags: ReportFlags {
                is_exterior: TriState::Yes,
                ring_known: true,
                first_positive_invariant_betti_degree: None,
            },
            citations: vec![
                citations::FIXED_DET_GENERIC.to_string(),
                citations::COVERING_FACTORIZATION.to_string(),
            ],
        });
    }

    let moduli = moduli_cohomology(curve, bundle, field, truncation)?;
    let cutoff = moduli.partial_up_to.unwrap();
    let mut series = moduli.series.unwrap();
    for _ in 0..g {
        series = series.div_one_plus_power(1)?;
    }
    let first_positive = if g >= 4 { Some(2) } else { None };
    let is_exterior = if g >= 4 { TriState::No } else { TriState::Unknown };
    Ok(CohomologyReport {
        subject: Subject::FixedDeterminantInvariants,
        case: Some(case),
        genus: g,
        degree: bundle.degree,
        series: Some(series),
        presentation: None,
        partial_up_to: Some(cutoff),
        dimension: Some(dimension),
        flags: ReportFlags {
            is_exterior,
            ring_known: false,
            first_positive_invariant_betti_degree: first_positive,
        },
        citations: vec![
            citations::FIXED_DET_EXCEPTIONAL.to_string(),
            citations::COVERING_FACTORIZATION.to_string(),
        ],
    })
}

fn validate_moduli_input(curve: &CurveTopology, bundle: &RealBundleType) -> Result<()> {
    curve.validate()?;
    bundle.validate_for(curve)?;
    if bundle.rank != 2 {
        return Err(Error::RankNotTwo {
            operation: "moduli cohomology",
            rank: bundle.rank,
        });
    }
    if bundle.degree.rem_euclid(2) == 0 {
        return Err(Error::OddDegreeRequired {
            operation: "moduli cohomology",
            degree: bundle.degree,
        });
    }
    if curve.genus < 2 {
        return Err(Error::GenusTooSmall {
            operation: "moduli cohomology",
            genus: curve.genus,
            min: 2,
        });
    }
    Ok(())
}

/// Moduli-stack report for a rank-two Quaternionic bundle over a curve with
/// real points: the stack embeds in the gauge classifying space as a homotopy
/// equivalence, because no destabilizing quaternionic line sub-bundle can
/// exist. No Poincaré series is attached — the quaternionic gauge group's
/// cohomology is not computed here.
pub fn quaternionic_stack_report(
    curve: &CurveTopology,
    bundle: &QuaternionicBundleType,
) -> Result<CohomologyReport> {
    bundle.validate_for(curve)?;
    if bundle.rank != 2 {
        return Err(Error::RankNotTwo {
            operation: "quaternionic stack report",
            rank: bundle.rank,
        });
    }
    if !curve.has_real_points() {
        return Err(Error::RealPointsRequired {
            operation: "quaternionic stack report",
        });
    }
    Ok(CohomologyReport {
        subject: Subject::ModuliStack,
        case: None,
        genus: curve.genus,
        degree: bundle.degree,
        series: None,
        presentation: None,
        partial_up_to: None,
        dimension: None,
        flags: ReportFlags {
            is_exterior: TriState::Unknown,
            ring_known: false,
            first_positive_invariant_betti_degree: None,
        },
        citations: vec![citations::QUATERNIONIC_STACK.to_string()],
    })
}
