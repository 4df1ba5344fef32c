//! Topological classification and cohomology of moduli of rank-two Real
//! vector bundles over real curves.
//!
//! A real curve is a closed genus-`g` surface with an anti-holomorphic
//! involution; a Real bundle is a complex bundle with a compatible
//! conjugate-linear lift. This crate computes, from the discrete invariants
//! of such a configuration (genus, curve type, fixed circles, rank, degree,
//! per-circle Stiefel–Whitney data):
//!
//! * the classification of Real and Quaternionic bundle types
//!   ([`topology`]),
//! * Harder–Narasimhan stratum codimensions, orientability verdicts for the
//!   stratum normal bundles, and the resulting vanishing/Gysin contribution
//!   rules ([`stratification`]),
//! * closed-form Poincaré series and ring presentations for the gauge
//!   classifying space, the odd-degree moduli space, and the 2-torsion
//!   invariants of the fixed-determinant moduli space ([`gauge`]),
//! * and an independent Koszul–Tate oracle that re-derives every
//!   classifying-space series by exact graded linear algebra ([`oracle`]).
//!
//! The `examples/` directory has one runnable example per capability; the
//! `real-moduli` binary exposes the same computations as subcommands
//! (`classify`, `strata`, `bg`, `moduli`, `verify`, `atlas`).
//!
//! Everything is exact: series coefficients are arbitrary-precision
//! integers, matrix ranks come from fraction-free or residue elimination,
//! and all results are deterministic across runs and thread counts.

pub mod atlas;
pub mod cli;
pub mod error;
pub mod gauge;
pub mod matrix;
pub mod oracle;
pub mod presentation;
pub mod series;
pub mod stratification;
pub mod topology;

pub use error::{Error, Result};
pub use gauge::{
    bg_cohomology, bg_series, build_koszul_tate, fixed_determinant_invariants, moduli_cohomology,
    quaternionic_stack_report, CohomologyReport, FieldSpec, ReportFlags, Subject, TriState,
};
pub use oracle::{verify_bg, Cdga, GradedDims, Monomial, Term, VerificationResult};
pub use presentation::{
    loop_group_presentation, FreenessClaim, Generator, GeneratorKind, GradedAlgebraPresentation,
    Relation,
};
pub use series::{presentation_poincare, TruncatedSeries};
pub use stratification::{
    betti_agreement_cutoff, enumerate_strata, normal_bundle_orientability, stratum_contribution,
    ContributionRule, Orientability, OrientabilityVerdict, Stratum, TriggeredCondition,
};
pub use topology::{
    circle_kinds, classify_gauge_case, decompose_surface, enumerate_real_bundles,
    validate_quaternionic, CircleKind, CurveKind, CurveTopology, GaugeCase,
    QuaternionicBundleType, RealBundleType, SurfaceDecomposition, W1Pattern,
};
