//! Cohomology rings of moduli spaces of semistable rank-two, odd-degree Real
//! bundles, including the one exceptional type where only a partial answer
//! exists.
//!
//! ```sh
//! cargo run -p real-moduli --example moduli_rings
//! ```

use real_moduli::{moduli_cohomology, CurveKind, CurveTopology, FieldSpec, RealBundleType};

fn main() {
    let field = FieldSpec::rationals();

    // Away from the exceptional type the ring does not depend on the real
    // structure at all: exterior on g degree-1 and g-1 degree-3 generators.
    for (genus, kind, circles, w1) in [
        (2u32, CurveKind::TypeII, 1u32, "1"),
        (3, CurveKind::TypeI, 2, "10"),
        (5, CurveKind::TypeII, 3, "111"),
    ] {
        let curve = CurveTopology {
            genus,
            kind,
            fixed_circles: circles,
        };
        let bundle = RealBundleType::new(2, 1, w1.parse().unwrap());
        let report = moduli_cohomology(&curve, &bundle, &field, 24).unwrap();
        println!(
            "genus {genus}, type {kind}, w1 = {w1}: dim {} moduli space",
            report.dimension.unwrap()
        );
        println!("  H* = {}", report.presentation.as_ref().unwrap());
        println!("  P(t) = {}\n", report.series.as_ref().unwrap());
    }

    // The exceptional type: type I of even genus with a Möbius restriction on
    // every fixed circle. Only Betti numbers through degree g-2 are pinned
    // down, and for g >= 4 they already rule out an exterior algebra.
    for genus in [2u32, 4, 6] {
        let curve = CurveTopology {
            genus,
            kind: CurveKind::TypeI,
            fixed_circles: 1,
        };
        let bundle = RealBundleType::new(2, 1, "1".parse().unwrap());
        let report = moduli_cohomology(&curve, &bundle, &field, 24).unwrap();
        println!(
            "exceptional, genus {genus}: Betti numbers through degree {} = {:?} (exterior? {:?})",
            report.partial_up_to.unwrap(),
            report
                .series
                .as_ref()
                .unwrap()
                .coefficients()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>(),
            report.flags.is_exterior,
        );
    }
}
