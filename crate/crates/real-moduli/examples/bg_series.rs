//! The three closed-form answers for the cohomology of the classifying space
//! of a rank-two real gauge group.
//!
//! ```sh
//! cargo run -p real-moduli --example bg_series
//! ```

use real_moduli::{bg_cohomology, CurveKind, CurveTopology, FieldSpec, RealBundleType};

fn main() {
    let field = FieldSpec::rationals();
    let genus = 2;

    let cases = [
        ("generic (mixed circle data)", CurveKind::TypeII, 1u32, "1"),
        ("all circles Möbius (type I only)", CurveKind::TypeI, 1, "1"),
        ("all circles orientable", CurveKind::TypeI, 3, "000"),
    ];

    for (label, kind, circles, w1) in cases {
        let curve = CurveTopology {
            genus,
            kind,
            fixed_circles: circles,
        };
        let degree = i64::from(w1.matches('1').count() as u32 % 2);
        let bundle = RealBundleType::new(2, degree, w1.parse().unwrap());
        let report = bg_cohomology(&curve, &bundle, &field, 10).unwrap();
        println!("{label}:");
        println!("  case        {}", report.case.unwrap());
        println!("  P(t)      = {}", report.series.as_ref().unwrap());
        println!("  ring      = {}", report.presentation.as_ref().unwrap());
        println!(
            "  exterior? {:?}   ring known? {}",
            report.flags.is_exterior, report.flags.ring_known
        );
        println!();
    }

    println!("full JSON of the generic report:");
    let curve = CurveTopology {
        genus,
        kind: CurveKind::TypeII,
        fixed_circles: 1,
    };
    let bundle = RealBundleType::new(2, 1, "1".parse().unwrap());
    let report = bg_cohomology(&curve, &bundle, &field, 5).unwrap();
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}
