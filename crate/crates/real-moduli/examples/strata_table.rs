//! Harder–Narasimhan strata, orientability verdicts and contribution rules.
//!
//! ```sh
//! cargo run -p real-moduli --example strata_table
//! ```

use real_moduli::{
    enumerate_strata, normal_bundle_orientability, stratum_contribution, ContributionRule,
    CurveKind, CurveTopology, RealBundleType,
};

fn main() {
    let configurations = [
        // type II: every stratum contribution vanishes
        (2u32, CurveKind::TypeII, 1u32, "1", 1i64),
        // type I, every circle Möbius, odd degree vs even genus: orientable
        // normal bundles, so strata contribute through Gysin sequences
        (2, CurveKind::TypeI, 1, "1", 1),
        // parity condition: degree and genus both odd
        (3, CurveKind::TypeI, 2, "10", 1),
    ];

    for (genus, kind, circles, w1, degree) in configurations {
        let curve = CurveTopology {
            genus,
            kind,
            fixed_circles: circles,
        };
        let bundle = RealBundleType::new(2, degree, w1.parse().unwrap());
        let verdict = normal_bundle_orientability(&curve, &bundle).unwrap();
        println!(
            "genus {genus}, type {kind}, w1 = {w1}, degree {degree}: {:?} (condition {:?})",
            verdict.orientability, verdict.triggered_condition
        );
        println!("  d1 | codim | contribution");
        for stratum in enumerate_strata(genus, degree, 8) {
            let contribution = match stratum_contribution(&verdict, &stratum) {
                Ok(ContributionRule::Vanishing) => "vanishing".to_string(),
                Ok(ContributionRule::Gysin { shift }) => format!("Gysin shift {shift}"),
                Err(_) => "indeterminate".to_string(),
            };
            println!(
                "  {:>2} | {:>5} | {contribution}",
                stratum.scss_degree, stratum.real_codim
            );
        }
        println!(
            "  Betti agreement cutoff (degree where moduli and classifying space part ways): {}\n",
            real_moduli::betti_agreement_cutoff(genus, degree).unwrap()
        );
    }
}
