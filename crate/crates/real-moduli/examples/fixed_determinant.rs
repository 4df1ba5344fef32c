//! Invariants of fixed-determinant moduli spaces under the 2-torsion action,
//! and the covering-space factorization tying them to the full moduli space.
//!
//! ```sh
//! cargo run -p real-moduli --example fixed_determinant
//! ```

use real_moduli::{
    fixed_determinant_invariants, moduli_cohomology, CurveKind, CurveTopology, FieldSpec,
    RealBundleType, TruncatedSeries,
};

fn main() {
    let field = FieldSpec::rationals();

    for genus in [2u32, 3, 4] {
        let curve = CurveTopology {
            genus,
            kind: CurveKind::TypeII,
            fixed_circles: 1,
        };
        let bundle = RealBundleType::new(2, 1, "1".parse().unwrap());
        let fdi = fixed_determinant_invariants(&curve, &bundle, &field, 24).unwrap();
        println!("genus {genus}, generic type:");
        println!("  invariant ring = {}", fdi.presentation.as_ref().unwrap());
        println!("  P(t) = {}", fdi.series.as_ref().unwrap());

        // invariants × (an exterior algebra on g degree-1 classes) = moduli
        let moduli = moduli_cohomology(&curve, &bundle, &field, 24).unwrap();
        let torus = TruncatedSeries::one_plus_power(
            1,
            fdi.series.as_ref().unwrap().truncation(),
        )
        .pow(genus);
        let product = &torus * fdi.series.as_ref().unwrap();
        assert_eq!(&product, moduli.series.as_ref().unwrap());
        println!("  checked: invariants × (1+t)^{genus} = moduli series\n");
    }

    // the exceptional type: first positive-degree invariant Betti number
    // lands in degree 2, so the invariant ring cannot be exterior
    let curve = CurveTopology {
        genus: 4,
        kind: CurveKind::TypeI,
        fixed_circles: 1,
    };
    let bundle = RealBundleType::new(2, 1, "1".parse().unwrap());
    let fdi = fixed_determinant_invariants(&curve, &bundle, &field, 24).unwrap();
    println!(
        "exceptional genus 4: partial invariant Betti numbers {:?} (first positive entry in degree {:?})",
        fdi.series
            .as_ref()
            .unwrap()
            .coefficients()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>(),
        fdi.flags.first_positive_invariant_betti_degree.unwrap(),
    );
}
