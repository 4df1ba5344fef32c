//! Classify Real and Quaternionic bundle types over real curves.
//!
//! ```sh
//! cargo run -p real-moduli --example classify
//! ```

use real_moduli::{
    enumerate_real_bundles, validate_quaternionic, CurveKind, CurveTopology,
};

fn main() {
    // A genus-2 curve whose real locus has three circles splitting the
    // complex points into two halves (type I).
    let curve = CurveTopology {
        genus: 2,
        kind: CurveKind::TypeI,
        fixed_circles: 3,
    };
    curve.validate().expect("valid curve");

    println!("rank-2, degree-1 Real bundles over genus 2, type I, 3 circles:");
    for bundle in enumerate_real_bundles(&curve, 2, 1).unwrap() {
        println!("  w1 = {}  (Möbius circles: {})", bundle.w1, bundle.w1.weight());
    }
    println!("count is 2^(a-1) = 4\n");

    // Curves without real points only carry even-degree Real bundles.
    let type0 = CurveTopology {
        genus: 3,
        kind: CurveKind::Type0,
        fixed_circles: 0,
    };
    println!(
        "degree-1 bundles over a curve without real points: {:?}",
        enumerate_real_bundles(&type0, 2, 1).unwrap()
    );
    println!(
        "degree-2 bundles over the same curve: {} type(s)\n",
        enumerate_real_bundles(&type0, 2, 2).unwrap().len()
    );

    // Quaternionic types: degree must match rank*(genus-1) mod 2, and odd
    // rank needs an empty real locus.
    let curve = CurveTopology {
        genus: 3,
        kind: CurveKind::TypeI,
        fixed_circles: 2,
    };
    for (rank, degree) in [(2, 0), (2, 1), (1, 0)] {
        match validate_quaternionic(&curve, rank, degree) {
            Ok(()) => println!("quaternionic rank {rank}, degree {degree}: ok"),
            Err(e) => println!("quaternionic rank {rank}, degree {degree}: {e}"),
        }
    }
}
