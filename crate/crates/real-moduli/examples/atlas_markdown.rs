//! Generate a small atlas — one row per (curve, bundle type) — and print it
//! as JSON row counts plus a markdown digest.
//!
//! The `real-moduli` binary produces the same documents:
//!
//! ```sh
//! real-moduli atlas --genus 2..3 --degree 1 --format markdown
//! ```

use real_moduli::atlas::atlas;
use real_moduli::FieldSpec;

fn main() {
    let field = FieldSpec::rationals();
    let doc = atlas(2..=3, 1, &field, 8, 6).unwrap();

    println!(
        "atlas for genus 2..=3, degree 1: {} rows\n",
        doc.rows.len()
    );
    println!("| genus | kind | a | w1 | case | orientability | bg series |");
    println!("|---|---|---|---|---|---|---|");
    for row in &doc.rows {
        println!(
            "| {} | {} | {} | {} | {} | {:?} | {} |",
            row.genus,
            row.kind,
            row.circles,
            row.w1,
            row.case.map_or("-".to_string(), |c| c.to_string()),
            row.orientability.orientability,
            row.bg_series
                .as_ref()
                .map_or("-".to_string(), |s| s.to_string()),
        );
    }

    // every row round-trips through JSON losslessly
    let json = serde_json::to_string(&doc).unwrap();
    let back: real_moduli::atlas::AtlasDocument = serde_json::from_str(&json).unwrap();
    assert_eq!(back, doc);
    println!("\nJSON round-trip: ok ({} bytes)", json.len());
}
