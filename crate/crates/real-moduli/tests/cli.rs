//! End-to-end checks of the `real-moduli` binary: exit codes, document
//! shapes, and validation of every emitted JSON document against the
//! published schema in `schema/output.schema.json`.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_real-moduli"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is JSON: {e}\n{}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

// ---------------------------------------------------------------------------
// minimal JSON-schema checker (type/enum/$ref/oneOf/properties/items subset)
// ---------------------------------------------------------------------------

fn schema() -> Value {
    let text = include_str!("../schema/output.schema.json");
    serde_json::from_str(text).expect("schema file parses")
}

fn resolve<'a>(root: &'a Value, reference: &str) -> &'a Value {
    let name = reference
        .strip_prefix("#/$defs/")
        .unwrap_or_else(|| panic!("unsupported $ref {reference}"));
    &root["$defs"][name]
}

fn is_integer(v: &Value) -> bool {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            !s.contains('.') && !s.contains('e') && !s.contains('E')
        }
        _ => false,
    }
}

fn validate(root: &Value, schema: &Value, value: &Value, path: &str) -> Result<(), String> {
    if let Some(reference) = schema.get("$ref").and_then(Value::as_str) {
        return validate(root, resolve(root, reference), value, path);
    }
    if let Some(options) = schema.get("oneOf").and_then(Value::as_array) {
        let mut errors = Vec::new();
        for option in options {
            match validate(root, option, value, path) {
                Ok(()) => return Ok(()),
                Err(e) => errors.push(e),
            }
        }
        return Err(format!("{path}: no oneOf branch matched ({errors:?})"));
    }
    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            return Err(format!("{path}: {value} not in enum {allowed:?}"));
        }
        return Ok(());
    }
    if let Some(ty) = schema.get("type").and_then(Value::as_str) {
        let ok = match ty {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "boolean" => value.is_boolean(),
            "null" => value.is_null(),
            "integer" => is_integer(value),
            "number" => value.is_number(),
            other => return Err(format!("{path}: unsupported type {other}")),
        };
        if !ok {
            return Err(format!("{path}: expected {ty}, got {value}"));
        }
    }
    if let Some(obj) = value.as_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required {
                let key = key.as_str().unwrap();
                if !obj.contains_key(key) {
                    return Err(format!("{path}: missing required key {key}"));
                }
            }
        }
        if let Some(props) = schema.get("properties").and_then(Value::as_object) {
            for (key, sub) in obj {
                match props.get(key) {
                    Some(prop_schema) => {
                        validate(root, prop_schema, sub, &format!("{path}.{key}"))?
                    }
                    None => {
                        if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
                            return Err(format!("{path}: unexpected key {key}"));
                        }
                    }
                }
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), value.as_array()) {
        for (i, item) in arr.iter().enumerate() {
            validate(root, items, item, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

fn assert_valid(def: &str, value: &Value) {
    let root = schema();
    let sub = resolve(&root, &format!("#/$defs/{def}"));
    validate(&root, sub, value, def).unwrap_or_else(|e| panic!("schema violation: {e}"));
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

#[test]
fn moduli_json_report() {
    let out = run(&[
        "moduli",
        "--genus", "2",
        "--curve-type", "II",
        "--circles", "1",
        "--w1", "1",
        "--rank", "2",
        "--degree", "1",
        "--char", "0",
        "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_valid("report", &doc);
    assert_eq!(doc["series"]["coefficients"], serde_json::json!([1, 2, 1, 1, 2, 1]));
    assert_eq!(doc["subject"], "moduli_space");
    assert_eq!(doc["dimension"], 5);
}

#[test]
fn moduli_fixed_determinant_flag() {
    let out = run(&[
        "moduli",
        "--genus", "3",
        "--curve-type", "I",
        "--circles", "2",
        "--w1", "10",
        "--degree", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&[
        "moduli",
        "--genus", "3",
        "--curve-type", "I",
        "--circles", "2",
        "--w1", "10",
        "--degree", "1",
        "--fixed-determinant",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_valid("report", &doc);
    assert_eq!(doc["subject"], "fixed_determinant_invariants");
    // default truncation is 8
    assert_eq!(doc["series"]["coefficients"], serde_json::json!([1, 0, 0, 2, 0, 0, 1, 0, 0]));
}

#[test]
fn classify_counts_and_schema() {
    let out = run(&[
        "classify",
        "--genus", "2",
        "--curve-type", "I",
        "--circles", "3",
        "--rank", "2",
        "--degree", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_valid("classify_document", &doc);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 4);
    let patterns: Vec<&str> = doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["w1"].as_str().unwrap())
        .collect();
    assert_eq!(patterns, vec!["001", "010", "100", "111"]);
}

#[test]
fn classify_quaternionic() {
    let ok = run(&[
        "classify",
        "--genus", "3",
        "--curve-type", "I",
        "--circles", "2",
        "--degree", "0",
        "--quaternionic",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let doc = stdout_json(&ok);
    assert_valid("report", &doc);
    assert_eq!(doc["subject"], "moduli_stack");
    assert_eq!(doc["series"], Value::Null);

    let parity = run(&[
        "classify",
        "--genus", "3",
        "--curve-type", "I",
        "--circles", "2",
        "--degree", "1",
        "--quaternionic",
    ]);
    assert_eq!(parity.status.code(), Some(2));
    let err = stdout_json(&parity);
    assert_valid("error", &err);
    assert_eq!(err["error"]["code"], "quaternionic/parity");
}

#[test]
fn bg_rejects_characteristic_two() {
    let out = run(&[
        "bg",
        "--genus", "2",
        "--curve-type", "I",
        "--circles", "1",
        "--w1", "1",
        "--char", "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = stdout_json(&out);
    assert_valid("error", &err);
    assert_eq!(err["error"]["code"], "char/two");
    assert!(err["error"]["message"]
        .as_str()
        .unwrap()
        .contains("characteristic 2 unsupported"));
}

#[test]
fn bg_reports_default_degree_from_w1() {
    let out = run(&[
        "bg",
        "--genus", "2",
        "--curve-type", "II",
        "--circles", "1",
        "--w1", "1",
        "--truncate", "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_valid("report", &doc);
    assert_eq!(doc["degree"], 1);
    assert_eq!(doc["case"], "generic");
    assert_eq!(doc["series"]["coefficients"], serde_json::json!([1, 2, 1, 1, 2, 1]));
}

#[test]
fn strata_table_formats() {
    let args = [
        "strata",
        "--genus", "2",
        "--curve-type", "II",
        "--circles", "1",
        "--w1", "1",
        "--degree", "1",
        "--max-codim", "6",
    ];
    let json = run(&args);
    assert_eq!(json.status.code(), Some(0));
    let doc = stdout_json(&json);
    assert_valid("strata_document", &doc);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["scss_degree"], 1);
    assert_eq!(rows[0]["real_codim"], 2);
    assert_eq!(rows[0]["contribution"], "vanishing");

    let csv = run(&args.iter().chain(["--format", "csv"].iter()).copied().collect::<Vec<_>>());
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("d1,codim,contribution"));
    assert_eq!(text.trim().lines().count(), 4);

    let md = run(&args.iter().chain(["--format", "markdown"].iter()).copied().collect::<Vec<_>>());
    let text = String::from_utf8(md.stdout).unwrap();
    assert!(text.contains("| d1 | codim | contribution |"));
}

#[test]
fn verify_passes_and_validates() {
    let out = run(&[
        "verify",
        "--genus", "2",
        "--curve-type", "II",
        "--circles", "1",
        "--w1", "1",
        "--truncate", "6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_valid("verification", &doc);
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["closed_form_dims"], serde_json::json!([1, 2, 1, 1, 2, 1, 0]));
}

#[test]
fn atlas_genus_two_degree_one() {
    let out = run(&["atlas", "--genus", "2", "--degree", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_valid("atlas_document", &doc);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 8);

    // empty range is an empty document, exit 0
    let out = run(&["atlas", "--genus", "3..2", "--degree", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_valid("atlas_document", &doc);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 0);

    // guardrail
    let out = run(&["atlas", "--genus", "13", "--degree", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_valid("error", &stdout_json(&out));
}

#[test]
fn atlas_csv_and_markdown_carry_the_same_numbers() {
    let json = run(&["atlas", "--genus", "2", "--degree", "1"]);
    let csv = run(&["atlas", "--genus", "2", "--degree", "1", "--format", "csv"]);
    let md = run(&["atlas", "--genus", "2", "--degree", "1", "--format", "markdown"]);
    let csv = String::from_utf8(csv.stdout).unwrap();
    let md = String::from_utf8(md.stdout).unwrap();

    // every series emitted in the JSON document appears verbatim in both
    // text formats
    let doc = stdout_json(&json);
    for row in doc["rows"].as_array().unwrap() {
        for key in ["bg_series", "moduli_series", "fixed_determinant_series"] {
            if row[key].is_null() {
                continue;
            }
            let coeffs: Vec<String> = row[key]["coefficients"]
                .as_array()
                .unwrap()
                .iter()
                .map(|v| v.to_string())
                .collect();
            let cell = format!("[{}]", coeffs.join(", "));
            assert!(csv.contains(&cell), "csv misses {cell}");
            assert!(md.contains(&cell), "markdown misses {cell}");
        }
    }
    assert_eq!(
        csv.trim().lines().count(),
        doc["rows"].as_array().unwrap().len() + 1
    );
}

#[test]
fn validation_errors_exit_two() {
    // even degree on the moduli subcommand
    let out = run(&[
        "moduli",
        "--genus", "2",
        "--curve-type", "II",
        "--circles", "2",
        "--w1", "00",
        "--degree", "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = stdout_json(&out);
    assert_valid("error", &err);
    assert_eq!(err["error"]["code"], "degree/odd-required");

    // inconsistent curve
    let out = run(&[
        "classify",
        "--genus", "2",
        "--curve-type", "I",
        "--circles", "2",
        "--degree", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["error"]["code"], "curve/circles-parity");

    // unknown flag
    let out = run(&["strata", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["error"]["code"], "cli/usage");

    // malformed w1 pattern
    let out = run(&[
        "bg",
        "--genus", "2",
        "--curve-type", "II",
        "--circles", "1",
        "--w1", "1x0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["error"]["code"], "bundle/bad-w1");

    // characteristic must be prime
    let out = run(&[
        "bg",
        "--genus", "2",
        "--curve-type", "II",
        "--circles", "1",
        "--w1", "1",
        "--char", "9",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["error"]["code"], "char/not-prime");
}

#[test]
fn cdga_serialization_validates_against_schema() {
    // not a CLI surface, but the oracle's JSON interchange format is part of
    // the published schema
    let dec = real_moduli::SurfaceDecomposition {
        half_genus: 0,
        boundary_circles: 2,
        identity_glued: 2,
    };
    let cdga = real_moduli::build_koszul_tate(
        &dec,
        &[
            real_moduli::CircleKind::IdentityOrientable,
            real_moduli::CircleKind::IdentityOrientable,
        ],
        &real_moduli::FieldSpec::rationals(),
    )
    .unwrap();
    let value = serde_json::to_value(&cdga).unwrap();
    assert_valid("cdga", &value);
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for sub in ["classify", "strata", "bg", "moduli", "verify", "atlas"] {
        assert!(text.contains(sub), "help mentions {sub}");
    }
}
