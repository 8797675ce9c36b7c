mod common;

use common::*;
use serde_json::{json, Value};

/// Every command on every shipped spec, in JSON.
fn all_outputs() -> Vec<(String, Value)> {
    let runs: &[(&str, &[&str])] = &[
        ("line.gbpa", &["check"]),
        ("line.gbpa", &["basis"]),
        ("line.gbpa", &["table"]),
        ("line.gbpa", &["opposite"]),
        ("line.gbpa", &["proj", "2", "v"]),
        ("line.gbpa", &["inj", "3", "o"]),
        ("line.gbpa", &["simple", "2", "v"]),
        ("line.gbpa", &["rad-proj", "1", "o"]),
        ("projectives.gbpa", &["check"]),
        ("projectives.gbpa", &["proj", "1", "1"]),
        ("projectives.gbpa", &["cone", "2", "R"]),
        ("projectives.gbpa", &["dual-cone", "2", "R"]),
        ("projectives.gbpa", &["dual", "cone", "1", "R"]),
        ("injectives.gbpa", &["inj", "1", "1"]),
        ("injectives.gbpa", &["dual", "proj", "2", "2"]),
        ("cone.gbpa", &["cone", "x", "K4"]),
        ("cone.gbpa", &["dual-cone", "x", "K4"]),
        ("commuting.gbpa", &["check"]),
        ("commuting.gbpa", &["table"]),
        ("commuting.gbpa", &["proj", "1", "o"]),
        ("commuting.gbpa", &["inj", "4", "o"]),
        ("commuting.gbpa", &["cone", "2", "N"]),
        ("commuting.gbpa", &["dual", "simple", "2", "v"]),
        ("commuting.gbpa", &["opposite"]),
    ];
    runs.iter()
        .map(|(spec, args)| {
            let out = on(spec, &[args[0], "--json"], &args[1..]);
            (format!("{spec} {}", args.join(" ")), json_of(&out))
        })
        .collect()
}

#[test]
fn every_output_validates() {
    let v = Validator::new(schema());
    for (what, doc) in all_outputs() {
        let errors = v.errors(&doc);
        assert!(errors.is_empty(), "{what}: {errors:#?}");
    }
}

#[test]
fn rationals_are_strings_and_residues_are_integers() {
    for (what, doc) in all_outputs() {
        if doc.get("dimension_vector").is_none() {
            continue;
        }
        let arrows = doc["arrows"].as_array().unwrap();
        let gf = doc["field"] != "Q";
        for a in arrows {
            for x in a["matrix"].as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()) {
                assert_eq!(x.is_u64(), gf, "{what}: {x}");
                assert_eq!(x.is_string(), !gf, "{what}: {x}");
            }
        }
    }
}

#[test]
fn validator_rejects_malformed_documents() {
    let v = Validator::new(schema());
    let good = json_of(&on("projectives.gbpa", &["simple", "--json"], &["2", "1"]));
    assert!(v.errors(&good).is_empty());

    let mut extra = good.clone();
    extra["surprise"] = json!(1);
    assert!(!v.errors(&extra).is_empty());

    let mut missing = good.clone();
    missing.as_object_mut().unwrap().remove("dimension_vector");
    assert!(!v.errors(&missing).is_empty());

    let mut float = good.clone();
    float["vertices"][1]["actions"][0]["matrix"] = json!([[0.5]]);
    assert!(!v.errors(&float).is_empty());

    let mut bad_scalar = good.clone();
    bad_scalar["vertices"][1]["actions"][0]["matrix"] = json!([["1/"]]);
    assert!(!v.errors(&bad_scalar).is_empty());

    assert!(!v.errors(&json!({"command": "basis", "dim": -1, "basis": []})).is_empty());
    assert!(!v.errors(&json!({"error": {"kind": "Oops", "message": "", "line": null, "column": null}})).is_empty());
    assert!(v.errors(&json!({"error": {"kind": "UnknownVertex", "message": "", "line": null, "column": null}})).is_empty());
}
