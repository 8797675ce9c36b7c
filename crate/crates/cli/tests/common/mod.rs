#![allow(dead_code)]

use std::path::PathBuf;

use gbpa_cli::{run_with_env, Outcome};
use regex::Regex;
use serde_json::Value;

pub fn spec_path(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "specs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

pub fn gbpa(args: &[&str]) -> Outcome {
    let mut full = vec!["gbpa"];
    full.extend_from_slice(args);
    run_with_env(full, None)
}

/// Runs a command on one of the shipped specs: `on("line.gbpa", &["proj"], &["1", "1"])`.
pub fn on(spec: &str, before: &[&str], after: &[&str]) -> Outcome {
    let path = spec_path(spec);
    let mut args: Vec<&str> = before.to_vec();
    args.push(&path);
    args.extend_from_slice(after);
    gbpa(&args)
}

pub fn json_of(out: &Outcome) -> Value {
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("stdout is JSON")
}

pub fn schema() -> Value {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "schema", "output.schema.json"].iter().collect();
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

/// Validator for the JSON Schema keywords the published schema uses. Any other
/// keyword is a test failure rather than being silently ignored.
pub struct Validator {
    root: Value,
}

const ANNOTATIONS: &[&str] = &["$schema", "$id", "$defs", "title", "description"];

impl Validator {
    pub fn new(root: Value) -> Self {
        Validator { root }
    }

    pub fn errors(&self, v: &Value) -> Vec<String> {
        let mut out = Vec::new();
        self.check(&self.root, v, "$", &mut out);
        out
    }

    fn resolve<'a>(&'a self, r: &str) -> &'a Value {
        let ptr = r.strip_prefix('#').expect("only local references");
        self.root.pointer(ptr).unwrap_or_else(|| panic!("dangling reference {r}"))
    }

    fn check(&self, s: &Value, v: &Value, at: &str, out: &mut Vec<String>) {
        let obj = s.as_object().expect("schemas are objects");
        for (k, kv) in obj {
            match k.as_str() {
                "$ref" => self.check(self.resolve(kv.as_str().unwrap()), v, at, out),
                "oneOf" => {
                    let passing = kv
                        .as_array()
                        .unwrap()
                        .iter()
                        .filter(|sub| {
                            let mut e = Vec::new();
                            self.check(sub, v, at, &mut e);
                            e.is_empty()
                        })
                        .count();
                    if passing != 1 {
                        out.push(format!("{at}: {passing} oneOf branches match"));
                    }
                }
                "type" => {
                    let types: Vec<&str> = match kv {
                        Value::String(t) => vec![t.as_str()],
                        Value::Array(ts) => ts.iter().map(|t| t.as_str().unwrap()).collect(),
                        _ => panic!("bad type keyword"),
                    };
                    if !types.iter().any(|t| has_type(v, t)) {
                        out.push(format!("{at}: expected {types:?}, got {v}"));
                    }
                }
                "const" => {
                    if v != kv {
                        out.push(format!("{at}: expected {kv}, got {v}"));
                    }
                }
                "enum" => {
                    if !kv.as_array().unwrap().contains(v) {
                        out.push(format!("{at}: {v} not in {kv}"));
                    }
                }
                "minimum" => {
                    if let Some(n) = v.as_f64() {
                        if n < kv.as_f64().unwrap() {
                            out.push(format!("{at}: {n} below minimum {kv}"));
                        }
                    }
                }
                "pattern" => {
                    if let Some(st) = v.as_str() {
                        if !Regex::new(kv.as_str().unwrap()).unwrap().is_match(st) {
                            out.push(format!("{at}: {st:?} does not match {kv}"));
                        }
                    }
                }
                "required" => {
                    if let Some(o) = v.as_object() {
                        for r in kv.as_array().unwrap() {
                            if !o.contains_key(r.as_str().unwrap()) {
                                out.push(format!("{at}: missing {r}"));
                            }
                        }
                    }
                }
                "properties" => {
                    if let Some(o) = v.as_object() {
                        for (p, ps) in kv.as_object().unwrap() {
                            if let Some(pv) = o.get(p) {
                                self.check(ps, pv, &format!("{at}.{p}"), out);
                            }
                        }
                    }
                }
                "additionalProperties" => {
                    assert_eq!(kv, &Value::Bool(false), "only `additionalProperties: false` is supported");
                    if let Some(o) = v.as_object() {
                        let known = obj.get("properties").and_then(Value::as_object);
                        for p in o.keys() {
                            if !known.is_some_and(|k| k.contains_key(p)) {
                                out.push(format!("{at}: unexpected property {p}"));
                            }
                        }
                    }
                }
                "items" => {
                    if let Some(a) = v.as_array() {
                        for (i, x) in a.iter().enumerate() {
                            self.check(kv, x, &format!("{at}[{i}]"), out);
                        }
                    }
                }
                other if ANNOTATIONS.contains(&other) => {}
                other => panic!("schema keyword `{other}` is not supported by the test validator"),
            }
        }
    }
}

fn has_type(v: &Value, t: &str) -> bool {
    match t {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "integer" => v.is_i64() || v.is_u64(),
        "number" => v.is_number(),
        _ => panic!("unknown type {t}"),
    }
}
