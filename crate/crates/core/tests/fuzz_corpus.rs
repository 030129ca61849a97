//! Replays the checked-in fuzz seeds through the parser entry points.

use std::fs;
use std::path::PathBuf;

use insep_core::scenario::{parse_curve, parse_local_request, parse_vector_field, resolve_local, run_scenario, Scenario};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, Vec<u8>)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn scenario_seeds_parse_and_run() {
    for (name, bytes) in seeds("scenario_json") {
        let mut s = Scenario::parse(&bytes).unwrap_or_else(|e| panic!("{name}: {e}"));
        s.options.zeta = false;
        run_scenario(&s).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn curve_seeds_parse() {
    for (name, bytes) in seeds("curve_json") {
        let (&k, json) = bytes.split_first().unwrap();
        parse_curve(json, u32::from(k % 8)).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn vector_field_seeds_parse() {
    let curves = [
        r#"{"type":"p1"}"#,
        r#"{"type":"artin_schreier","h":3}"#,
        r#"{"type":"elliptic_deuring","alpha":2}"#,
        r#"{"type":"hyperelliptic","branch":[0],"branch_at_infinity":true,"g":[1,0,1]}"#,
    ];
    for (name, bytes) in seeds("vector_field_json") {
        let (&sel, json) = bytes.split_first().unwrap();
        let curve = parse_curve(curves[usize::from(sel) % curves.len()].as_bytes(), 3).unwrap();
        let v = parse_vector_field(json, &curve).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(v.divisor().degree(), 2 - 2 * curve.genus() as i64, "{name}");
    }
}

#[test]
fn resolve_local_seeds_parse() {
    for (name, bytes) in seeds("resolve_local_json") {
        let req = parse_local_request(&bytes).unwrap_or_else(|e| panic!("{name}: {e}"));
        resolve_local(&req, None).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
