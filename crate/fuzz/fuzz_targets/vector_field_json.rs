#![no_main]

use insep_core::scenario::{parse_curve, parse_vector_field};
use libfuzzer_sys::fuzz_target;

const CURVES: [&str; 4] = [
    r#"{"type":"p1"}"#,
    r#"{"type":"artin_schreier","h":3}"#,
    r#"{"type":"elliptic_deuring","alpha":2}"#,
    r#"{"type":"hyperelliptic","branch":[0],"branch_at_infinity":true,"g":[1,0,1]}"#,
];

fuzz_target!(|data: &[u8]| {
    let Some((&sel, json)) = data.split_first() else { return };
    let curve = parse_curve(CURVES[usize::from(sel) % CURVES.len()].as_bytes(), 3).expect("seed curve");
    if let Ok(v) = parse_vector_field(json, &curve) {
        assert_eq!(v.divisor().degree(), 2 - 2 * curve.genus() as i64);
    }
});
