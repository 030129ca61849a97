use std::io::Write;
use std::process::{Command, Output, Stdio};

fn insep(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_insep"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn scenario(name: &str) -> String {
    format!("{}/../../scenarios/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn analyze_prints_the_bmy_line() {
    let out = insep(&["analyze", &scenario("bmy")], None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("BMY violated: c1^2 = 14 > 9 chi = 9"), "{text}");
}

#[test]
fn invalid_input_exits_2() {
    for bad in ["", "{", r#"{"characteristic":3,"base_field":1}"#, r#"{"characteristic":2,"base_field":1,
        "curve_C":{"type":"p1"},"curve_F":{"type":"p1"},"vf_C":{"catalog":"as_ddx"},"vf_F":{"catalog":"delta1"}}"#]
    {
        let out = insep(&["analyze", "-"], Some(bad));
        assert_eq!(out.status.code(), Some(2), "{bad}");
        assert!(!out.stderr.is_empty());
    }
    let out = insep(&["analyze", "/nonexistent/scenario.json"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = insep(&["resolve-local", "--a", "3", "--b", "2"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mixed_closure_types_are_rejected() {
    let s = r#"{"characteristic":2,"base_field":1,"curve_C":{"type":"p1"},"curve_F":{"type":"p1"},
        "vf_C":{"catalog":"delta1"},"vf_F":{"base":"ddx","scale_num":[0,1,1]}}"#;
    let out = insep(&["analyze", "-"], Some(s));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("multiplicative"));
}

#[test]
fn unclassified_points_exit_3_in_analyze_and_zeta() {
    for cmd in ["analyze", "zeta"] {
        let out = insep(&[cmd, &scenario("bmy_genus4")], None);
        assert_eq!(out.status.code(), Some(3), "{cmd}");
    }
    let out = insep(&["resolve-local", "--a", "6", "--b", "4", "--configuration", "poles"], None);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn json_output_is_byte_identical() {
    for name in ["minustwo_d4", "vf_family_rational_2"] {
        let a = insep(&["analyze", &scenario(name), "--json"], None);
        let b = insep(&["analyze", &scenario(name), "--json"], None);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{name}");
        let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(v["report"]["chi"]["status"], "exact");
        assert!(v["report"]["chi"]["by"].is_string());
    }
}

#[test]
fn zeta_reports_artin_tate() {
    let out = insep(&["zeta", &scenario("minustwo_d8"), "--json"], None);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["zeta"]["p2_product"], serde_json::json!([1, -4, 4]));
    assert_eq!(v["artin_tate"]["two_power"], 2);
    // a budget too small for the genus-2 curve
    let out = insep(&["zeta", &scenario("minustwo_d8"), "--budget", "1"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resolve_local_json_graph() {
    let out = insep(&["resolve-local", "-", "--json"], Some(r#"{"a":4,"b":4,"configuration":"poles"}"#));
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["type"], "(19)_0");
    let selfint: Vec<i64> =
        v["graph"]["vertices"].as_array().unwrap().iter().map(|x| x["selfint"].as_i64().unwrap()).collect();
    assert_eq!(selfint.iter().filter(|&&s| s == -3).count(), 1);
    assert_eq!(selfint.iter().filter(|&&s| s == -2).count(), 5);
    assert_eq!(v["graph"]["edges"].as_array().unwrap().len(), 5);
}

#[test]
fn catalog_and_suite() {
    let out = insep(&["catalog", "--json"], None);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.as_array().unwrap().len() >= 10);
    let out = insep(&["paper-suite"], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("23/23 scenarios pass"));
}
