use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("quadlab").chain(args.iter().copied());
    let code = quadlab::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn identical_config_gives_identical_bytes() {
    for args in [
        &["moment", "--g", "1", "--workers", "1"][..],
        &["moment", "--g", "1", "--workers", "4"][..],
        &["predict", "--g", "3"][..],
        &["lvalue", "--d", "3,2,0,0,1,4,1"][..],
    ] {
        assert_eq!(run(args).1, run(args).1, "{args:?}");
    }
    // worker count is config, the result is not affected by it
    let a = json(&["moment", "--g", "1", "--workers", "1"]);
    let b = json(&["moment", "--g", "1", "--workers", "3"]);
    assert_eq!(a["result"], b["result"]);
}

#[test]
fn envelope_has_no_timing_unless_asked() {
    let v = json(&["constants"]);
    assert_eq!(v["tool"], "quadlab");
    assert!(v.get("elapsed_ms").is_none());
    let v = json(&["constants", "--timing"]);
    assert!(v["elapsed_ms"].is_number());
}

#[test]
fn predict_exposes_all_four_terms() {
    let v = json(&["predict", "--g", "2"]);
    for key in ["t1", "t2", "t3", "t4", "total"] {
        assert!(v["result"][key].is_number(), "{key}");
    }
    let plus = v["result"]["t1"].as_f64().unwrap();
    let minus = json(&["predict", "--g", "2", "--sign-toggle", "-1"])["result"]["t1"].as_f64().unwrap();
    assert!(minus > plus);
}

#[test]
fn lvalue_reports_exact_central_value() {
    let v = json(&["lvalue", "--d", "2,1,0,0,1"]);
    let r = &v["result"];
    assert_eq!(r["coeffs"], serde_json::json!([1, 0, 4, -5]));
    assert_eq!(r["completed"], serde_json::json!([1, 1, 5]));
    assert_eq!(r["functional_equation"], true);
    assert_eq!(r["methods_agree"], true);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", "--target", "poisson", "--max-fdeg", "3"]).0, 0);
    assert_eq!(run(&["verify", "--target", "appendix,parity"]).0, 0);
    assert_eq!(run(&["verify", "--target", "nonsense"]).0, 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["moment", "--q", "7", "--g", "0"]).0, 2);
    assert_eq!(run(&["lvalue", "--d", "0,0,1"]).0, 2);
    assert_eq!(run(&["moment", "--g", "4", "--method", "charsum", "--max-cost", "1e6"]).0, 2);
    assert_eq!(run(&[]).0, 2);
}

#[test]
fn csv_output() {
    let (code, out, _) = run(&["--format", "csv", "moment", "--g", "0"]);
    assert_eq!(code, 0);
    assert!(out.lines().count() >= 2);
}
