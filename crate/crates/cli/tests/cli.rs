use std::fs;
use std::path::Path;

use serde_json::Value;

use conicinv_cli::json::ModelJson;
use conicinv_cli::{run, Outcome, EXIT_INVALID, EXIT_OK, EXIT_USAGE};
use conicinv_core::conjugacy::decide_equivalent;
use conicinv_core::invariants::{classify, fixed_curve_cb, fixed_curve_dj, real_locus};
use conicinv_core::models::{mk_dejonquieres, ConicBundleModel};

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("conicinv").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut v = vec!["--json"];
    v.extend_from_slice(args);
    let out = cli(&v);
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

fn model(path: &str) -> ConicBundleModel {
    let mj: ModelJson = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    mj.to_model().unwrap()
}

/// Compares with `tests/golden/<name>.txt`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &[&str], code: i32) {
    let out = cli(args);
    assert_eq!(out.code, code, "{}{}", out.stdout, out.stderr);
    let path = Path::new("tests/golden").join(format!("{name}.txt"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &out.stdout).unwrap();
    }
    let want = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(out.stdout, want, "golden {name}");
}

#[test]
fn golden_outputs() {
    golden("validate", &["validate", "tests/data/s56.json"], EXIT_OK);
    golden(
        "validate_invalid",
        &["validate", "tests/data/invalid.json"],
        EXIT_INVALID,
    );
    golden(
        "invariants",
        &["invariants", "tests/data/s56.json", "--samples", "200", "--seed", "3"],
        EXIT_OK,
    );
    golden("classify_dj", &["classify", "tests/data/dj.json"], EXIT_OK);
    golden(
        "compare_sign",
        &["compare", "tests/data/s56.json", "tests/data/s57.json"],
        EXIT_OK,
    );
    golden(
        "compare_scaled",
        &["compare", "tests/data/s56.json", "tests/data/s56_scaled.json"],
        EXIT_OK,
    );
    golden("dejonquieres", &["dejonquieres", "--f", "t^6-t"], EXIT_OK);
    golden(
        "cremona",
        &[
            "cremona",
            "--apply",
            "1,2,3",
            "--compose",
            "cremona",
            "--base-points",
            "--check-involution",
        ],
        EXIT_OK,
    );
    golden(
        "family",
        &[
            "family",
            "--f",
            "(t^2-1)*(t^2-4)*(t^2-9)",
            "--pairs",
            "5,6;5,7;13/4,7/2",
        ],
        EXIT_OK,
    );
}

#[test]
fn compare_matches_library() {
    for (a, b) in [("s56", "s57"), ("s56", "s56_scaled"), ("s57", "s56")] {
        let (pa, pb) = (format!("tests/data/{a}.json"), format!("tests/data/{b}.json"));
        let v = json(&["compare", &pa, &pb]);
        let d = decide_equivalent(&model(&pa), &model(&pb)).unwrap();
        assert_eq!(v["decision"]["verdict"], d.verdict.as_str());
        assert_eq!(
            v["decision"]["failed_condition"].as_str(),
            d.failed_condition.map(|c| c.as_str())
        );
        if let Some(w) = d.witnesses {
            assert_eq!(v["decision"]["witnesses"]["lambda"], w.lambda.to_string());
            assert_eq!(v["decision"]["witnesses"]["mu"], w.mu.to_string());
        }
    }
}

#[test]
fn invariants_match_library() {
    let m = model("tests/data/s56.json");
    let v = json(&["invariants", "tests/data/s56.json"]);
    let curve = fixed_curve_cb(&m);
    assert_eq!(v["fixed_curve"]["branch"], curve.branch.to_string());
    assert_eq!(v["fixed_curve"]["genus"], curve.genus);
    assert_eq!(v["fixed_curve"]["real_components"], curve.real_components);
    assert_eq!(
        v["real_locus"]["arcs"].as_array().unwrap().len(),
        real_locus(&m).arcs().len()
    );
    assert_eq!(v["class"], classify(&m).unwrap().to_string());
    assert!(v.get("self_check").is_none());
}

#[test]
fn classify_and_dejonquieres_match_library() {
    let v = json(&["classify", "tests/data/dj.json"]);
    assert_eq!(v["class"], classify(&model("tests/data/dj.json")).unwrap().to_string());
    let v = json(&["dejonquieres", "--f", "t^8 - 3*t^2 + 1"]);
    let c = fixed_curve_dj(&mk_dejonquieres("t^8 - 3*t^2 + 1".parse().unwrap()).unwrap());
    assert_eq!(v["d"], 4);
    assert_eq!(v["fixed_curve"]["genus"], c.genus);
    assert_eq!(v["fixed_curve"]["real_components"], c.real_components);
}

#[test]
fn flags_and_file_agree() {
    let from_file = cli(&["validate", "tests/data/s56.json"]);
    let from_flags = cli(&[
        "validate",
        "--A",
        "1",
        "--C",
        "(t^2-1)*(t^2-4)*(t^2-9)",
        "--H",
        "-(t-5)*(t-6)",
    ]);
    assert_eq!(from_file, from_flags);
}

#[test]
fn exit_codes() {
    assert_eq!(
        cli(&["validate", "--A", "1", "--C", "t^^2", "--H", "-1"]).code,
        EXIT_USAGE
    );
    assert_eq!(cli(&["validate", "--A", "1"]).code, EXIT_USAGE);
    assert_eq!(cli(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(
        cli(&["compare", "tests/data/missing.json", "tests/data/s56.json"]).code,
        EXIT_USAGE
    );
    assert_eq!(cli(&["classify", "tests/data/invalid.json"]).code, EXIT_INVALID);
    assert_eq!(cli(&["dejonquieres", "--f", "t^3-t"]).code, EXIT_INVALID);
    assert_eq!(cli(&["family", "--f", "t^4-1", "--pairs", "2,3"]).code, EXIT_INVALID);
    assert_eq!(cli(&["cremona", "--apply", "1,0,0"]).code, EXIT_INVALID);
    assert_eq!(cli(&["--help"]).code, EXIT_OK);
    let mixed = json(&["compare", "tests/data/s56.json", "tests/data/dj.json"]);
    assert_eq!(mixed["decision"]["verdict"], "not_equivalent");
    assert_eq!(mixed["decision"]["failed_condition"], "real_interval");
}

#[test]
fn self_check_reports_agreement() {
    let v = json(&["invariants", "tests/data/s57.json", "--samples", "500", "--seed", "11"]);
    let s = &v["self_check"];
    assert_eq!(s["samples"], 500);
    assert_eq!(
        s["agree"].as_u64().unwrap() + s["skipped"].as_u64().unwrap(),
        500,
        "{s}"
    );
}
