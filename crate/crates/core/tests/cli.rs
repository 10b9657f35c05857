use serde_json::Value;
use symsig::cli::{run_with, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("symsig").chain(args.iter().copied()).map(String::from).collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out, err) = run(&full);
    assert_eq!(code, EXIT_OK, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn identical_arguments_give_identical_bytes() {
    let cases: &[&[&str]] = &[
        &["--format", "json", "signature", "--group", "E7", "--qmax", "200"],
        &["--format", "csv", "sympow", "--group", "D:5", "--qmax", "12"],
        &["chartable", "--group", "E8"],
        &["--format", "json", "bundles", "tq", "--q", "3"],
        &["--format", "json", "verify", "--singularity", "D:3"],
    ];
    for args in cases {
        assert_eq!(run(args), run(args), "{args:?}");
    }
}

#[test]
fn signature_json_schema() {
    let doc = json(&["signature", "--group", "D:2", "--qmax", "3"]);
    assert_eq!(doc["meta"]["command"], "signature");
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["ratio"], "1");
    assert_eq!(rows[1]["ratio"], "1/3");
    for key in ["target", "final_ratio", "abs_error"] {
        assert!(doc["summary"][key].is_string(), "{key}");
    }
    assert_eq!(doc["summary"]["target"], "1/8");
}

#[test]
fn every_module_reports_its_own_target() {
    let doc = json(&["signature", "--group", "E6", "--module", "all", "--qmax", "50"]);
    let s = doc["summary"].as_array().expect("one summary per module");
    let targets: Vec<&str> = s.iter().map(|m| m["target"].as_str().unwrap()).collect();
    assert_eq!(targets, ["1/24", "1/12", "1/8", "1/12", "1/12", "1/24", "1/24"]);
}

#[test]
fn sympow_methods_cross_check() {
    let doc = json(&["sympow", "--group", "E8", "--qmax", "20", "--check-methods"]);
    assert_eq!(doc["summary"]["methods_agree"], true);
}

#[test]
fn lattice_routes_agree_in_output() {
    let doc = json(&["lattice", "--n", "7", "--a", "3", "--t", "2", "--qmax", "40"]);
    assert!(doc["rows"].as_array().unwrap().iter().all(|r| r["agree"] == true));
    assert_eq!(doc["summary"]["index"], 7);
}

#[test]
fn bundle_commands() {
    let tq = json(&["bundles", "tq", "--q", "2"]);
    let parts = tq["rows"].as_array().unwrap();
    assert_eq!(parts.len(), 4);
    assert!(parts.iter().all(|p| p["rank"] == 1 && p["degree"] == -9 && p["multiplicity"] == 1));

    let frk = json(&["bundles", "frk", "--q", "3"]);
    assert_eq!(frk["rows"][0]["upper"], 0);

    let (code, _, err) = run(&["bundles", "frk", "--q", "2", "--curve", "0,0"]);
    assert_eq!(code, EXIT_USAGE, "{err}");
}

#[test]
fn csv_header_then_rows() {
    let (code, out, _) = run(&["--format", "csv", "lattice", "--n", "5", "--a", "2", "--qmax", "4"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "q,count,count_lattice,character,agree");
    assert_eq!(lines[4], "3,1,1,1,true");
    assert_eq!(lines.len(), 6);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["sympow", "--group", "Z:3"]).0, EXIT_USAGE);
    assert_eq!(run(&["signature", "--group", "E6", "--module", "9"]).0, EXIT_USAGE);
    assert_eq!(run(&["verify"]).0, EXIT_USAGE);
    assert_eq!(run(&["bundles", "sym", "--input", "syz", "--q", "3"]).0, EXIT_FAILURE);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}
