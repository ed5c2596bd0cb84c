use std::process::{Command, Output};

use serde_json::Value;

fn koszul(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_koszul")).args(args).env_remove("KOSZUL_SEED").output().expect("spawn koszul")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

const LINEAR: &str = r#"{"P": {"n": 2, "columns": [["z1"], ["z2"]]}, "phi": ["z1^2 + z2^2"]}"#;
const SQUARES: &str = r#"{"P": {"n": 2, "columns": [["z1^2"], ["z2^2"]]}, "phi": ["z1*z2"], "cap": 6}"#;
const RUNNING: &str = r#"{"f": {"n": 2, "columns": [["z1", "0"], ["z2", "z1"], ["0", "z2"]]}, "phi": ["z1^2", "0"], "psi": ["z2^2", "-z1*z2", "z1^2"]}"#;

#[test]
fn divide_linear_ideal() {
    let out = koszul(&["divide", LINEAR]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = report(&out);
    assert_eq!(v["status"], "solved");
    assert_eq!(v["report"]["boundUsed"], 2);
    assert_eq!(v["report"]["verified"], true);
    assert_eq!(v["input"]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(v["tool"]["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn divide_infeasible_within_cap() {
    let out = koszul(&["divide", SQUARES]);
    assert_eq!(out.status.code(), Some(2));
    let v = report(&out);
    assert_eq!(v["status"], "infeasible");
    assert_eq!(v["report"]["cap"], 6);
}

#[test]
fn cap_flag_overrides_document() {
    let out = koszul(&["divide", LINEAR, "--cap", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["report"]["cap"], 1);
}

#[test]
fn malformed_json_is_an_error() {
    let out = koszul(&["verify", "--identity", "cauchy-binet", "{\"n\": 2, \"columns\": "]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid JSON"));
}

#[test]
fn missing_file_is_an_error() {
    assert_eq!(koszul(&["bounds", "/nonexistent/input.json"]).status.code(), Some(1));
}

#[test]
fn certificate_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let out = koszul(&["divide", LINEAR, "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v = koszul(&["verify", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", String::from_utf8_lossy(&v.stderr));
    assert_eq!(report(&v)["status"], "PASS");

    // The bare certificate inside the envelope verifies too.
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let bare = serde_json::to_string(&doc["report"]).unwrap();
    assert_eq!(koszul(&["verify", &bare]).status.code(), Some(0));
}

#[test]
fn tampered_certificate_fails() {
    let out = koszul(&["divide", LINEAR]);
    let mut doc = report(&out)["report"].clone();
    doc["rhs"][0][0] = Value::String("z1^2".into());
    let v = koszul(&["verify", &doc.to_string()]);
    assert_eq!(v.status.code(), Some(2));
    assert_eq!(report(&v)["status"], "FAIL");
}

#[test]
fn nullstellensatz_and_noether() {
    let ns = koszul(&["nullstellensatz", r#"{"n": 2, "columns": [["z1"], ["z2"], ["1 - z1*z2"]]}"#]);
    assert_eq!(ns.status.code(), Some(0));
    let v = report(&ns);
    assert!(v["report"]["boundUsed"].as_u64().unwrap() <= 2);
    assert_eq!(koszul(&["verify", &v.to_string()]).status.code(), Some(0));

    let no = koszul(&["noether", LINEAR]);
    assert_eq!(no.status.code(), Some(0));
    assert_eq!(report(&no)["report"]["boundUsed"], 2);
}

#[test]
fn identities_on_the_running_example() {
    for id in ["cauchy-binet", "cramer", "homotopy", "omskriv", "omv", "complex-squares", "exactness"] {
        let out = koszul(&["verify", "--identity", id, "--count", "3", RUNNING]);
        assert_eq!(out.status.code(), Some(0), "{id}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(report(&out)["status"], "PASS", "{id}");
    }
}

#[test]
fn omv_needs_psi() {
    let out = koszul(&["verify", "--identity", "omv", r#"{"f": {"n": 2, "columns": [["z1"], ["z2"]]}}"#]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("psi"));
}

#[test]
fn bounds_report() {
    let out = koszul(&["bounds", r#"{"n": 2, "r": 1, "degrees": [3, 3, 3], "rho": 5}"#]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out)["report"].clone();
    assert_eq!(v["macaulayBound"]["value"], 7);
    assert_eq!(v["villkor"]["satisfied"], false);
    assert_eq!(v["kollarExponent"]["exponent"], "9");

    let low = koszul(&["bounds", r#"{"n": 2, "r": 1, "degrees": [2, 2, 2]}"#]);
    let v = report(&low)["report"].clone();
    assert!(v["kollarExponent"]["unavailable"].is_string());
    assert!(v.get("villkor").is_none());
}

#[test]
fn sample_is_reproducible_and_flags_unbounded() {
    let doc = r#"{"f": {"n": 2, "columns": [["z1^2"], ["z2^2"]]}, "phi": ["z1*z2"]}"#;
    let a = koszul(&["sample", doc, "--seed", "3", "--count", "400", "--mu", "2"]);
    let b = Command::new(env!("CARGO_BIN_EXE_koszul"))
        .args(["sample", doc, "--count", "400", "--mu", "2"])
        .env("KOSZUL_SEED", "3")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(2));
    let (ra, rb) = (report(&a), report(&b));
    assert_eq!(ra["report"], rb["report"]);
    assert_eq!(ra["status"], "unbounded");
    assert_eq!(ra["report"]["seed"], 3);
}

#[test]
fn probe_and_fuhrmann() {
    let out = koszul(&["probe", r#"{"n": 2, "columns": [["z1"], ["z2"]]}"#]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["report"]["estimate"], 2);

    let out = koszul(&["fuhrmann", RUNNING, "--cap", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = report(&out);
    assert_eq!(v["report"]["verified"], true);
    assert_eq!(v["report"]["psi"].as_array().unwrap().len(), 3);
}

#[test]
fn unknown_identity_is_rejected() {
    assert_eq!(koszul(&["verify", "--identity", "nope", RUNNING]).status.code(), Some(1));
}
