use koszul_demo::{briancon_skoda_profile, divide, lojasiewicz_profile};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * b.abs().max(1.0)
}

#[test]
fn divide_returns_a_certificate() {
    let v = parse(divide(2, "z1, z2", "z1^2 + z2^2", -1));
    assert_eq!(v["status"], "solved");
    assert_eq!(v["boundUsed"], 2);
    assert_eq!(v["verified"], true);
    let v = parse(divide(2, "z1^2, z2^2", "z1*z2", 6));
    assert_eq!(v["status"], "infeasible");
}

#[test]
fn bad_input_becomes_an_error_field() {
    assert!(parse(divide(2, "z1, z3", "1", -1))["error"].is_string());
    assert!(parse(lojasiewicz_profile(2, "z1, z2", 0, "1", 3))["error"].is_string());
}

#[test]
fn briancon_skoda_ray_matches_closed_form() {
    // For one row the adjugate is 1, so on z = t(1, 1) the ratio is t⁴ / (2t⁴)².
    let v = parse(briancon_skoda_profile(2, "z1^2, z2^2", "z1*z2", 2, "1, 1", 4));
    for p in v["points"].as_array().unwrap() {
        let t = 2f64.powi(p["log2t"].as_i64().unwrap() as i32);
        assert!(close(p["value"].as_f64().unwrap(), 1.0 / (4.0 * t.powi(4))), "{p}");
    }
}

#[test]
fn briancon_skoda_ray_skips_the_zero_set() {
    let v = parse(briancon_skoda_profile(2, "z1", "z1", 1, "0, 1", 2));
    assert!(v["points"].as_array().unwrap().iter().all(|p| p["value"].is_null()));
}

#[test]
fn lojasiewicz_ray_matches_closed_form() {
    // On z = (t, 0): |z1|² / (1 + t²), times (1 + t²)^2.
    let v = parse(lojasiewicz_profile(2, "z1, z2", 2, "1, 0", 5));
    for p in v["points"].as_array().unwrap() {
        let t2 = 4f64.powi(p["log2t"].as_i64().unwrap() as i32);
        assert!(close(p["value"].as_f64().unwrap(), t2 * (1.0 + t2)), "{p}");
    }
}
