//! WebAssembly bindings for the static page in `www/`.
//!
//! Every export takes plain strings and returns a JSON string, with
//! `{"error": ...}` on bad input, so the page needs no glue beyond
//! `JSON.parse`.

use koszul_core::arith::gaussian::rational_to_f64;
use koszul_core::arith::{parse_poly, GaussianRational, Poly};
use koszul_core::division::{solve_division, Cap, DivisionOutcome, DivisionProblem};
use koszul_core::geometry::{gram_det, pointwise_norm};
use koszul_core::sampling::{default_mu, lojasiewicz_lhs};
use koszul_core::MorphismData;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Rows separated by `;`, entries by `,`: `"z1, z2, 0; 0, z1, z2"`.
pub fn parse_matrix(n: usize, text: &str) -> Result<MorphismData, String> {
    let rows: Vec<Vec<Poly>> = text
        .split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|r| r.split(',').map(|e| parse_poly(e.trim(), n).map_err(|e| e.to_string())).collect())
        .collect::<Result<_, _>>()?;
    MorphismData::with_actual_degrees(n, rows).map_err(|e| e.to_string())
}

fn parse_list(n: usize, text: &str) -> Result<Vec<Poly>, String> {
    text.split(',').map(|e| parse_poly(e.trim(), n).map_err(|e| e.to_string())).collect()
}

fn direction(n: usize, text: &str) -> Result<Vec<GaussianRational>, String> {
    let d = parse_list(n, text)?;
    if d.len() != n || d.iter().any(|p| !p.is_constant()) {
        return Err(format!("direction needs {n} constants"));
    }
    Ok(d.iter().map(Poly::constant_term).collect())
}

/// `t · d` for `t = 2^k`, `k` in `-steps..=steps`.
fn ray(d: &[GaussianRational], steps: u32) -> Vec<(i32, Vec<GaussianRational>)> {
    let half = GaussianRational::from_fraction(1, 2);
    let two = GaussianRational::from_integer(2);
    (-(steps as i32)..=steps as i32)
        .map(|k| {
            let t = if k < 0 { half.pow(k.unsigned_abs()) } else { two.pow(k as u32) };
            (k, d.iter().map(|c| c * &t).collect())
        })
        .collect()
}

fn render(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

pub fn divide_json(n: usize, matrix: &str, phi: &str, cap: i32) -> Result<Value, String> {
    let p = parse_matrix(n, matrix)?;
    let phi = parse_list(n, phi)?;
    let cap = if cap < 0 { Cap::Auto } else { Cap::Fixed(cap as u32) };
    let prob = DivisionProblem::new(p, phi, cap).map_err(|e| e.to_string())?;
    let (resolved, heuristic) = prob.resolved_cap();
    Ok(match solve_division(&prob).map_err(|e| e.to_string())? {
        DivisionOutcome::Solved(c) => json!({
            "status": "solved",
            "Q": c.q.iter().map(|row| row[0].to_string()).collect::<Vec<_>>(),
            "boundUsed": c.bound_used,
            "verified": c.verified,
            "cap": resolved,
            "capHeuristic": heuristic,
        }),
        DivisionOutcome::Infeasible { cap } => json!({ "status": "infeasible", "cap": cap, "capHeuristic": heuristic }),
    })
}

pub fn briancon_skoda_json(n: usize, matrix: &str, phi: &str, mu: i32, dir: &str, steps: u32) -> Result<Value, String> {
    let f = parse_matrix(n, matrix)?;
    let phi = parse_list(n, phi)?;
    let mu = if mu < 0 { default_mu(&f) } else { mu as u32 };
    let norm = pointwise_norm(&f, &phi).map_err(|e| e.to_string())?;
    let g = gram_det(&f);
    let mut points = Vec::new();
    for (k, z) in ray(&direction(n, dir)?, steps) {
        let gv = g.evaluate(&z).map_err(|e| e.to_string())?;
        let ratio = if gv.is_zero() {
            Value::Null
        } else {
            let nv = norm.evaluate(&z).map_err(|e| e.to_string())?;
            json!(rational_to_f64(&(nv.re() / gv.re().pow(mu as i32))))
        };
        points.push(json!({ "log2t": k, "value": ratio }));
    }
    Ok(json!({ "mu": mu, "points": points }))
}

pub fn lojasiewicz_json(n: usize, matrix: &str, exponent: u32, dir: &str, steps: u32) -> Result<Value, String> {
    let f = parse_matrix(n, matrix)?;
    let mut points = Vec::new();
    for (k, z) in ray(&direction(n, dir)?, steps) {
        let lhs = rational_to_f64(&lojasiewicz_lhs(&f, &z).map_err(|e| e.to_string())?);
        let weight = (1.0 + z.iter().map(|c| rational_to_f64(&c.norm_sqr())).sum::<f64>()).powi(exponent as i32);
        points.push(json!({ "log2t": k, "value": lhs * weight }));
    }
    Ok(json!({ "exponent": exponent, "points": points }))
}

/// Solves `P Q = φ` for a single row `P`; `cap < 0` means automatic.
#[wasm_bindgen]
pub fn divide(n: usize, matrix: &str, phi: &str, cap: i32) -> String {
    render(divide_json(n, matrix, phi, cap))
}

/// `‖φ‖² / det(ff*)^μ` along the ray `2^k · dir`; `mu < 0` picks the default.
#[wasm_bindgen]
pub fn briancon_skoda_profile(n: usize, matrix: &str, phi: &str, mu: i32, dir: &str, steps: u32) -> String {
    render(briancon_skoda_json(n, matrix, phi, mu, dir, steps))
}

/// The Łojasiewicz left-hand side times `(1 + |z|²)^exponent` along the ray.
#[wasm_bindgen]
pub fn lojasiewicz_profile(n: usize, matrix: &str, exponent: u32, dir: &str, steps: u32) -> String {
    render(lojasiewicz_json(n, matrix, exponent, dir, steps))
}
