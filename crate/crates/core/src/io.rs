//! JSON interchange.
//!
//! Polynomials are either a string (`"z1^2 - i*z2"`) or a list of terms
//! `{"coeff": [re_num, re_den, im_num, im_den], "z": [..], "w": [..]}` where
//! `w` may be omitted. A morphism is
//! `{"n", "m", "r", "columns": [[f_1^k, .., f_r^k], ..], "degrees": [..]}`
//! with `degrees` optional (defaults to the actual column degrees).
//! Indices in element documents are 1-based.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{parse_poly, GaussianRational, Monomial, Poly, RationalFunction};
use crate::division::{verify_solution, Cap, DivisionCertificate, DivisionOutcome, DivisionProblem};
use crate::error::{Error, Result};
use crate::morphism::MorphismData;
use crate::multilinear::{BasisWord, GradedElement, QSlot};

fn bad(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    coeff: GaussianRational,
    z: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    w: Option<Vec<u32>>,
}

pub fn poly_to_json(p: &Poly) -> Value {
    let terms: Vec<TermDoc> = p
        .terms()
        .rev()
        .map(|(mono, c)| TermDoc {
            coeff: c.clone(),
            z: mono.z().to_vec(),
            w: if mono.w().iter().all(|&e| e == 0) { None } else { Some(mono.w().to_vec()) },
        })
        .collect();
    serde_json::to_value(terms).expect("plain data")
}

pub fn poly_from_json(v: &Value, n: usize) -> Result<Poly> {
    if let Some(s) = v.as_str() {
        return parse_poly(s, n);
    }
    if let Some(k) = v.as_i64() {
        return Ok(Poly::from_int(n, k));
    }
    let terms: Vec<TermDoc> = serde_json::from_value(v.clone()).map_err(|e| bad(format!("polynomial: {e}")))?;
    let mut p = Poly::zero(n);
    for t in terms {
        let w = t.w.unwrap_or_else(|| vec![0; n]);
        if t.z.len() != n || w.len() != n {
            return Err(bad(format!("term exponents must have length {n}")));
        }
        let exps = t.z.into_iter().chain(w).collect();
        p = &p + &Poly::term(n, Monomial::new(exps), t.coeff);
    }
    Ok(p)
}

fn usize_field(v: &Value, key: &str) -> Result<usize> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| bad(format!("missing or non-integer field \"{key}\"")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

pub fn morphism_to_json(f: &MorphismData) -> Value {
    let columns: Vec<Value> = (0..f.m()).map(|k| Value::Array(f.column(k).iter().map(poly_to_json).collect())).collect();
    json!({ "n": f.n(), "m": f.m(), "r": f.r(), "columns": columns, "degrees": f.coldeg() })
}

pub fn morphism_from_json(v: &Value) -> Result<MorphismData> {
    let n = usize_field(v, "n")?;
    let cols = array(v.get("columns").ok_or_else(|| bad("missing field \"columns\""))?, "columns")?;
    let m = cols.len();
    if let Some(mm) = v.get("m") {
        if mm.as_u64() != Some(m as u64) {
            return Err(bad(format!("\"m\" disagrees with the {m} columns given")));
        }
    }
    let parsed: Vec<Vec<Poly>> = cols
        .iter()
        .map(|c| array(c, "column")?.iter().map(|p| poly_from_json(p, n)).collect())
        .collect::<Result<_>>()?;
    let r = match v.get("r") {
        Some(x) => x.as_u64().ok_or_else(|| bad("\"r\" must be an integer"))? as usize,
        None => parsed.first().map(Vec::len).unwrap_or(0),
    };
    if parsed.iter().any(|c| c.len() != r) {
        return Err(bad(format!("every column must have r = {r} entries")));
    }
    let entries: Vec<Vec<Poly>> = (0..r).map(|j| parsed.iter().map(|c| c[j].clone()).collect()).collect();
    match v.get("degrees") {
        None | Some(Value::Null) => MorphismData::with_actual_degrees(n, entries),
        Some(d) => {
            let degrees: Vec<u32> = serde_json::from_value(d.clone()).map_err(|e| bad(format!("degrees: {e}")))?;
            MorphismData::new(n, entries, degrees)
        }
    }
}

pub fn polys_from_json(v: &Value, n: usize, what: &str) -> Result<Vec<Poly>> {
    array(v, what)?.iter().map(|p| poly_from_json(p, n)).collect()
}

/// `{"P": morphism, "phi": [..], "cap": int | "auto"}`; `cap` defaults to `"auto"`.
pub fn problem_from_json(v: &Value) -> Result<DivisionProblem> {
    let p = morphism_from_json(v.get("P").ok_or_else(|| bad("missing field \"P\""))?)?;
    let phi = match v.get("phi") {
        Some(x) => polys_from_json(x, p.n(), "phi")?,
        None => vec![Poly::zero(p.n()); p.r()],
    };
    let cap = match v.get("cap") {
        None | Some(Value::Null) => Cap::Auto,
        Some(Value::String(s)) if s == "auto" => Cap::Auto,
        Some(x) => Cap::Fixed(x.as_u64().ok_or_else(|| bad("\"cap\" must be a non-negative integer or \"auto\""))? as u32),
    };
    DivisionProblem::new(p, phi, cap)
}

pub fn cap_to_json(cap: &Cap) -> Value {
    match cap {
        Cap::Fixed(c) => json!(c),
        Cap::Auto => json!("auto"),
    }
}

pub fn problem_to_json(prob: &DivisionProblem) -> Value {
    json!({
        "P": morphism_to_json(&prob.p),
        "phi": prob.phi.iter().map(poly_to_json).collect::<Vec<_>>(),
        "cap": cap_to_json(&prob.cap),
    })
}

/// Certificate document for `P Q = rhs`, where `rhs` has one column per
/// column of `Q`.
pub fn certificate_to_json(kind: &str, p: &MorphismData, rhs: &[Vec<Poly>], cert: &DivisionCertificate) -> Value {
    json!({
        "kind": kind,
        "P": morphism_to_json(p),
        "rhs": rhs.iter().map(|c| c.iter().map(poly_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "Q": cert.q.iter().map(|row| row.iter().map(poly_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "termDegrees": cert.term_degrees,
        "boundUsed": cert.bound_used,
        "verified": cert.verified,
    })
}

pub fn outcome_to_json(kind: &str, p: &MorphismData, rhs: &[Vec<Poly>], outcome: &DivisionOutcome) -> Value {
    match outcome {
        DivisionOutcome::Solved(cert) => {
            let mut v = certificate_to_json(kind, p, rhs, cert);
            v["status"] = json!("solved");
            v
        }
        DivisionOutcome::Infeasible { cap } => json!({
            "kind": kind,
            "status": "infeasible",
            "cap": cap,
            "note": "no solution with max_j deg(P^j Q_j) within the cap; not a non-membership proof",
        }),
    }
}

/// Re-checks `P Q = rhs` in a certificate document.
pub fn verify_certificate_json(v: &Value) -> Result<bool> {
    let p = morphism_from_json(v.get("P").ok_or_else(|| bad("certificate lacks \"P\""))?)?;
    let n = p.n();
    let rhs: Vec<Vec<Poly>> = array(v.get("rhs").ok_or_else(|| bad("certificate lacks \"rhs\""))?, "rhs")?
        .iter()
        .map(|c| polys_from_json(c, n, "rhs column"))
        .collect::<Result<_>>()?;
    let q: Vec<Vec<Poly>> = array(v.get("Q").ok_or_else(|| bad("certificate lacks \"Q\""))?, "Q")?
        .iter()
        .map(|row| polys_from_json(row, n, "Q row"))
        .collect::<Result<_>>()?;
    if q.len() != p.m() || q.iter().any(|row| row.len() != rhs.len()) || rhs.iter().any(|c| c.len() != p.r()) {
        return Err(bad("certificate shapes do not match P"));
    }
    Ok(verify_solution(&p, &q, &rhs))
}

fn rf_to_json(c: &RationalFunction) -> Value {
    json!({ "num": poly_to_json(c.num()), "den": poly_to_json(c.den()) })
}

fn rf_from_json(v: &Value, n: usize) -> Result<RationalFunction> {
    match v.get("num") {
        Some(num) => {
            let den = match v.get("den") {
                Some(d) => poly_from_json(d, n)?,
                None => Poly::one(n),
            };
            RationalFunction::new(poly_from_json(num, n)?, den)
        }
        None => Ok(RationalFunction::from_poly(poly_from_json(v, n)?)),
    }
}

fn indices_to_mask(v: Option<&Value>, bound: usize, what: &str) -> Result<u32> {
    let Some(v) = v else { return Ok(0) };
    let idx: Vec<usize> = serde_json::from_value(v.clone()).map_err(|e| bad(format!("{what}: {e}")))?;
    let mut mask = 0u32;
    for i in idx {
        if i == 0 || i > bound {
            return Err(bad(format!("{what} index {i} outside 1..={bound}")));
        }
        if mask & (1 << (i - 1)) != 0 {
            return Err(bad(format!("{what} index {i} repeated")));
        }
        mask |= 1 << (i - 1);
    }
    Ok(mask)
}

fn mask_to_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()
}

pub fn element_to_json(x: &GradedElement) -> Value {
    let (n, m, r) = x.dims();
    let terms: Vec<Value> = x
        .terms()
        .map(|(w, c)| {
            json!({
                "form": mask_to_indices(w.form),
                "ext": mask_to_indices(w.ext),
                "sym": w.sym.to_vec(),
                "detq": w.detq,
                "qslot": w.qslot.to_code(),
                "coeff": rf_to_json(c),
            })
        })
        .collect();
    json!({ "n": n, "m": m, "r": r, "terms": terms })
}

pub fn element_from_json(v: &Value) -> Result<GradedElement> {
    let (n, m, r) = (usize_field(v, "n")?, usize_field(v, "m")?, usize_field(v, "r")?);
    let mut x = GradedElement::zero(n, m, r);
    for t in array(v.get("terms").ok_or_else(|| bad("missing field \"terms\""))?, "terms")? {
        let sym: Vec<u32> = match t.get("sym") {
            Some(s) => serde_json::from_value(s.clone()).map_err(|e| bad(format!("sym: {e}")))?,
            None => vec![0; r],
        };
        let qslot = match t.get("qslot").and_then(Value::as_str) {
            None => QSlot::None,
            Some(code) => QSlot::from_code(code).ok_or_else(|| bad(format!("unknown slot code \"{code}\"")))?,
        };
        let word = BasisWord {
            form: indices_to_mask(t.get("form"), n, "form")?,
            ext: indices_to_mask(t.get("ext"), m, "ext")?,
            sym: sym.into_boxed_slice(),
            detq: t.get("detq").and_then(Value::as_bool).unwrap_or(false),
            qslot,
        };
        let coeff = rf_from_json(t.get("coeff").ok_or_else(|| bad("term lacks \"coeff\""))?, n)?;
        x = x.checked_add(&GradedElement::term(n, m, r, word, coeff)?)?;
    }
    Ok(x)
}

/// Accepts a path to a JSON file or inline JSON text.
pub fn read_json_arg(arg: &str) -> Result<Value> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| bad(format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| bad(format!("invalid JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::running_example;

    #[test]
    fn morphism_round_trip() {
        let f = running_example();
        assert_eq!(morphism_from_json(&morphism_to_json(&f)).unwrap(), f);
    }

    #[test]
    fn string_and_term_polys_agree() {
        let a = poly_from_json(&json!("(1/2 + i)*z1^2*w2 - 3"), 2).unwrap();
        let b = poly_from_json(&poly_to_json(&a), 2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn element_round_trip() {
        let v = json!({"n": 2, "m": 3, "r": 2, "terms": [
            {"form": [1], "ext": [1, 3, 2], "sym": [0, 0], "detq": true, "qslot": "qd2", "coeff": {"num": "z1", "den": "1 + z1*w1"}},
            {"ext": [2], "qslot": "end1,2", "coeff": "w2"}
        ]});
        let x = element_from_json(&v).unwrap();
        assert_eq!(x.num_terms(), 2);
        assert_eq!(element_from_json(&element_to_json(&x)).unwrap(), x);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(morphism_from_json(&json!({"n": 1, "columns": [["w1"]]})).is_err());
        assert!(element_from_json(&json!({"n": 1, "m": 1, "r": 1, "terms": [{"ext": [2], "coeff": 1}]})).is_err());
        assert!(problem_from_json(&json!({"P": {"n": 1, "columns": [["z1"]]}, "phi": ["z1"], "cap": -1})).is_err());
    }
}
