use koszul_core::arith::{GaussianRational, Poly};
use koszul_core::division::{
    auto_cap, macaulay_bound, minors_morphism, noether_solve, nullstellensatz_solve, solve_division, villkor_check,
    DivisionOutcome,
};
use koszul_core::geometry::{
    cauchy_binet_residual, cramer_check, gram_det, homotopy_residual, omskriv_residual, omv_residual, top_level,
};
use koszul_core::multilinear::complex::level_basis;
use koszul_core::multilinear::{apply_f, delta, delta_f, exactness_at_point, ExactnessLevel};
use koszul_core::random::{random_level_element, random_point};
use koszul_core::sampling::{briancon_skoda_ratio, codim_probe, kollar_exponent, lojasiewicz_sample, Regimes};
use koszul_core::{io, MorphismData};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{Command, Identity, Quantity, RegimeArg, Report};

type Out = Result<Report, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn done(body: Value) -> Out {
    Ok(Report { status: "ok", negative: false, body })
}

fn verdict(pass: bool, body: Value) -> Out {
    Ok(Report { status: if pass { "PASS" } else { "FAIL" }, negative: !pass, body })
}

fn outcome(kind: &str, p: &MorphismData, rhs: &[Vec<Poly>], o: &DivisionOutcome) -> Out {
    let negative = o.certificate().is_none();
    Ok(Report {
        status: if negative { "infeasible" } else { "solved" },
        negative,
        body: io::outcome_to_json(kind, p, rhs, o),
    })
}

/// The morphism under `"f"` or `"P"`, or the document itself.
fn morphism(doc: &Value) -> Result<MorphismData, String> {
    let v = doc.get("f").or_else(|| doc.get("P")).unwrap_or(doc);
    io::morphism_from_json(v).map_err(err)
}

fn polys(doc: &Value, key: &str, n: usize) -> Result<Option<Vec<Poly>>, String> {
    doc.get(key).map(|v| io::polys_from_json(v, n, key).map_err(err)).transpose()
}

fn required(doc: &Value, key: &str, n: usize) -> Result<Vec<Poly>, String> {
    polys(doc, key, n)?.ok_or_else(|| format!("missing field \"{key}\""))
}

fn u32_field(doc: &Value, key: &str) -> Result<Option<u32>, String> {
    match doc.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v.as_u64().map(|x| Some(x as u32)).ok_or_else(|| format!("\"{key}\" must be a non-negative integer")),
    }
}

fn regimes(r: RegimeArg) -> Regimes {
    match r {
        RegimeArg::Mixed => Regimes::Mixed,
        RegimeArg::Local => Regimes::LocalOnly,
        RegimeArg::Shell => Regimes::ShellOnly,
    }
}

pub fn dispatch(cmd: &Command, doc: &Value) -> Out {
    match cmd {
        Command::Verify { identity: None, .. } => verify_certificate(doc),
        Command::Verify { identity: Some(id), level, random, .. } => {
            let f = morphism(doc)?;
            let count = random.count.unwrap_or(20);
            match id {
                Identity::CauchyBinet => {
                    let res = cauchy_binet_residual(&f);
                    let pass = res.is_zero();
                    verdict(pass, json!({ "identity": "cauchy-binet", "residual": io::poly_to_json(&res) }))
                }
                Identity::Cramer => {
                    let rep = cramer_check(&f).map_err(err)?;
                    let body = serde_json::to_value(&rep).map_err(err)?;
                    let failing: Vec<&String> =
                        body.as_object().into_iter().flatten().filter(|(_, v)| **v == json!(false)).map(|(k, _)| k).collect();
                    verdict(rep.holds(), json!({ "identity": "cramer", "checks": body, "failing": failing }))
                }
                Identity::Homotopy => {
                    let rep = homotopy_residual(&f).map_err(err)?;
                    let failing: Vec<&str> = rep.components.iter().filter(|c| !c.zero).map(|c| c.identity.as_str()).collect();
                    verdict(rep.holds(), json!({ "identity": "homotopy", "components": rep.components, "failing": failing }))
                }
                Identity::Omskriv => {
                    let phi = required(doc, "phi", f.n())?;
                    let levels: Vec<usize> = match level {
                        Some(k) => vec![*k],
                        None => (2..=top_level(&f)).collect(),
                    };
                    let mut failing = Vec::new();
                    for &k in &levels {
                        let res = omskriv_residual(&f, &phi, k).map_err(err)?;
                        if !res.is_zero() {
                            failing.push(json!({ "k": k, "residual": io::element_to_json(&res) }));
                        }
                    }
                    verdict(failing.is_empty(), json!({ "identity": "omskriv", "levels": levels, "failing": failing }))
                }
                Identity::Omv => {
                    let psi = required(doc, "psi", f.n())?;
                    let res = omv_residual(&f, &psi).map_err(err)?;
                    verdict(res.is_zero(), json!({ "identity": "omv", "residual": io::element_to_json(&res) }))
                }
                Identity::ComplexSquares => complex_squares(&f, random.seed, count),
                Identity::Exactness => exactness(&f, random.seed, count),
            }
        }
        Command::Divide { cap, .. } => {
            let mut prob = io::problem_from_json(doc).map_err(err)?;
            if let Some(c) = cap {
                prob.cap = c.clone();
            }
            let (resolved, heuristic) = prob.resolved_cap();
            let o = solve_division(&prob).map_err(err)?;
            let mut r = outcome("division", &prob.p, &[prob.phi.clone()], &o)?;
            r.body["capResolved"] = json!(resolved);
            r.body["capHeuristic"] = json!(heuristic);
            Ok(r)
        }
        Command::Noether { .. } => {
            let prob = io::problem_from_json(doc).map_err(err)?;
            let o = noether_solve(&prob.p, &prob.phi).map_err(err)?;
            let mut r = outcome("noether", &prob.p, &[prob.phi.clone()], &o)?;
            let (n, m, rr) = (prob.p.n(), prob.p.m(), prob.p.r());
            r.body["villkor"] = serde_json::to_value(villkor_check(n, rr, m, prob.p.coldeg(), prob.rho())).map_err(err)?;
            Ok(r)
        }
        Command::Nullstellensatz { cap, .. } => {
            let p = morphism(doc)?;
            let cap = match cap {
                Some(c) => *c,
                None => u32_field(doc, "cap")?.unwrap_or_else(|| macaulay_bound(p.n(), p.r(), p.coldeg()).value),
            };
            let o = nullstellensatz_solve(&p, cap).map_err(err)?;
            let (n, r) = (p.n(), p.r());
            let rhs: Vec<Vec<Poly>> =
                (0..r).map(|c| (0..r).map(|i| if i == c { Poly::one(n) } else { Poly::zero(n) }).collect()).collect();
            outcome("nullstellensatz", &p, &rhs, &o)
        }
        Command::Bounds { .. } => bounds(doc),
        Command::Sample { quantity, mu, exponent, regime, random, .. } => {
            let f = morphism(doc)?;
            let phi = polys(doc, "phi", f.n())?;
            let count = random.count.unwrap_or(2000);
            let quantity = quantity.unwrap_or(if phi.is_some() { Quantity::BrianconSkoda } else { Quantity::Lojasiewicz });
            let rep = match quantity {
                Quantity::BrianconSkoda => {
                    let phi = phi.ok_or("briancon-skoda sampling needs \"phi\"")?;
                    let mu = mu.or(u32_field(doc, "mu")?);
                    briancon_skoda_ratio(&f, &phi, mu, random.seed, count, regimes(*regime)).map_err(err)?
                }
                Quantity::Lojasiewicz => {
                    let e = match exponent.or(u32_field(doc, "exponent")?) {
                        Some(e) => e,
                        None => {
                            let d = f.coldeg().iter().copied().max().unwrap_or(0);
                            let k = kollar_exponent(f.n(), f.m(), f.r(), d)
                                .map_err(|e| format!("{e}; pass --exponent explicitly"))?;
                            u32::try_from(k.exponent).map_err(|_| "default exponent too large; pass --exponent")?
                        }
                    };
                    lojasiewicz_sample(&f, e, random.seed, count, regimes(*regime)).map_err(err)?
                }
            };
            let bounded = match quantity {
                Quantity::BrianconSkoda => rep.bounded(),
                Quantity::Lojasiewicz => !rep.flags.iter().any(|s| s.starts_with("no positive")),
            };
            Ok(Report {
                status: if bounded { "bounded" } else { "unbounded" },
                negative: !bounded,
                body: serde_json::to_value(&rep).map_err(err)?,
            })
        }
        Command::Probe { trials, seed, .. } => {
            let f = morphism(doc)?;
            let est = codim_probe(&f, *seed, *trials).map_err(err)?;
            done(serde_json::to_value(&est).map_err(err)?)
        }
        Command::Fuhrmann { cap, .. } => {
            let f = morphism(doc)?;
            let phi = required(doc, "phi", f.n())?;
            let cap = match cap.or(u32_field(doc, "cap")?) {
                Some(c) => c,
                None => {
                    let rho = phi.iter().filter_map(Poly::z_degree).max().unwrap_or(0);
                    auto_cap(&minors_morphism(&f).map_err(err)?.0, rho).0
                }
            };
            match koszul_core::division::fuhrmann_solve(&f, &phi, cap).map_err(err)? {
                Some(res) => Ok(Report {
                    status: if res.verified { "solved" } else { "FAIL" },
                    negative: !res.verified,
                    body: json!({
                        "cap": cap,
                        "psi": res.psi.iter().map(io::poly_to_json).collect::<Vec<_>>(),
                        "H": res.h.iter().map(io::element_to_json).collect::<Vec<_>>(),
                        "verified": res.verified,
                    }),
                }),
                None => Ok(Report {
                    status: "infeasible",
                    negative: true,
                    body: json!({
                        "cap": cap,
                        "note": "some scalar division by the minors has no solution within the cap; not a non-membership proof",
                    }),
                }),
            }
        }
    }
}

/// Accepts a bare certificate or a report envelope wrapping one.
fn verify_certificate(doc: &Value) -> Out {
    let cert = match doc.get("report") {
        Some(r) if doc.get("Q").is_none() => r,
        _ => doc,
    };
    if cert.get("status").and_then(Value::as_str) == Some("infeasible") {
        return Err("the document records an infeasible outcome; there is no certificate to verify".into());
    }
    let ok = io::verify_certificate_json(cert).map_err(err)?;
    verdict(ok, json!({ "kind": cert.get("kind").cloned().unwrap_or(Value::Null), "verified": ok }))
}

fn complex_squares(f: &MorphismData, seed: u64, count: u64) -> Out {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n, m, r) = (f.n(), f.m(), f.r());
    let mut checked = 0u64;
    let mut k = 2;
    while !level_basis(m, r, k).is_empty() {
        for _ in 0..count {
            let forms = rng.gen_range(0..=n.min(1) as u32);
            let x = random_level_element(&mut rng, n, m, r, k, forms, 3);
            let dx = delta(f, &x).map_err(err)?;
            let ddx = if k == 2 { apply_f(f, &dx) } else { delta(f, &dx) }.map_err(err)?;
            if !ddx.is_zero() {
                return verdict(false, json!({ "identity": "complex-squares", "failing": { "level": k, "check": "δ² = 0", "element": io::element_to_json(&x) } }));
            }
            if k == 2 {
                let fd = apply_f(f, &delta_f(f, &x).map_err(err)?).map_err(err)?;
                if !fd.is_zero() {
                    return verdict(false, json!({ "identity": "complex-squares", "failing": { "level": k, "check": "f∘δ_F = 0", "element": io::element_to_json(&x) } }));
                }
            }
            checked += 1;
        }
        k += 1;
    }
    verdict(true, json!({ "identity": "complex-squares", "seed": seed, "elementsChecked": checked }))
}

fn exactness(f: &MorphismData, seed: u64, count: u64) -> Out {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = gram_det(f);
    let mut reports = Vec::new();
    let mut failing = Vec::new();
    let mut found = 0;
    let mut attempts = 0;
    while found < count {
        attempts += 1;
        if attempts > 50 * count.max(1) {
            return Err("could not find enough points where f is surjective".into());
        }
        let pt: Vec<GaussianRational> = random_point(&mut rng, f.n());
        if g.evaluate(&pt).map_err(err)?.is_zero() {
            continue;
        }
        found += 1;
        for level in [ExactnessLevel::E, ExactnessLevel::E2] {
            let rep = exactness_at_point(f, &pt, level).map_err(err)?;
            if !rep.exact {
                failing.push(json!({ "point": pt, "rank": rep }));
            }
            reports.push(rep);
        }
    }
    verdict(failing.is_empty(), json!({ "identity": "exactness", "seed": seed, "points": found, "verdicts": reports.len(), "failing": failing }))
}

/// Degree bounds from `{n, r, degrees, rho?}` or a morphism document.
fn bounds(doc: &Value) -> Out {
    let (n, r, degrees, mut rho) = if doc.get("degrees").is_some() && doc.get("columns").is_none() {
        let n = u32_field(doc, "n")?.ok_or("missing field \"n\"")? as usize;
        let r = u32_field(doc, "r")?.ok_or("missing field \"r\"")? as usize;
        let degrees: Vec<u32> = serde_json::from_value(doc["degrees"].clone()).map_err(|e| format!("degrees: {e}"))?;
        (n, r, degrees, None)
    } else {
        let f = morphism(doc)?;
        let rho = polys(doc, "phi", f.n())?.map(|phi| phi.iter().filter_map(Poly::z_degree).max().unwrap_or(0));
        (f.n(), f.r(), f.coldeg().to_vec(), rho)
    };
    if let Some(x) = u32_field(doc, "rho")? {
        rho = Some(x);
    }
    let m = degrees.len();
    if r == 0 || r > m {
        return Err(format!("need 1 ≤ r ≤ m, got r = {r}, m = {m}"));
    }
    let d = degrees.iter().copied().max().unwrap_or(0);
    let mut body = json!({
        "n": n, "m": m, "r": r, "degrees": degrees,
        "macaulayBound": macaulay_bound(n, r, &degrees),
    });
    if let Some(rho) = rho {
        body["rho"] = json!(rho);
        body["villkor"] = serde_json::to_value(villkor_check(n, r, m, &degrees, rho)).map_err(err)?;
    }
    body["kollarExponent"] = match kollar_exponent(n, m, r, d) {
        Ok(k) => serde_json::to_value(&k).map_err(err)?,
        Err(e) => json!({ "unavailable": e.to_string() }),
    };
    done(body)
}
