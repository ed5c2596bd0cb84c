//! Multivariate gcd over the Gaussian rationals.
//!
//! Recursive primitive remainder sequences: the gcd of the contents (with
//! respect to a main variable) times the gcd of the primitive parts. Cheap
//! exits handle constants, monomials and trial division first, which covers
//! most of the reductions met when normalizing rational functions.

use super::gaussian::GaussianRational;
use super::poly::{Monomial, Poly};

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let n = a.nvars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(n);
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mono = ma.gcd(&mb);
    let mono_poly = Poly::term(n, mono, 1.into());
    if a.is_monomial() || b.is_monomial() {
        return mono_poly;
    }
    let a = strip(a, &ma);
    let b = strip(b, &mb);
    let g = gcd_no_monomial(&a, &b);
    (&g * &mono_poly).monic()
}

pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero(a.nvars());
    }
    let g = gcd(a, b);
    (&a.div_exact(&g).expect("gcd divides") * b).monic()
}

fn strip(p: &Poly, m: &Monomial) -> Poly {
    if m.degree() == 0 {
        return p.clone();
    }
    let n = p.nvars();
    Poly::from_terms(n, p.terms().map(|(t, c)| (m.quotient(t), c.clone()))).expect("same ring")
}

fn gcd_no_monomial(a: &Poly, b: &Poly) -> Poly {
    let n = a.nvars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(n);
    }
    if b.num_terms() <= a.num_terms() && a.div_exact(b).is_some() {
        return b.monic();
    }
    if a.num_terms() <= b.num_terms() && b.div_exact(a).is_some() {
        return a.monic();
    }
    let nv = 2 * n;
    // A variable present in only one argument cannot occur in the gcd.
    for v in 0..nv {
        let (ua, ub) = (a.uses_var(v), b.uses_var(v));
        if ua && !ub {
            return gcd_no_monomial(&content(a, v), b);
        }
        if ub && !ua {
            return gcd_no_monomial(a, &content(b, v));
        }
    }
    // A gcd free of `v` divides the contents with respect to `v`.
    let used: Vec<usize> = (0..nv).filter(|&v| a.uses_var(v)).collect();
    for &v in &used {
        let bound = specialized_degree_bound(a, b, v);
        if bound == Some(0) {
            if used.len() == 1 {
                return Poly::one(n);
            }
            return gcd_no_monomial(&content(a, v), &content(b, v));
        }
    }
    let main = used
        .iter()
        .copied()
        .min_by_key(|&v| (a.degree_in(v).max(b.degree_in(v)), v))
        .expect("nonconstant polynomials use a variable");

    let ca = content(a, main);
    let cb = content(b, main);
    let c = gcd_no_monomial(&ca, &cb);
    let mut pa = primitive(a, &ca, main);
    let mut pb = primitive(b, &cb, main);
    if pa.len() < pb.len() {
        std::mem::swap(&mut pa, &mut pb);
    }
    loop {
        let r = prem(&pa, &pb);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            // Nonzero constant in the main variable: primitive parts coprime.
            return c.monic();
        }
        let rp = Poly::from_univariate(n, main, &r);
        let rc = content(&rp, main);
        pa = pb;
        pb = primitive(&rp, &rc, main);
    }
    let g = Poly::from_univariate(n, main, &pb);
    (&c * &g).monic()
}

/// Upper bound for `deg_v gcd(a, b)`: the degree of the univariate gcd after
/// substituting integers for the other variables, at a point where both
/// leading coefficients survive.
fn specialized_degree_bound(a: &Poly, b: &Poly, v: usize) -> Option<u32> {
    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    let nv = 2 * a.nvars();
    for attempt in 0..3i64 {
        let point: Vec<GaussianRational> = (0..nv as i64)
            .map(|k| GaussianRational::from_ints(2 + (7 * k + 13 * attempt) % 17, 1 + (5 * k + 3 * attempt) % 11))
            .collect();
        let ia: Vec<GaussianRational> = ua.iter().map(|c| c.evaluate_raw(&point)).collect();
        let ib: Vec<GaussianRational> = ub.iter().map(|c| c.evaluate_raw(&point)).collect();
        if ia.last().is_some_and(|c| c.is_zero()) || ib.last().is_some_and(|c| c.is_zero()) {
            continue;
        }
        return Some(univariate_gcd_degree(ia, ib));
    }
    None
}

fn univariate_gcd_degree(mut a: Vec<GaussianRational>, mut b: Vec<GaussianRational>) -> u32 {
    let trim = |v: &mut Vec<GaussianRational>| {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let lb = b.last().expect("nonempty").inv().expect("trimmed");
        while a.len() >= b.len() {
            let q = a.last().expect("nonempty") * &lb;
            let shift = a.len() - b.len();
            for (k, bk) in b.iter().enumerate() {
                a[k + shift] -= &(&q * bk);
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1) as u32
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
fn content(p: &Poly, var: usize) -> Poly {
    let coeffs = p.to_univariate(var);
    let mut nonzero: Vec<&Poly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    nonzero.sort_by_key(|c| c.num_terms());
    let mut g = Poly::zero(p.nvars());
    for c in nonzero {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive(p: &Poly, cont: &Poly, var: usize) -> Vec<Poly> {
    let pp = if cont.is_constant() {
        p.monic()
    } else {
        p.div_exact(cont).expect("content divides")
    };
    trim(pp.to_univariate(var))
}

fn trim(mut v: Vec<Poly>) -> Vec<Poly> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Pseudo-remainder of univariate polynomials with polynomial coefficients.
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut r: Vec<Poly> = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (k, bk) in b.iter().enumerate() {
            let t = &lr * bk;
            r[k + shift] = &r[k + shift] - &t;
        }
        r = trim(r);
        debug_assert!(r.len() <= dr);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s, 2).unwrap()
    }

    #[test]
    fn common_factor_recovered() {
        let f = p("z1 + w2 + 1");
        let a = &f * &p("z1 - z2");
        let b = &f * &p("z1*w1 + 3");
        assert_eq!(gcd(&a, &b), f.monic());
    }

    #[test]
    fn coprime_and_monomial_cases() {
        assert!(gcd(&p("z1 + 1"), &p("z2 + 1")).is_one());
        assert_eq!(gcd(&p("z1^2*z2"), &p("z1*z2^3 + z1^3")), p("z1"));
        assert_eq!(gcd(&p("z1^2*w1 + z1*w1^2"), &p("z1*w1")), p("z1*w1"));
    }

    #[test]
    fn squared_gram_determinant() {
        let g = p("z1*w1 + z2*w2");
        let a = &g.pow(3) * &p("z1 - 2*w2");
        let b = &g.pow(2) * &p("z2 + i");
        assert_eq!(gcd(&a, &b), g.pow(2).monic());
    }
}
