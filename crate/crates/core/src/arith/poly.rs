//! Sparse polynomials over the Gaussian rationals in `z_1..z_n` and the
//! formal conjugate variables `w_1..w_n`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gaussian::GaussianRational;
use crate::error::{Error, Result};

/// Exponent vector of length `2n`: the `z` part followed by the `w` part.
///
/// Ordered graded-lexicographically (total degree first, then lex with
/// `z_1 > z_2 > ... > w_1 > ...`). The derived ordering relies on the field
/// order below.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u32,
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let deg = exps.iter().sum();
        Self { deg, exps: exps.into_boxed_slice() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::new(vec![0; 2 * nvars])
    }

    pub fn from_parts(z: &[u32], w: &[u32]) -> Self {
        let mut e = z.to_vec();
        e.extend_from_slice(w);
        Self::new(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn nvars(&self) -> usize {
        self.exps.len() / 2
    }

    pub fn z(&self) -> &[u32] {
        &self.exps[..self.nvars()]
    }

    pub fn w(&self) -> &[u32] {
        &self.exps[self.nvars()..]
    }

    /// Degree in the `z` variables alone.
    pub fn z_degree(&self) -> u32 {
        self.z().iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial::new(other.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn conjugate(&self) -> Monomial {
        let n = self.nvars();
        let mut e = Vec::with_capacity(2 * n);
        e.extend_from_slice(&self.exps[n..]);
        e.extend_from_slice(&self.exps[..n]);
        Monomial::new(e)
    }

    fn with_exp(&self, var: usize, value: u32) -> Monomial {
        let mut e = self.exps.to_vec();
        e[var] = value;
        Monomial::new(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, GaussianRational::one())
    }

    pub fn constant(nvars: usize, c: GaussianRational) -> Self {
        Self::term(nvars, Monomial::one(nvars), c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, GaussianRational::from_integer(c))
    }

    pub fn term(nvars: usize, mono: Monomial, c: GaussianRational) -> Self {
        assert_eq!(mono.exps.len(), 2 * nvars, "monomial length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Self { nvars, terms }
    }

    /// The variable `z_j` (0-based).
    pub fn z(nvars: usize, j: usize) -> Self {
        Self::var(nvars, j)
    }

    /// The formal conjugate `w_j` (0-based).
    pub fn w(nvars: usize, j: usize) -> Self {
        Self::var(nvars, nvars + j)
    }

    /// Variable by raw index in `0..2n`.
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; 2 * nvars];
        e[index] = 1;
        Self::term(nvars, Monomial::new(e), GaussianRational::one())
    }

    /// Builds a polynomial from terms, merging duplicates and dropping zeros.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, GaussianRational)>,
    ) -> Result<Self> {
        let mut out = Self::zero(nvars);
        for (m, c) in terms {
            if m.exps.len() != 2 * nvars {
                return Err(Error::Input(format!(
                    "exponent vector of length {} in a polynomial over {} variables",
                    m.exps.len(),
                    nvars
                )));
            }
            out.add_term(m, &c);
        }
        Ok(out)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        match self.terms.len() {
            0 => true,
            1 => self.terms.keys().next().unwrap().deg == 0,
            _ => false,
        }
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// True when no `w` variable occurs.
    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|m| m.w().iter().all(|&e| e == 0))
    }

    pub fn leading(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> GaussianRational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_default()
    }

    /// Total degree over all `2n` variables; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.deg).max()
    }

    /// Degree in the `z` variables alone.
    pub fn z_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.z_degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exps[var]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exps[var] > 0)
    }

    /// Componentwise minimum of all exponent vectors.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Input(format!(
                "nvars mismatch: {} vs {}",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let (big, small) = if self.terms.len() >= other.terms.len() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.nvars));
        }
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.mul(mono), x * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Swaps `z_j` and `w_j` exponents and conjugates every coefficient.
    pub fn conjugate(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.conjugate(), c.conj())).collect(),
        }
    }

    /// Partial derivative in the raw variable `var` (`0..2n`).
    pub fn partial(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps[var];
            if e > 0 {
                out.add_term(m.with_exp(var, e - 1), &c.scale_int(&e.into()));
            }
        }
        out
    }

    pub fn partial_w(&self, j: usize) -> Poly {
        self.partial(self.nvars + j)
    }

    /// Evaluates on the real slice `w = conj(z)`.
    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        if point.len() != self.nvars {
            return Err(Error::Input(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut full: Vec<GaussianRational> = point.to_vec();
        full.extend(point.iter().map(|x| x.conj()));
        Ok(self.evaluate_raw(&full))
    }

    /// Evaluates at independent values of all `2n` variables.
    pub fn evaluate_raw(&self, values: &[GaussianRational]) -> GaussianRational {
        let mut cache: Vec<Vec<GaussianRational>> = vec![vec![GaussianRational::one()]; values.len()];
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[v];
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap() * &values[v];
                    powers.push(next);
                }
                t = &t * &powers[e as usize];
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes the holomorphic variable `z_j` by `images[j]`; `w`
    /// variables must not occur. The result lives in `images`' ring.
    pub fn compose_holomorphic(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::Input("wrong number of substitution images".into()));
        }
        if !self.is_holomorphic() {
            return Err(Error::Input("composition requires a holomorphic polynomial".into()));
        }
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut cache: Vec<Vec<Poly>> = images.iter().map(|_| vec![Poly::one(target)]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (j, &e) in m.z().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[j];
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap() * &images[j];
                    powers.push(next);
                }
                t = &t * &powers[e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Exact division: `Some(q)` with `self = q * d`, or `None` when `d`
    /// does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (lm, lc) = d.leading()?;
        let lc_inv = lc.inv()?;
        if d.is_constant() {
            return Some(self.scale(&lc_inv));
        }
        let mut rem = self.clone();
        let mut q = Poly::zero(self.nvars);
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient(m);
            let qc = c * &lc_inv;
            for (dm, dc) in &d.terms {
                rem.add_term(dm.mul(&qm), &-(dc * &qc));
            }
            q.add_term(qm, &qc);
        }
        Some(q)
    }

    /// Coefficients in `var` as a vector indexed by degree; the coefficients
    /// do not involve `var`.
    pub fn to_univariate(&self, var: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(self.nvars); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exps[var] as usize;
            out[e].terms.insert(m.with_exp(var, 0), c.clone());
        }
        out
    }

    pub fn from_univariate(nvars: usize, var: usize, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero(nvars);
        for (k, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                out.terms.insert(m.with_exp(var, m.exps[var] + k as u32), c.clone());
            }
        }
        out
    }

    /// Re-embeds a polynomial in a ring with `nvars` variables. `map[j]` is
    /// the new index of `z_j` (and of `w_j`); dropped variables must not occur.
    pub fn remap(&self, nvars: usize, map: &[Option<usize>]) -> Result<Poly> {
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut z = vec![0; nvars];
            let mut w = vec![0; nvars];
            for j in 0..self.nvars {
                let (ez, ew) = (m.z()[j], m.w()[j]);
                match map[j] {
                    Some(t) => {
                        z[t] += ez;
                        w[t] += ew;
                    }
                    None if ez == 0 && ew == 0 => {}
                    None => return Err(Error::Input(format!("variable {} cannot be dropped", j + 1))),
                }
            }
            out.add_term(Monomial::from_parts(&z, &w), c);
        }
        Ok(out)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial add")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial sub")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial mul")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.nvars;
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            for (v, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = if v < n { format!("z{}", v + 1) } else { format!("w{}", v - n + 1) };
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", c, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn cancellation_and_products() {
        let (z1, z2, w1) = (Poly::z(2, 0), Poly::z(2, 1), Poly::w(2, 0));
        assert_eq!(&(&z1 + &w1) + &(&z1 - &w1), z1.scale(&g(2, 0)));
        let p = &z1 * &z2;
        assert_eq!(p.terms().next().unwrap().0.exps(), &[1, 1, 0, 0]);
        assert_eq!(&(&z1 + &z2) * &(&z1 - &z2), &z1.pow(2) - &z2.pow(2));
    }

    #[test]
    fn nvars_mismatch_is_an_error() {
        assert!(matches!(Poly::z(1, 0).checked_add(&Poly::z(2, 0)), Err(Error::Input(_))));
    }

    #[test]
    fn conjugation() {
        let p = Poly::z(2, 0).scale(&g(0, 1));
        assert_eq!(p.conjugate(), Poly::w(2, 0).scale(&g(0, -1)));
        let q = &Poly::z(2, 0) * &Poly::w(2, 1);
        assert_eq!(q.conjugate(), &Poly::z(2, 1) * &Poly::w(2, 0));
    }

    #[test]
    fn evaluation_on_real_slice() {
        let p = &Poly::z(1, 0) * &Poly::w(1, 0);
        assert_eq!(p.evaluate(&[g(1, 1)]).unwrap(), g(2, 0));
        let q = &(&Poly::z(2, 0) * &Poly::w(2, 0)) + &(&Poly::z(2, 1) * &Poly::w(2, 1));
        assert_eq!(q.evaluate(&[g(1, 0), g(0, 1)]).unwrap(), g(2, 0));
    }

    #[test]
    fn grlex_leading_term() {
        let p = &(&Poly::z(2, 1).pow(2) + &Poly::z(2, 0)) + &(&Poly::z(2, 0) * &Poly::z(2, 1));
        assert_eq!(p.leading().unwrap().0.exps(), &[1, 1, 0, 0]);
        let q = &Poly::z(2, 0) + &Poly::w(2, 0);
        assert_eq!(q.leading().unwrap().0.exps(), &[1, 0, 0, 0]);
    }

    #[test]
    fn exact_division() {
        let a = &Poly::z(2, 0) + &Poly::z(2, 1);
        let b = &Poly::z(2, 0) - &Poly::w(2, 1);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.div_exact(&Poly::z(2, 0)).is_none());
    }

    #[test]
    fn derivative() {
        let p = &Poly::z(2, 0).pow(2) * &Poly::w(2, 1).pow(3);
        assert_eq!(p.partial_w(1), (&Poly::z(2, 0).pow(2) * &Poly::w(2, 1).pow(2)).scale(&g(3, 0)));
        assert!(Poly::z(2, 0).pow(3).partial_w(0).is_zero());
    }
}
