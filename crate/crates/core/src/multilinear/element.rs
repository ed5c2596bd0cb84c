use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use super::word::{below, BasisWord, QSlot};
use crate::arith::{GaussianRational, Poly, RationalFunction};
use crate::error::{Error, Result};

/// Finite sum of basis words with rational-function coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    n: usize,
    m: usize,
    r: usize,
    terms: BTreeMap<BasisWord, RationalFunction>,
}

impl GradedElement {
    pub fn zero(n: usize, m: usize, r: usize) -> Self {
        Self { n, m, r, terms: BTreeMap::new() }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.n, self.m, self.r)
    }

    fn same_dims(&self, other: &Self) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::Input(format!("rank data mismatch: {:?} vs {:?}", self.dims(), other.dims())));
        }
        Ok(())
    }

    /// A single term; validates the word against the rank data.
    pub fn term(n: usize, m: usize, r: usize, word: BasisWord, coeff: RationalFunction) -> Result<Self> {
        let mut out = Self::zero(n, m, r);
        out.check_word(&word)?;
        if coeff.nvars() != n {
            return Err(Error::Input("coefficient ring does not match n".into()));
        }
        out.add_term(word, coeff);
        Ok(out)
    }

    pub fn check_word(&self, w: &BasisWord) -> Result<()> {
        let slot_ok = match w.qslot {
            QSlot::None => true,
            QSlot::Q(j) | QSlot::Dual(j) => j < self.r,
            QSlot::Endo(i, j) => i < self.r && j < self.r,
        };
        if w.form >> self.n != 0 || w.ext >> self.m != 0 || w.sym.len() != self.r || !slot_ok {
            return Err(Error::Input(format!("basis word {w} does not fit (n, m, r) = {:?}", self.dims())));
        }
        Ok(())
    }

    pub fn scalar(n: usize, m: usize, r: usize, c: RationalFunction) -> Self {
        let mut out = Self::zero(n, m, r);
        out.add_term(BasisWord::unit(r), c);
        out
    }

    fn generator(n: usize, m: usize, r: usize, word: BasisWord) -> Self {
        let mut out = Self::zero(n, m, r);
        out.terms.insert(word, RationalFunction::one(n));
        out
    }

    /// `e_i` (0-based).
    pub fn e(n: usize, m: usize, r: usize, i: usize) -> Self {
        Self::generator(n, m, r, BasisWord { ext: 1 << i, ..BasisWord::unit(r) })
    }

    /// `θ_l` (0-based).
    pub fn theta(n: usize, m: usize, r: usize, l: usize) -> Self {
        Self::generator(n, m, r, BasisWord { form: 1 << l, ..BasisWord::unit(r) })
    }

    /// Divided power `ε*_α`.
    pub fn sym(n: usize, m: usize, r: usize, alpha: &[u32]) -> Self {
        Self::generator(n, m, r, BasisWord { sym: alpha.into(), ..BasisWord::unit(r) })
    }

    pub fn detq(n: usize, m: usize, r: usize) -> Self {
        Self::generator(n, m, r, BasisWord { detq: true, ..BasisWord::unit(r) })
    }

    pub fn slot(n: usize, m: usize, r: usize, s: QSlot) -> Self {
        Self::generator(n, m, r, BasisWord { qslot: s, ..BasisWord::unit(r) })
    }

    /// `Σ_i v_i e_i` for an `E`-column.
    pub fn from_e_column(m: usize, r: usize, v: &[RationalFunction]) -> Self {
        let n = v.first().map(|c| c.nvars()).unwrap_or(0);
        let mut out = Self::zero(n, m, r);
        for (i, c) in v.iter().enumerate() {
            out.add_term(BasisWord { ext: 1 << i, ..BasisWord::unit(r) }, c.clone());
        }
        out
    }

    /// The identity `I_Q = Σ_j ε_j ⊗ ε_j*`.
    pub fn identity_q(n: usize, m: usize, r: usize) -> Self {
        let mut out = Self::zero(n, m, r);
        for j in 0..r {
            out.terms.insert(BasisWord { qslot: QSlot::Endo(j, j), ..BasisWord::unit(r) }, RationalFunction::one(n));
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisWord, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &BasisWord) -> RationalFunction {
        self.terms.get(w).cloned().unwrap_or_else(|| RationalFunction::zero(self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, w: BasisWord, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_dims(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.m, self.r);
        }
        self.map_coeffs(|x| x * c)
    }

    pub fn scale_int(&self, num: i64, den: i64) -> Self {
        let c = GaussianRational::real(BigRational::new(num.into(), den.into()));
        self.map_coeffs(|x| x.scale(&c))
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        self.map_coeffs(|x| x.mul_poly(p))
    }

    pub fn map_coeffs(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        let mut out = Self::zero(self.n, self.m, self.r);
        for (w, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.terms.insert(w.clone(), v);
            }
        }
        out
    }

    pub fn conjugate_coeffs(&self) -> Self {
        self.map_coeffs(|c| c.conjugate())
    }

    /// Exterior/symmetric product; `det Q*` and slot factors may appear in at
    /// most one operand.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.same_dims(other)?;
        let mut out = Self::zero(self.n, self.m, self.r);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                if wa.detq && wb.detq {
                    return Err(Error::Input("product of two det Q* factors".into()));
                }
                if !wa.qslot.is_none() && !wb.qslot.is_none() {
                    return Err(Error::Input("product of two Q/Q* slot factors".into()));
                }
                let Some((w, negative, mult)) = wa.product(wb) else { continue };
                let mut c = ca * cb;
                if mult != 1.into() || negative {
                    let k = if negative { -mult } else { mult };
                    c = c.scale(&GaussianRational::real(BigRational::from_integer(k)));
                }
                out.add_term(w, c);
            }
        }
        Ok(out)
    }

    /// Interior multiplication `δ_η` by an `E*`-row, an antiderivation that
    /// passes the `θ` generators with sign `(-1)^{|A|}`.
    pub fn interior_mult(&self, eta: &[Poly]) -> Result<Self> {
        if eta.len() != self.m {
            return Err(Error::Input(format!("covector of length {} for m = {}", eta.len(), self.m)));
        }
        let mut out = Self::zero(self.n, self.m, self.r);
        for (w, c) in &self.terms {
            let base = w.form_degree();
            for (t, b) in w.ext_indices().into_iter().enumerate() {
                if eta[b].is_zero() {
                    continue;
                }
                let nw = BasisWord { ext: w.ext & !(1 << b), ..w.clone() };
                let coeff = c.mul_poly(&eta[b]);
                out.add_term(nw, if (base as usize + t) % 2 == 1 { -&coeff } else { coeff });
            }
        }
        Ok(out)
    }

    /// `∂̄ = Σ_l θ_l ∧ ∂/∂w_l`, acting from the left.
    pub fn dbar(&self) -> Self {
        let mut out = Self::zero(self.n, self.m, self.r);
        for (w, c) in &self.terms {
            for l in 0..self.n {
                if w.form >> l & 1 == 1 {
                    continue;
                }
                let d = c.partial_w(l);
                if d.is_zero() {
                    continue;
                }
                let nw = BasisWord { form: w.form | 1 << l, ..w.clone() };
                out.add_term(nw, if below(w.form, l) % 2 == 1 { -&d } else { d });
            }
        }
        out
    }

    /// Evaluates a `Hom(Q, ·)`-valued element on a `Q`-column `φ`: the slot
    /// `ε_j*` pairs with `φ_j`. Terms without a dual slot are rejected.
    pub fn contract_q(&self, phi: &[Poly]) -> Result<Self> {
        if phi.len() != self.r {
            return Err(Error::Input(format!("Q-column of length {} for r = {}", phi.len(), self.r)));
        }
        let mut out = Self::zero(self.n, self.m, self.r);
        for (w, c) in &self.terms {
            let (nslot, j) = match w.qslot {
                QSlot::Dual(j) => (QSlot::None, j),
                QSlot::Endo(i, j) => (QSlot::Q(i), j),
                _ => return Err(Error::Input(format!("term {w} has no Q* slot to contract"))),
            };
            out.add_term(BasisWord { qslot: nslot, ..w.clone() }, c.mul_poly(&phi[j]));
        }
        Ok(out)
    }

    /// Drops the `det Q*` marker from every term.
    pub fn without_detq(&self) -> Self {
        let mut out = Self::zero(self.n, self.m, self.r);
        for (w, c) in &self.terms {
            out.add_term(BasisWord { detq: false, ..w.clone() }, c.clone());
        }
        out
    }

    /// Terms with the given (form degree, ext degree, sym degree).
    pub fn component(&self, form: u32, ext: u32, sym: u32) -> Self {
        self.filter(|w| w.form_degree() == form && w.ext_degree() == ext && w.sym_degree() == sym)
    }

    pub fn filter(&self, keep: impl Fn(&BasisWord) -> bool) -> Self {
        let mut out = Self::zero(self.n, self.m, self.r);
        for (w, c) in &self.terms {
            if keep(w) {
                out.terms.insert(w.clone(), c.clone());
            }
        }
        out
    }

    /// Distinct (form, ext, sym) degrees present.
    pub fn degrees(&self) -> Vec<(u32, u32, u32)> {
        let mut d: Vec<_> = self.terms.keys().map(|w| (w.form_degree(), w.ext_degree(), w.sym_degree())).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Levels present; `None` if some term lies outside the complex.
    pub fn levels(&self) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        for w in self.terms.keys() {
            out.push(w.level(self.r)?);
        }
        out.sort_unstable();
        out.dedup();
        Some(out)
    }

    /// Coefficients evaluated at a point.
    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<BTreeMap<BasisWord, GaussianRational>> {
        let mut out = BTreeMap::new();
        for (w, c) in &self.terms {
            let v = c.evaluate(point)?;
            if !v.is_zero() {
                out.insert(w.clone(), v);
            }
        }
        Ok(out)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn common_denominator(&self) -> Poly {
        self.terms.values().fold(Poly::one(self.n), |acc, c| crate::arith::gcd::lcm(&acc, c.den()))
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}] {w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly;

    fn el(n: usize, m: usize, r: usize) -> impl Fn(usize) -> GradedElement {
        move |i| GradedElement::e(n, m, r, i)
    }

    #[test]
    fn anticommutation() {
        let e = el(2, 2, 1);
        let s = e(0).wedge(&e(1)).unwrap().checked_add(&e(1).wedge(&e(0)).unwrap()).unwrap();
        assert!(s.is_zero());
        let t = GradedElement::theta(2, 2, 1, 0);
        assert_eq!(t.wedge(&e(0)).unwrap(), e(0).wedge(&t).unwrap().neg());
    }

    #[test]
    fn divided_powers() {
        for a in 0..=3u32 {
            for b in 0..=3u32 {
                let x = GradedElement::sym(1, 1, 1, &[a]).wedge(&GradedElement::sym(1, 1, 1, &[b])).unwrap();
                let expect = num_integer::binomial(a + b, a) as i64;
                let y = GradedElement::sym(1, 1, 1, &[a + b]).scale_int(expect, 1);
                assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn interior_multiplication() {
        let e = el(2, 2, 1);
        let eta = [parse_poly("z1", 2).unwrap(), parse_poly("z2", 2).unwrap()];
        let x = e(0).wedge(&e(1)).unwrap().interior_mult(&eta).unwrap();
        let expect = e(1).mul_poly(&eta[0]).checked_sub(&e(0).mul_poly(&eta[1])).unwrap();
        assert_eq!(x, expect);
        let unit = [Poly::one(2), Poly::zero(2)];
        assert!(e(1).interior_mult(&unit).unwrap().is_zero());
    }

    #[test]
    fn dbar_examples() {
        let c = RationalFunction::from_poly(parse_poly("z1^2*w2^3", 2).unwrap());
        let x = GradedElement::scalar(2, 1, 1, c).dbar();
        let expect = GradedElement::theta(2, 1, 1, 1).mul_poly(&parse_poly("3*z1^2*w2^2", 2).unwrap());
        assert_eq!(x, expect);
        let inv = RationalFunction::new(Poly::one(1), parse_poly("z1*w1", 1).unwrap()).unwrap();
        let y = GradedElement::scalar(1, 1, 1, inv).dbar();
        let expect = GradedElement::theta(1, 1, 1, 0)
            .scale(&RationalFunction::new(Poly::from_int(1, -1), parse_poly("z1*w1^2", 1).unwrap()).unwrap());
        assert_eq!(y, expect);
        let hol = GradedElement::scalar(2, 1, 1, parse_poly("z1^3 + z2", 2).unwrap().into());
        assert!(hol.dbar().is_zero());
    }

    #[test]
    fn double_markers_rejected() {
        let d = GradedElement::detq(1, 1, 1);
        assert!(d.wedge(&d).is_err());
        let q = GradedElement::slot(1, 1, 1, QSlot::Dual(0));
        assert!(q.wedge(&q).is_err());
        assert!(d.wedge(&GradedElement::e(1, 2, 1, 0)).is_err());
    }
}
