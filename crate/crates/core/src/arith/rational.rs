//! Rational functions `num / den` in `z` and `w`, kept in lowest terms with a
//! monic denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gaussian::GaussianRational;
use super::gcd::gcd;
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if num.nvars() != den.nvars() {
            return Err(Error::Input("numerator and denominator live in different rings".into()));
        }
        if den.is_zero() {
            return Err(Error::Input("zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        Self { num: p, den: Poly::one(n) }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Poly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Poly::one(nvars))
    }

    pub fn constant(nvars: usize, c: GaussianRational) -> Self {
        Self::from_poly(Poly::constant(nvars, c))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return Self::zero(n);
        }
        if den.is_constant() {
            let inv = den.leading_coeff().inv().expect("nonzero denominator");
            return Self { num: num.scale(&inv), den: Poly::one(n) };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides numerator"), den.div_exact(&g).expect("gcd divides denominator"))
        };
        let lc_inv = den.leading_coeff().inv().expect("nonzero denominator");
        Self { num: num.scale(&lc_inv), den: den.scale(&lc_inv) }
    }

    /// Skips the gcd when the caller knows the fraction is already reduced
    /// up to a unit.
    fn reduced_unchecked(num: Poly, den: Poly) -> Self {
        let lc_inv = den.leading_coeff().inv().expect("nonzero denominator");
        if lc_inv.is_one() {
            return Self { num, den };
        }
        Self { num: num.scale(&lc_inv), den: den.scale(&lc_inv) }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.nvars() != other.nvars() {
            return Err(Error::Input("nvars mismatch".into()));
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.den == other.den {
            let num = self.num.checked_add(&other.num)?;
            if self.den.is_one() {
                return Ok(Self::from_poly(num));
            }
            return Ok(Self::normalized(num, self.den.clone()));
        }
        if self.den.is_one() {
            let num = &(&self.num * &other.den) + &other.num;
            return Ok(Self::reduced_unchecked(num, other.den.clone()));
        }
        if other.den.is_one() {
            let num = &self.num + &(&other.num * &self.den);
            return Ok(Self::reduced_unchecked(num, self.den.clone()));
        }
        let g = gcd(&self.den, &other.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = other.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&other.num * &a);
        let den = &(&a * &b) * &g;
        if g.is_one() {
            return Ok(Self::reduced_unchecked(num, den));
        }
        Ok(Self::normalized(num, den))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.nvars() != other.nvars() {
            return Err(Error::Input("nvars mismatch".into()));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars()));
        }
        if self.den.is_one() && other.den.is_one() {
            return Ok(Self::from_poly(&self.num * &other.num));
        }
        // Cross-cancel: num_a/den_b and num_b/den_a.
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let na = self.num.div_exact(&g1).expect("gcd divides");
        let db = other.den.div_exact(&g1).expect("gcd divides");
        let nb = other.num.div_exact(&g2).expect("gcd divides");
        let da = self.den.div_exact(&g2).expect("gcd divides");
        Ok(Self::reduced_unchecked(&na * &nb, &da * &db))
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        if p.is_zero() || self.is_zero() {
            return Self::zero(self.nvars());
        }
        if p.is_constant() {
            return self.scale(&p.constant_term());
        }
        if self.den.is_one() {
            return Self::from_poly(&self.num * p);
        }
        let g = gcd(p, &self.den);
        let pr = p.div_exact(&g).expect("gcd divides");
        let den = self.den.div_exact(&g).expect("gcd divides");
        Self::reduced_unchecked(&self.num * &pr, den)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Input("inverse of zero rational function".into()));
        }
        Ok(Self::reduced_unchecked(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    pub fn conjugate(&self) -> Self {
        Self::reduced_unchecked(self.num.conjugate(), self.den.conjugate())
    }

    /// `d/dw_j` by the quotient rule.
    pub fn partial_w(&self, j: usize) -> Self {
        self.partial(self.nvars() + j)
    }

    pub fn partial(&self, var: usize) -> Self {
        let dn = self.num.partial(var);
        if self.den.is_one() {
            return Self::from_poly(dn);
        }
        let dd = self.den.partial(var);
        if dd.is_zero() {
            return Self::normalized(dn, self.den.clone());
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::normalized(num, &self.den * &self.den)
    }

    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return Err(Error::Pole(format!("denominator {} vanishes at the point", self.den)));
        }
        Ok(&self.num.evaluate(point)? / &d)
    }

    /// Equality by cross-multiplication; agrees with `==` on normalized values.
    pub fn eq_cross(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_add(rhs).expect("rational function add")
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_add(&-rhs).expect("rational function sub")
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_mul(rhs).expect("rational function mul")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse::parse_poly;

    fn rf(num: &str, den: &str, n: usize) -> RationalFunction {
        RationalFunction::new(parse_poly(num, n).unwrap(), parse_poly(den, n).unwrap()).unwrap()
    }

    #[test]
    fn reduces_to_lowest_terms() {
        let a = rf("z1^2 - w1^2", "2*z1 + 2*w1", 1);
        assert_eq!(a.den(), &Poly::one(1));
        assert_eq!(a, rf("z1 - w1", "2", 1));
    }

    #[test]
    fn quotient_rule() {
        let a = rf("1", "z1*w1", 1);
        assert_eq!(a.partial_w(0), rf("-1", "z1*w1^2", 1));
    }

    #[test]
    fn pole_is_reported() {
        let a = rf("1", "z1", 1);
        assert!(matches!(a.evaluate(&[GaussianRational::zero()]), Err(Error::Pole(_))));
        assert_eq!(a.evaluate(&[GaussianRational::from_ints(0, 2)]).unwrap(), &GaussianRational::from_ints(0, -1) / &GaussianRational::from_integer(2));
    }

    #[test]
    fn field_operations() {
        let a = rf("z1", "z1 + w1", 1);
        let b = rf("w1", "z1 + w1", 1);
        assert_eq!(&a + &b, RationalFunction::one(1));
        let c = &a * &rf("z1 + w1", "z1^2", 1);
        assert_eq!(c, rf("1", "z1", 1));
        assert!(rf("0", "1", 1).inv().is_err());
    }
}
