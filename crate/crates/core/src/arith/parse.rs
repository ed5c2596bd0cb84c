//! Text syntax for polynomials: `3*z1^2 - i*w2 + (z1 + 1)^2/4`.
//!
//! Variables are `z1..zn` and `w1..wn`, `i` is the imaginary unit, and
//! division is allowed only by integer literals.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::gaussian::GaussianRational;
use super::poly::Poly;
use crate::error::{Error, Result};

pub fn parse_poly(src: &str, nvars: usize) -> Result<Poly> {
    let mut p = Parser { s: src.as_bytes(), pos: 0, nvars };
    let out = p.expr()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Input(format!("{msg} at offset {}", self.pos))
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.ws();
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        return Err(self.err("division by zero"));
                    }
                    let inv = BigRational::new(1.into(), d);
                    acc = acc.scale(&GaussianRational::real(inv));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let n = self.nvars;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = BigRational::from_integer(self.integer()?);
                // `3i` is read as `3*i`.
                if self.s.get(self.pos) == Some(&b'i') {
                    self.pos += 1;
                    return Ok(Poly::constant(n, GaussianRational::new(BigRational::from_integer(0.into()), v)));
                }
                Ok(Poly::constant(n, GaussianRational::real(v)))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Poly::constant(n, GaussianRational::i()))
            }
            Some(c @ (b'z' | b'w')) => {
                self.pos += 1;
                let k = self.integer()?;
                let k: usize = k.try_into().map_err(|_| self.err("bad variable index"))?;
                if k == 0 || k > n {
                    return Err(self.err(&format!("variable index {k} outside 1..={n}")));
                }
                Ok(if c == b'z' { Poly::z(n, k - 1) } else { Poly::w(n, k - 1) })
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }
}
