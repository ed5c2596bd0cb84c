use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;

/// The optional `Q`, `Q*` or `Hom(Q, Q)` factor of a basis word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum QSlot {
    #[default]
    None,
    /// `ε_j`
    Q(usize),
    /// `ε_j*`
    Dual(usize),
    /// `ε_i ⊗ ε_j*`
    Endo(usize, usize),
}

impl QSlot {
    pub fn is_none(&self) -> bool {
        matches!(self, QSlot::None)
    }

    /// `none`, `q1`, `qd2`, `end1,2` with 1-based indices.
    pub fn to_code(&self) -> String {
        match *self {
            QSlot::None => "none".into(),
            QSlot::Q(j) => format!("q{}", j + 1),
            QSlot::Dual(j) => format!("qd{}", j + 1),
            QSlot::Endo(i, j) => format!("end{},{}", i + 1, j + 1),
        }
    }

    pub fn from_code(s: &str) -> Option<QSlot> {
        let idx = |t: &str| t.trim().parse::<usize>().ok().filter(|&k| k >= 1).map(|k| k - 1);
        if s == "none" || s.is_empty() {
            Some(QSlot::None)
        } else if let Some(rest) = s.strip_prefix("end") {
            let (a, b) = rest.split_once(',')?;
            Some(QSlot::Endo(idx(a)?, idx(b)?))
        } else if let Some(rest) = s.strip_prefix("qd") {
            Some(QSlot::Dual(idx(rest)?))
        } else if let Some(rest) = s.strip_prefix('q') {
            Some(QSlot::Q(idx(rest)?))
        } else {
            None
        }
    }
}

/// A basis element `θ_A e_B ε*_α [ε*] [slot]`.
///
/// `θ` (antiholomorphic coframe) and `e` (frame of `E`) generators all
/// anticommute; the canonical order lists the `θ`s first. The symmetric part
/// uses divided powers `ε*_α = Π (ε_j*)^{α_j} / α_j!`. The `det Q*` marker and
/// the slot are even.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisWord {
    pub form: u32,
    pub ext: u32,
    pub sym: Box<[u32]>,
    pub detq: bool,
    pub qslot: QSlot,
}

impl BasisWord {
    pub fn unit(r: usize) -> Self {
        Self { form: 0, ext: 0, sym: vec![0; r].into_boxed_slice(), detq: false, qslot: QSlot::None }
    }

    pub fn form_degree(&self) -> u32 {
        self.form.count_ones()
    }

    pub fn ext_degree(&self) -> u32 {
        self.ext.count_ones()
    }

    pub fn sym_degree(&self) -> u32 {
        self.sym.iter().sum()
    }

    pub fn parity(&self) -> u32 {
        (self.form_degree() + self.ext_degree()) & 1
    }

    /// Level `k` in the complex: `E_0 = Q`, `E_1 = E`, and
    /// `E_k = Λ^{r+k-1} E ⊗ S^{k-2} Q* ⊗ det Q*` for `k ≥ 2`.
    pub fn level(&self, r: usize) -> Option<usize> {
        let q = self.ext_degree() as usize;
        let s = self.sym_degree() as usize;
        if self.detq {
            if q + 1 >= r + 2 && q + 1 - r == s + 2 {
                return Some(q + 1 - r);
            }
            return None;
        }
        if s != 0 {
            return None;
        }
        match (q, self.qslot) {
            (1, QSlot::None | QSlot::Dual(_)) => Some(1),
            (0, _) => Some(0),
            _ => None,
        }
    }

    pub fn form_indices(&self) -> Vec<usize> {
        bits(self.form)
    }

    pub fn ext_indices(&self) -> Vec<usize> {
        bits(self.ext)
    }

    /// Product of two words: `None` if it vanishes, otherwise the sign and
    /// the divided-power multiplicity. Panics are avoided by the caller
    /// checking `detq`/`qslot` compatibility first.
    pub fn product(&self, other: &BasisWord) -> Option<(BasisWord, bool, BigInt)> {
        if self.form & other.form != 0 || self.ext & other.ext != 0 {
            return None;
        }
        let mut negative = (self.ext_degree() * other.form_degree()) & 1 == 1;
        negative ^= shuffle_sign(self.form, other.form);
        negative ^= shuffle_sign(self.ext, other.ext);
        let mut mult = BigInt::from(1);
        let sym: Box<[u32]> = self
            .sym
            .iter()
            .zip(other.sym.iter())
            .map(|(&a, &b)| {
                if a > 0 && b > 0 {
                    mult *= binomial(BigInt::from(a + b), BigInt::from(a));
                }
                a + b
            })
            .collect();
        let qslot = if self.qslot.is_none() { other.qslot } else { self.qslot };
        Some((
            BasisWord { form: self.form | other.form, ext: self.ext | other.ext, sym, detq: self.detq || other.detq, qslot },
            negative,
            mult,
        ))
    }
}

pub(crate) fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Number of set bits strictly below position `i`.
pub(crate) fn below(mask: u32, i: usize) -> u32 {
    (mask & ((1u32 << i) - 1)).count_ones()
}

/// Sign of merging the increasing sequences `a` then `b` into sorted order.
fn shuffle_sign(a: u32, b: u32) -> bool {
    let mut inversions = 0;
    for j in bits(b) {
        inversions += (a >> j >> 1).count_ones();
    }
    inversions & 1 == 1
}

impl fmt::Display for BasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for l in self.form_indices() {
            parts.push(format!("θ{}", l + 1));
        }
        for i in self.ext_indices() {
            parts.push(format!("e{}", i + 1));
        }
        let body = parts.join("∧");
        let mut out = if body.is_empty() { "1".to_string() } else { body };
        if self.sym.iter().any(|&a| a > 0) {
            let alpha: Vec<String> = self.sym.iter().map(|a| a.to_string()).collect();
            out.push_str(&format!("⊗ε*[{}]", alpha.join(",")));
        }
        if self.detq {
            out.push_str("⊗detQ*");
        }
        if !self.qslot.is_none() {
            out.push_str(&format!("⊗{}", self.qslot.to_code()));
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(form: u32, ext: u32) -> BasisWord {
        BasisWord { form, ext, ..BasisWord::unit(1) }
    }

    #[test]
    fn signs() {
        let e1 = word(0, 0b01);
        let e2 = word(0, 0b10);
        let (_, s12, _) = e1.product(&e2).unwrap();
        let (_, s21, _) = e2.product(&e1).unwrap();
        assert!(!s12 && s21);
        assert!(e1.product(&e1).is_none());
        let t1 = word(1, 0);
        let (_, a, _) = t1.product(&e1).unwrap();
        let (_, b, _) = e1.product(&t1).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn qslot_codes_round_trip() {
        for s in [QSlot::None, QSlot::Q(0), QSlot::Dual(2), QSlot::Endo(1, 0)] {
            assert_eq!(QSlot::from_code(&s.to_code()), Some(s));
        }
        assert_eq!(QSlot::from_code("qd0"), None);
    }
}
