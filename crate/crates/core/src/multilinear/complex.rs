//! The differentials of the complex
//! `… → E_3 → E_2 → E → Q`, with `E_k = Λ^{r+k-1}E ⊗ S^{k-2}Q* ⊗ det Q*`.

use num_integer::binomial;
use serde::Serialize;

use super::element::GradedElement;
use super::word::{BasisWord, QSlot};
use crate::arith::GaussianRational;
use crate::error::{Error, Result};
use crate::linalg;
use crate::morphism::MorphismData;

fn check_dims(f: &MorphismData, x: &GradedElement) -> Result<()> {
    let (n, m, r) = x.dims();
    if (n, m, r) != (f.n(), f.m(), f.r()) {
        return Err(Error::Input(format!("element dims {:?} do not match the morphism", (n, m, r))));
    }
    Ok(())
}

fn require_level(x: &GradedElement, r: usize, ok: impl Fn(usize) -> bool, what: &str) -> Result<()> {
    for w in x.terms().map(|(w, _)| w) {
        match w.level(r) {
            Some(k) if ok(k) => {}
            Some(k) => return Err(Error::Input(format!("{what}: term {w} lies at level {k}"))),
            None => return Err(Error::Input(format!("{what}: term {w} is not in the complex"))),
        }
    }
    Ok(())
}

/// `δ = Σ_j δ_{f_j} ⊗ δ_{ε_j}: E_{k+1} → E_k` for `k ≥ 2`.
pub fn delta_complex(f: &MorphismData, x: &GradedElement) -> Result<GradedElement> {
    check_dims(f, x)?;
    require_level(x, f.r(), |k| k >= 3, "delta_complex needs level ≥ 3")?;
    let (n, m, r) = x.dims();
    let mut out = GradedElement::zero(n, m, r);
    for j in 0..r {
        // δ_{ε_j} on divided powers: ε*_α ↦ ε*_{α - e_j}.
        let lowered = {
            let mut y = GradedElement::zero(n, m, r);
            for (w, c) in x.terms() {
                if w.sym[j] == 0 {
                    continue;
                }
                let mut sym = w.sym.clone();
                sym[j] -= 1;
                y.add_term(BasisWord { sym, ..w.clone() }, c.clone());
            }
            y
        };
        out = out.checked_add(&lowered.interior_mult(f.row(j))?)?;
    }
    Ok(out)
}

/// `δ_F(ξ ⊗ ε*) = δ_{f_r} ⋯ δ_{f_1} ξ` on `E_2`.
pub fn delta_f(f: &MorphismData, x: &GradedElement) -> Result<GradedElement> {
    check_dims(f, x)?;
    require_level(x, f.r(), |k| k == 2, "delta_F needs level 2")?;
    let mut y = x.without_detq();
    for j in 0..f.r() {
        y = y.interior_mult(f.row(j))?;
    }
    Ok(y)
}

/// `f: E → Q`, sending `e_k ⊗ slot` to `Σ_i f_i^k ε_i ⊗ slot`.
pub fn apply_f(f: &MorphismData, x: &GradedElement) -> Result<GradedElement> {
    check_dims(f, x)?;
    require_level(x, f.r(), |k| k == 1, "f needs level 1")?;
    let (n, m, r) = x.dims();
    let mut out = GradedElement::zero(n, m, r);
    for (w, c) in x.terms() {
        let k = w.ext_indices()[0];
        let sign_neg = w.form_degree() % 2 == 1;
        for i in 0..r {
            let p = f.entry(i, k);
            if p.is_zero() {
                continue;
            }
            let qslot = match w.qslot {
                QSlot::None => QSlot::Q(i),
                QSlot::Dual(j) => QSlot::Endo(i, j),
                other => return Err(Error::Input(format!("cannot apply f to a term with slot {}", other.to_code()))),
            };
            let v = c.mul_poly(p);
            out.add_term(BasisWord { ext: 0, qslot, ..w.clone() }, if sign_neg { -&v } else { v });
        }
    }
    Ok(out)
}

/// The differential of the complex, dispatched per level.
pub fn delta(f: &MorphismData, x: &GradedElement) -> Result<GradedElement> {
    check_dims(f, x)?;
    let r = f.r();
    let pick = |k: usize| x.filter(|w| w.level(r) == Some(k));
    let levels = x
        .levels()
        .ok_or_else(|| Error::Input("element has terms outside the complex".into()))?;
    let (n, m, _) = x.dims();
    let mut out = GradedElement::zero(n, m, r);
    for k in levels {
        let part = pick(k);
        let image = match k {
            0 => return Err(Error::Input("δ is not defined on level 0".into())),
            1 => apply_f(f, &part)?,
            2 => delta_f(f, &part)?,
            _ => delta_complex(f, &part)?,
        };
        out = out.checked_add(&image)?;
    }
    Ok(out)
}

/// Basis of level `k` (no forms, no slot).
pub fn level_basis(m: usize, r: usize, k: usize) -> Vec<BasisWord> {
    match k {
        0 => (0..r).map(|i| BasisWord { qslot: QSlot::Q(i), ..BasisWord::unit(r) }).collect(),
        1 => (0..m).map(|i| BasisWord { ext: 1 << i, ..BasisWord::unit(r) }).collect(),
        _ => {
            let q = r + k - 1;
            if q > m {
                return Vec::new();
            }
            let mut out = Vec::new();
            for ext in subsets(m, q) {
                for alpha in compositions(r, (k - 2) as u32) {
                    out.push(BasisWord { ext, sym: alpha.into(), detq: true, ..BasisWord::unit(r) });
                }
            }
            out
        }
    }
}

/// Bitmasks of the `q`-subsets of `0..m`, in increasing order.
pub fn subsets(m: usize, q: usize) -> Vec<u32> {
    let mut out: Vec<u32> = (0u32..1 << m).filter(|s| s.count_ones() as usize == q).collect();
    out.sort_unstable();
    out
}

/// Exponent vectors of length `r` with sum `d`.
pub fn compositions(r: usize, d: u32) -> Vec<Vec<u32>> {
    if r == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in compositions(r - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Matrix of `δ: E_k → E_{k-1}` at a point, columns indexed by the level-`k` basis.
fn delta_matrix(fp: &MorphismData, k: usize) -> Result<Vec<Vec<GaussianRational>>> {
    let (n, m, r) = (fp.n(), fp.m(), fp.r());
    let src = level_basis(m, r, k);
    let dst = level_basis(m, r, k - 1);
    let mut mat = vec![vec![GaussianRational::zero(); src.len()]; dst.len()];
    for (col, w) in src.iter().enumerate() {
        let x = GradedElement::term(n, m, r, w.clone(), crate::arith::RationalFunction::one(n))?;
        let y = delta(fp, &x)?;
        for (row, dw) in dst.iter().enumerate() {
            let c = y.coeff(dw);
            if !c.is_zero() {
                mat[row][col] = c.num().constant_term();
            }
        }
    }
    Ok(mat)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub level: String,
    /// Dimension of the space at this level.
    pub dim: usize,
    pub rank_incoming: usize,
    pub rank_outgoing: usize,
    pub exact: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactnessLevel {
    E,
    E2,
}

/// Exact rank check of `E_2 → E → Q` (level `E`) or `E_3 → E_2 → E` (level `E₂`).
pub fn exactness_at_point(f: &MorphismData, point: &[GaussianRational], level: ExactnessLevel) -> Result<RankReport> {
    let g = crate::geometry::gram_det(f);
    let gv = g.evaluate(point)?;
    if gv.is_zero() {
        return Err(Error::Precondition("det(ff*) = 0 at the point: f is not surjective there".into()));
    }
    let fp = f.at_point(point)?;
    let (m, r) = (f.m(), f.r());
    let k = match level {
        ExactnessLevel::E => 1,
        ExactnessLevel::E2 => 2,
    };
    let dim = level_basis(m, r, k).len();
    let rank_out = linalg::rank(delta_matrix(&fp, k)?);
    let rank_in = if level_basis(m, r, k + 1).is_empty() { 0 } else { linalg::rank(delta_matrix(&fp, k + 1)?) };
    debug_assert_eq!(dim, if k == 1 { m } else { binomial(m, r + 1) });
    Ok(RankReport {
        level: if k == 1 { "E".into() } else { "E2".into() },
        dim,
        rank_incoming: rank_in,
        rank_outgoing: rank_out,
        exact: rank_in + rank_out == dim,
    })
}
