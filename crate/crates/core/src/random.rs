//! Seeded random corpora for tests, benchmarks and the CLI.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::arith::{GaussianRational, Monomial, Poly, RationalFunction};
use crate::division::monomials_up_to;
use crate::geometry::gram_det;
use crate::morphism::MorphismData;
use crate::multilinear::complex::level_basis;
use crate::multilinear::{GradedElement, QSlot};

/// Gaussian integer with both parts in `-k..=k`.
pub fn gaussian_int<R: Rng>(rng: &mut R, k: i64) -> GaussianRational {
    GaussianRational::from_ints(rng.gen_range(-k..=k), rng.gen_range(-k..=k))
}

fn nonzero_gaussian_int<R: Rng>(rng: &mut R, k: i64) -> GaussianRational {
    loop {
        let c = gaussian_int(rng, k);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Holomorphic polynomial in `n` variables of degree `≤ d` with about
/// `terms` monomials.
pub fn random_holomorphic<R: Rng>(rng: &mut R, n: usize, d: u32, terms: usize) -> Poly {
    let monos = monomials_up_to(n, d);
    let mut p = Poly::zero(n);
    for _ in 0..terms {
        let z = monos.choose(rng).expect("at least the constant monomial");
        let exps: Vec<u32> = z.iter().copied().chain(std::iter::repeat(0).take(n)).collect();
        p = &p + &Poly::term(n, Monomial::new(exps), nonzero_gaussian_int(rng, 3));
    }
    p
}

/// Polynomial in `z` and `w = z̄` of bidegree at most `(d, d)`.
pub fn random_real_analytic<R: Rng>(rng: &mut R, n: usize, d: u32, terms: usize) -> Poly {
    let monos = monomials_up_to(n, d);
    let mut p = Poly::zero(n);
    for _ in 0..terms {
        let z = monos.choose(rng).expect("nonempty");
        let w = monos.choose(rng).expect("nonempty");
        let exps: Vec<u32> = z.iter().chain(w.iter()).copied().collect();
        p = &p + &Poly::term(n, Monomial::new(exps), nonzero_gaussian_int(rng, 2));
    }
    p
}

/// Random `r × m` morphism with entries of degree `≤ d`, generically
/// surjective (`det(ff*) ≢ 0`).
pub fn random_morphism<R: Rng>(rng: &mut R, n: usize, m: usize, r: usize, d: u32) -> MorphismData {
    loop {
        let coldeg: Vec<u32> = (0..m).map(|_| rng.gen_range(0..=d)).collect();
        let entries = (0..r)
            .map(|_| (0..m).map(|k| random_holomorphic(rng, n, coldeg[k], 2)).collect())
            .collect();
        let f = MorphismData::new(n, entries, coldeg).expect("degrees respected by construction");
        if !gram_det(&f).is_zero() {
            return f;
        }
    }
}

/// Morphism whose entries are generic linear forms `Σ a_l z_l`.
pub fn generic_linear_morphism<R: Rng>(rng: &mut R, n: usize, m: usize, r: usize) -> MorphismData {
    loop {
        let entries = (0..r)
            .map(|_| {
                (0..m)
                    .map(|_| {
                        (0..n).fold(Poly::zero(n), |acc, l| &acc + &Poly::z(n, l).scale(&gaussian_int(rng, 3)))
                    })
                    .collect()
            })
            .collect();
        let f = MorphismData::new(n, entries, vec![1; m]).expect("linear entries");
        if !gram_det(&f).is_zero() {
            return f;
        }
    }
}

/// Random element of level `k` (`k ≥ 1`) with polynomial coefficients,
/// optionally carrying `(0,1)`-forms of degree `forms`.
pub fn random_level_element<R: Rng>(
    rng: &mut R,
    n: usize,
    m: usize,
    r: usize,
    k: usize,
    forms: u32,
    terms: usize,
) -> GradedElement {
    let basis = level_basis(m, r, k);
    let mut x = GradedElement::zero(n, m, r);
    if basis.is_empty() {
        return x;
    }
    let form_masks: Vec<u32> = (0u32..1 << n).filter(|s| s.count_ones() == forms).collect();
    for _ in 0..terms {
        let mut w = basis.choose(rng).expect("nonempty").clone();
        if let Some(&mask) = form_masks.choose(rng) {
            w.form = mask;
        }
        if k == 1 && rng.gen_bool(0.5) {
            w.qslot = QSlot::Dual(rng.gen_range(0..r));
        }
        let c = RationalFunction::from_poly(random_real_analytic(rng, n, 1, 2));
        let t = GradedElement::term(n, m, r, w, c).expect("basis word");
        x = x.checked_add(&t).expect("same dims");
    }
    x
}

/// Point with small Gaussian-integer coordinates.
pub fn random_point<R: Rng>(rng: &mut R, n: usize) -> Vec<GaussianRational> {
    (0..n).map(|_| gaussian_int(rng, 3)).collect()
}
