//! Closed-form exponent bounds and seeded sampling of the Łojasiewicz and
//! Briançon–Skoda ratios, plus a heuristic codimension probe.
//!
//! Sampling is evidence, never proof: every verdict here is labeled
//! heuristic. All values are exact rationals at dyadic sample points.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{GaussianRational, Poly};
use crate::division::{auto_cap, minors_morphism, nullstellensatz_solve, DivisionOutcome};
use crate::error::{Error, Result};
use crate::geometry::{determinant_section, gram_det, pointwise_norm};
use crate::morphism::MorphismData;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KollarExponent {
    /// `M = (rd)^{min(n, C(m, r))}`.
    #[serde(serialize_with = "as_decimal")]
    pub exponent: BigUint,
    /// `M · min(n, m - r + 1)`.
    #[serde(serialize_with = "as_decimal")]
    pub solution_degree_bound: BigUint,
}

fn as_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn kollar_exponent(n: usize, m: usize, r: usize, d: u32) -> Result<KollarExponent> {
    if r == 0 || r > m {
        return Err(Error::Input(format!("need 1 ≤ r ≤ m, got r = {r}, m = {m}")));
    }
    let rd = r as u64 * d as u64;
    if rd < 3 {
        return Err(Error::Precondition(format!("rd = {rd} < 3")));
    }
    let e = n.min(binomial(m, r)) as u32;
    let exponent = BigUint::from(rd).pow(e);
    let solution_degree_bound = &exponent * BigUint::from(n.min(m - r + 1));
    Ok(KollarExponent { exponent, solution_degree_bound })
}

/// `|z|^2 = Σ |z_i|^2`.
fn norm_sqr(point: &[GaussianRational]) -> BigRational {
    point.iter().fold(BigRational::zero(), |acc, x| acc + x.norm_sqr())
}

fn check_point(p: &MorphismData, point: &[GaussianRational]) -> Result<()> {
    if point.len() != p.n() {
        return Err(Error::Input(format!("point has {} coordinates, expected {}", point.len(), p.n())));
    }
    Ok(())
}

/// `Σ'_I |F_I(z)|^2 / (1 + |z|^2)^{Σ_{k∈I} d_k}`.
pub fn lojasiewicz_lhs(p: &MorphismData, point: &[GaussianRational]) -> Result<BigRational> {
    check_point(p, point)?;
    let base = BigRational::one() + norm_sqr(point);
    let mut acc = BigRational::zero();
    for mi in determinant_section(p) {
        let v = mi.value.evaluate(point)?.norm_sqr();
        if v.is_zero() {
            continue;
        }
        let dsum: u32 = mi.cols.iter().map(|&k| p.coldeg()[k]).sum();
        acc += v / pow(&base, dsum);
    }
    Ok(acc)
}

fn pow(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

/// Which sampling regime produced a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// Multiscale points near the origin, scale `2^{-e}`.
    Local,
    /// Points with sup-norm in `[2^k, 2^{k+1}]`, `k ≤ 8`.
    Shell,
}

/// Selects which regimes are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regimes {
    Mixed,
    LocalOnly,
    ShellOnly,
}

const DYADIC_BITS: u32 = 12;

fn dyadic(rng: &mut ChaCha8Rng, extra_bits: u32) -> BigRational {
    let half = 1i64 << DYADIC_BITS;
    let num = rng.gen_range(-half..=half);
    BigRational::new(BigInt::from(num), BigInt::from(1) << (DYADIC_BITS + extra_bits))
}

/// The `i`-th sample point. Each index has its own ChaCha stream, so a
/// prefix of a run is exactly a shorter run.
pub fn sample_point(n: usize, seed: u64, index: u64, regimes: Regimes) -> (Vec<GaussianRational>, Regime) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let regime = match regimes {
        Regimes::Mixed if index % 2 == 0 => Regime::Local,
        Regimes::Mixed => Regime::Shell,
        Regimes::LocalOnly => Regime::Local,
        Regimes::ShellOnly => Regime::Shell,
    };
    let mut point = Vec::with_capacity(n);
    match regime {
        Regime::Local => {
            let max_e = (64 - (index + 1).leading_zeros() - 1).min(30);
            let e = rng.gen_range(0..=max_e);
            for _ in 0..n {
                let mut x = GaussianRational::new(dyadic(&mut rng, e), dyadic(&mut rng, e));
                if x.norm_sqr() > BigRational::one() {
                    x = &x * &GaussianRational::from_fraction(1, 2);
                }
                point.push(x);
            }
        }
        Regime::Shell => {
            let k = rng.gen_range(0..=8u32);
            let scale = GaussianRational::real(BigRational::from_integer(BigInt::from(1) << k));
            for _ in 0..n {
                let x = GaussianRational::new(dyadic(&mut rng, 0), dyadic(&mut rng, 0));
                point.push(&x * &scale);
            }
            if n > 0 {
                // Pin one real part to ±2^k so the sup-norm is at least 2^k.
                let j = rng.gen_range(0..n);
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                let re = BigRational::from_integer(BigInt::from(sign) << k);
                point[j] = GaussianRational::new(re, point[j].im().clone());
            }
        }
    }
    (point, regime)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Witness {
    pub index: u64,
    pub point: Vec<GaussianRational>,
    pub value: GaussianRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PrefixExtreme {
    pub count: u64,
    pub value: GaussianRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SampleReport {
    pub seed: u64,
    pub count: u64,
    pub quantity: String,
    pub exponent: u32,
    pub min_value: GaussianRational,
    pub max_value: GaussianRational,
    pub witness_min: Witness,
    pub witness_max: Witness,
    /// Samples discarded because they hit the zero set or a pole.
    pub rejected: u64,
    /// Extreme of interest at `count/4`, `count/2`, `count`.
    pub prefix_extremes: Vec<PrefixExtreme>,
    /// Heuristic: the extreme moved by less than 5% across both doublings.
    pub stable: bool,
    /// Samples that set a new record for the extreme of interest, in order.
    pub witness_sequence: Vec<Witness>,
    pub flags: Vec<String>,
}

/// Evaluates `value_at` on samples `0..count` (in parallel when enabled) and
/// returns the accepted values in index order.
fn evaluate_samples<F>(n: usize, seed: u64, count: u64, regimes: Regimes, value_at: F) -> Vec<(u64, Vec<GaussianRational>, Option<BigRational>)>
where
    F: Fn(&[GaussianRational]) -> Option<BigRational> + Sync,
{
    let eval = |i: u64| {
        let (pt, _) = sample_point(n, seed, i, regimes);
        let v = value_at(&pt);
        (i, pt, v)
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..count).into_par_iter().map(eval).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(eval).collect()
    }
}

fn rel_change(a: &BigRational, b: &BigRational) -> Option<BigRational> {
    let denom = if a.is_zero() { b.clone() } else { a.clone() };
    if denom.is_zero() {
        return Some(BigRational::zero());
    }
    let d = (b - a) / denom;
    Some(if d < BigRational::zero() { -d } else { d })
}

fn summarize(
    seed: u64,
    count: u64,
    quantity: &str,
    exponent: u32,
    samples: Vec<(u64, Vec<GaussianRational>, Option<BigRational>)>,
    track_max: bool,
) -> Result<SampleReport> {
    let rejected = samples.iter().filter(|s| s.2.is_none()).count() as u64;
    let accepted: Vec<(u64, Vec<GaussianRational>, BigRational)> =
        samples.into_iter().filter_map(|(i, p, v)| v.map(|v| (i, p, v))).collect();
    if accepted.is_empty() {
        return Err(Error::Degenerate("every sample point was rejected".into()));
    }
    let mk = |(i, p, v): &(u64, Vec<GaussianRational>, BigRational)| Witness {
        index: *i,
        point: p.clone(),
        value: GaussianRational::real(v.clone()),
    };
    let mut imin = 0;
    let mut imax = 0;
    let mut sequence = Vec::new();
    let checkpoints = [count / 4, count / 2, count];
    let mut prefix = Vec::new();
    let mut cp = 0;
    for (k, s) in accepted.iter().enumerate() {
        while cp < checkpoints.len() && s.0 >= checkpoints[cp] {
            if k > 0 {
                let e = if track_max { &accepted[imax].2 } else { &accepted[imin].2 };
                prefix.push(PrefixExtreme { count: checkpoints[cp], value: GaussianRational::real(e.clone()) });
            }
            cp += 1;
        }
        if s.2 < accepted[imin].2 {
            imin = k;
        }
        if s.2 > accepted[imax].2 {
            imax = k;
        }
        let record = k == 0 || if track_max { imax == k } else { imin == k };
        if record {
            sequence.push(mk(s));
        }
    }
    while cp < checkpoints.len() {
        let e = if track_max { &accepted[imax].2 } else { &accepted[imin].2 };
        prefix.push(PrefixExtreme { count: checkpoints[cp], value: GaussianRational::real(e.clone()) });
        cp += 1;
    }
    let tol = BigRational::new(5.into(), 100.into());
    let stable = prefix.len() == 3
        && prefix
            .windows(2)
            .all(|w| rel_change(w[0].value.re(), w[1].value.re()).is_some_and(|c| c < tol));
    Ok(SampleReport {
        seed,
        count,
        quantity: quantity.into(),
        exponent,
        min_value: GaussianRational::real(accepted[imin].2.clone()),
        max_value: GaussianRational::real(accepted[imax].2.clone()),
        witness_min: mk(&accepted[imin]),
        witness_max: mk(&accepted[imax]),
        rejected,
        prefix_extremes: prefix,
        stable,
        witness_sequence: sequence,
        flags: Vec::new(),
    })
}

/// Minimum of `LHS(z) · (1 + |z|^2)^M` over the samples: an empirical lower
/// bound for the Łojasiewicz constant.
pub fn lojasiewicz_sample(p: &MorphismData, exponent: u32, seed: u64, count: u64, regimes: Regimes) -> Result<SampleReport> {
    if count == 0 {
        return Err(Error::Input("count must be positive".into()));
    }
    let samples = evaluate_samples(p.n(), seed, count, regimes, |pt| {
        let lhs = lojasiewicz_lhs(p, pt).ok()?;
        Some(lhs * pow(&(BigRational::one() + norm_sqr(pt)), exponent))
    });
    let mut rep = summarize(seed, count, "lojasiewicz", exponent, samples, false)?;
    if rep.min_value.is_zero() || !rep.stable {
        rep.flags.push("no positive lower bound observed".into());
    } else {
        rep.flags.push("positive lower bound observed (heuristic)".into());
    }
    Ok(rep)
}

/// `min(n, m - r + 1)`.
pub fn default_mu(f: &MorphismData) -> u32 {
    f.n().min(f.m() - f.r() + 1) as u32
}

/// Maximum of `‖φ‖² / det(ff*)^μ` over samples off the zero set.
pub fn briancon_skoda_ratio(f: &MorphismData, phi: &[Poly], mu: Option<u32>, seed: u64, count: u64, regimes: Regimes) -> Result<SampleReport> {
    if count == 0 {
        return Err(Error::Input("count must be positive".into()));
    }
    let mu = mu.unwrap_or_else(|| default_mu(f));
    let norm = pointwise_norm(f, phi)?;
    let g = gram_det(f);
    let samples = evaluate_samples(f.n(), seed, count, regimes, |pt| {
        let gv = g.evaluate(pt).ok()?;
        if gv.is_zero() {
            return None;
        }
        let nv = norm.evaluate(pt).ok()?;
        Some(nv.re() / pow(gv.re(), mu))
    });
    let mut rep = summarize(seed, count, "briancon_skoda", mu, samples, true)?;
    if rep.stable {
        rep.flags.push("bounded (heuristic: max stable within 5% over two doublings)".into());
    } else {
        rep.flags.push("unbounded: max kept growing as the sample count doubled".into());
    }
    Ok(rep)
}

impl SampleReport {
    pub fn bounded(&self) -> bool {
        self.stable
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CodimEstimate {
    /// `None` when the minors generate the unit ideal within the cap.
    pub estimate: Option<usize>,
    pub zero_set_empty: bool,
    pub note: String,
    /// Per slice dimension `c`: how many trials found the restricted minors
    /// without a certified common-zero-free certificate.
    pub votes: Vec<(usize, usize)>,
}

fn gaussian_int(rng: &mut ChaCha8Rng) -> GaussianRational {
    GaussianRational::from_ints(rng.gen_range(-3..=3), rng.gen_range(-3..=3))
}

/// Heuristic codimension of `Z = {F = 0}`: the smallest `c` for which the
/// minors restricted to random affine `c`-planes have a common zero (no
/// Nullstellensatz certificate within the cap), clamped to `[1, m - r + 1]`.
pub fn codim_probe(f: &MorphismData, seed: u64, trials: usize) -> Result<CodimEstimate> {
    if gram_det(f).is_zero() {
        return Err(Error::NowhereSurjective);
    }
    let (n, m, r) = (f.n(), f.m(), f.r());
    let trials = trials.max(1);
    let (fm, _) = minors_morphism(f)?;
    let (cap, _) = auto_cap(&fm, 0);
    if let DivisionOutcome::Solved(_) = nullstellensatz_solve(&fm, cap)? {
        return Ok(CodimEstimate {
            estimate: None,
            zero_set_empty: true,
            note: "Z empty over sampled region: the minors generate the unit ideal".into(),
            votes: Vec::new(),
        });
    }
    let upper = m - r + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut votes = Vec::new();
    for c in 1..=n {
        let mut hits = 0;
        for _ in 0..trials {
            // z = b + A t with t ∈ C^c.
            let images: Vec<Poly> = (0..n)
                .map(|_| {
                    let mut p = Poly::constant(c, gaussian_int(&mut rng));
                    for t in 0..c {
                        p = &p + &Poly::z(c, t).scale(&gaussian_int(&mut rng));
                    }
                    p
                })
                .collect();
            let row = fm
                .row(0)
                .iter()
                .map(|q| q.compose_holomorphic(&images))
                .collect::<Result<Vec<_>>>()?;
            let restricted = MorphismData::new(c, vec![row], fm.coldeg().to_vec())?;
            let (cap, _) = auto_cap(&restricted, 0);
            if let DivisionOutcome::Infeasible { .. } = nullstellensatz_solve(&restricted, cap)? {
                hits += 1;
            }
        }
        votes.push((c, hits));
        if 2 * hits > trials {
            let est = c.clamp(1, upper);
            return Ok(CodimEstimate {
                estimate: Some(est),
                zero_set_empty: false,
                note: format!(
                    "heuristic: generic {c}-planes meet Z in {hits}/{trials} trials; smaller planes miss it"
                ),
                votes,
            });
        }
    }
    Ok(CodimEstimate {
        estimate: Some(n.clamp(1, upper)),
        zero_set_empty: false,
        note: "heuristic: no slice dimension met Z by majority; reporting the ambient bound".into(),
        votes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kollar_examples() {
        assert_eq!(kollar_exponent(2, 3, 1, 3).unwrap().exponent, BigUint::from(9u32));
        assert_eq!(kollar_exponent(3, 4, 2, 2).unwrap().exponent, BigUint::from(64u32));
        assert!(matches!(kollar_exponent(2, 3, 1, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn prefix_stability() {
        for i in [0u64, 1, 7, 1000] {
            assert_eq!(sample_point(3, 42, i, Regimes::Mixed), sample_point(3, 42, i, Regimes::Mixed));
        }
        assert_ne!(sample_point(2, 1, 3, Regimes::Mixed).0, sample_point(2, 2, 3, Regimes::Mixed).0);
    }

    #[test]
    fn shell_points_have_large_sup_norm() {
        for i in 0..50 {
            let (pt, reg) = sample_point(2, 9, i, Regimes::ShellOnly);
            assert_eq!(reg, Regime::Shell);
            assert!(pt.iter().any(|x| x.norm_sqr() >= BigRational::one()));
        }
    }
}
