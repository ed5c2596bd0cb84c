//! Degree-bounded polynomial division `P Q = Φ` by exact linear algebra.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::geometry::{determinant_section, pair_determinant};
use crate::linalg::{Echelon, SparseRow};
use crate::morphism::MorphismData;
use crate::multilinear::{BasisWord, GradedElement};

/// `z_0^d p(z/z_0)` in `n + 1` variables, `z_0` first.
pub fn homogenize_poly(p: &Poly, d: u32) -> Result<Poly> {
    if !p.is_holomorphic() {
        return Err(Error::Input("only holomorphic polynomials can be homogenized".into()));
    }
    let n = p.nvars();
    let mut out = Poly::zero(n + 1);
    for (m, c) in p.terms() {
        let deg = m.z_degree();
        if deg > d {
            return Err(Error::Input(format!("term of degree {deg} exceeds declared degree {d}")));
        }
        let mut z = vec![d - deg];
        z.extend_from_slice(m.z());
        out = &out + &Poly::term(n + 1, Monomial::from_parts(&z, &vec![0; n + 1]), c.clone());
    }
    Ok(out)
}

/// Sets `z_0 = 1`.
pub fn dehomogenize_poly(p: &Poly) -> Result<Poly> {
    let n = p.nvars();
    if n == 0 || p.uses_var(n) {
        return Err(Error::Input("nothing to dehomogenize".into()));
    }
    let mut out = Poly::zero(n - 1);
    for (m, c) in p.terms() {
        let z = &m.z()[1..];
        out = &out + &Poly::term(n - 1, Monomial::from_parts(z, &vec![0; n - 1]), c.clone());
    }
    Ok(out)
}

pub fn is_homogeneous(p: &Poly, d: u32) -> bool {
    p.terms().all(|(m, _)| m.degree() == d)
}

/// Homogenizes every column of `P` to its declared degree and `Φ` to `ρ`.
pub fn homogenize(p: &MorphismData, phi: &[Poly], rho: u32) -> Result<(MorphismData, Vec<Poly>)> {
    let entries = p
        .entries()
        .iter()
        .map(|row| row.iter().zip(p.coldeg()).map(|(q, &d)| homogenize_poly(q, d)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let h = MorphismData::new(p.n() + 1, entries, p.coldeg().to_vec())?;
    let hphi = phi.iter().map(|q| homogenize_poly(q, rho)).collect::<Result<Vec<_>>>()?;
    Ok((h, hphi))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MacaulayBound {
    /// The bound, clamped at 0.
    pub value: u32,
    /// `Σ_{j ≤ min(m, n+r)} d_j - n` before clamping.
    pub raw: i64,
    pub clamped: bool,
    /// Only `m < n + r` degrees were available to sum.
    pub truncated_sum: bool,
    /// `m ≤ n + r - 1`: the first clause of the degree condition already holds.
    pub unconstrained_by_condition: bool,
}

fn sorted_desc(degrees: &[u32]) -> Vec<u32> {
    let mut d = degrees.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

/// `Σ_{j=1}^{n+r} d_j - n` over the degrees sorted descending.
pub fn macaulay_bound(n: usize, r: usize, degrees: &[u32]) -> MacaulayBound {
    let d = sorted_desc(degrees);
    let m = d.len();
    let take = m.min(n + r);
    let raw = d[..take].iter().map(|&x| x as i64).sum::<i64>() - n as i64;
    MacaulayBound {
        value: raw.max(0) as u32,
        raw,
        clamped: raw < 0,
        truncated_sum: m < n + r,
        unconstrained_by_condition: m < n + r,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Clause {
    /// `m ≤ n + r - 1`
    FewColumns,
    /// `ρ ≥ Σ_{j=1}^{n+r} d_j - n`
    DegreeBound,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub satisfied: bool,
    pub clause: Clause,
    pub reason: String,
}

/// `m ≤ n + r - 1` or `ρ ≥ Σ_{j=1}^{n+r} d_j - n`.
pub fn villkor_check(n: usize, r: usize, m: usize, degrees: &[u32], rho: u32) -> ConditionCheck {
    if m + 1 <= n + r {
        return ConditionCheck {
            satisfied: true,
            clause: Clause::FewColumns,
            reason: format!("m = {m} ≤ n + r - 1 = {}", n + r - 1),
        };
    }
    let b = macaulay_bound(n, r, degrees);
    if rho as i64 >= b.raw {
        ConditionCheck {
            satisfied: true,
            clause: Clause::DegreeBound,
            reason: format!("ρ = {rho} ≥ Σ d_j - n = {}", b.raw),
        }
    } else {
        ConditionCheck {
            satisfied: false,
            clause: Clause::None,
            reason: format!("m = {m} > n + r - 1 and ρ = {rho} < Σ d_j - n = {}", b.raw),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cap {
    Fixed(u32),
    Auto,
}

#[derive(Clone, Debug)]
pub struct DivisionProblem {
    pub p: MorphismData,
    pub phi: Vec<Poly>,
    pub cap: Cap,
}

impl DivisionProblem {
    pub fn new(p: MorphismData, phi: Vec<Poly>, cap: Cap) -> Result<Self> {
        if phi.len() != p.r() {
            return Err(Error::Input(format!("Φ has {} entries, P has {} rows", phi.len(), p.r())));
        }
        for (i, q) in phi.iter().enumerate() {
            if q.nvars() != p.n() || !q.is_holomorphic() {
                return Err(Error::Input(format!("Φ entry {} must be holomorphic in {} variables", i + 1, p.n())));
            }
        }
        Ok(Self { p, phi, cap })
    }

    /// `ρ = max deg Φ_i` (0 for `Φ = 0`).
    pub fn rho(&self) -> u32 {
        self.phi.iter().filter_map(|q| q.z_degree()).max().unwrap_or(0)
    }

    /// Resolves the cap; the flag marks the heuristic branch.
    pub fn resolved_cap(&self) -> (u32, bool) {
        match self.cap {
            Cap::Fixed(c) => (c, false),
            Cap::Auto => auto_cap(&self.p, self.rho()),
        }
    }
}

/// `max(ρ, Macaulay bound)` when `m > n + r - 1`, else `ρ + Σ d_j` (heuristic).
pub fn auto_cap(p: &MorphismData, rho: u32) -> (u32, bool) {
    let (n, m, r) = (p.n(), p.m(), p.r());
    if m + 1 > n + r {
        (rho.max(macaulay_bound(n, r, p.coldeg()).value), false)
    } else {
        (rho + p.coldeg().iter().sum::<u32>(), true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionCertificate {
    /// `Q` as an `m × k` matrix (`k = 1` for division, `k = r` for `P Q = I_r`).
    pub q: Vec<Vec<Poly>>,
    /// `max_col deg(P^j Q_j)` per `j`; `None` when `Q_j = 0`.
    pub term_degrees: Vec<Option<u32>>,
    pub bound_used: u32,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisionOutcome {
    Solved(DivisionCertificate),
    /// No solution with `max_j deg(P^j Q_j) ≤ cap`; not a non-membership proof.
    Infeasible { cap: u32 },
}

impl DivisionOutcome {
    pub fn certificate(&self) -> Option<&DivisionCertificate> {
        match self {
            DivisionOutcome::Solved(c) => Some(c),
            DivisionOutcome::Infeasible { .. } => None,
        }
    }
}

/// Monomials in `z_1..z_n` of degree `≤ d`, as `z` exponent vectors.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..=d {
        out.extend(crate::multilinear::complex::compositions(n, total));
    }
    out
}

fn z_mono(n: usize, z: &[u32]) -> Monomial {
    Monomial::from_parts(z, &vec![0; n])
}

/// Solves `P Q = Φ` with `deg Q_j ≤ d - d_j`, or returns `None`.
pub fn solve_at_degree(p: &MorphismData, phi: &[Poly], d: u32) -> Option<Vec<Poly>> {
    let (n, m, r) = (p.n(), p.m(), p.r());
    // Unknowns: (j, ν) with |ν| ≤ d - d_j.
    let mut unknowns: Vec<(usize, Vec<u32>)> = Vec::new();
    for j in 0..m {
        if let Some(budget) = d.checked_sub(p.coldeg()[j]) {
            for nu in monomials_up_to(n, budget) {
                unknowns.push((j, nu));
            }
        }
    }
    let rhs_col = unknowns.len();
    // Equation (i, μ) collects Σ_{j,ν} P_ij[μ - ν] q_{j,ν}.
    let mut rows: BTreeMap<(usize, Monomial), SparseRow> = BTreeMap::new();
    for (col, (j, nu)) in unknowns.iter().enumerate() {
        let nu_m = z_mono(n, nu);
        for i in 0..r {
            for (mono, c) in p.entry(i, *j).terms() {
                rows.entry((i, mono.mul(&nu_m))).or_default().push((col, c.clone()));
            }
        }
    }
    for (i, q) in phi.iter().enumerate() {
        for (mono, c) in q.terms() {
            rows.entry((i, mono.clone())).or_default().push((rhs_col, c.clone()));
        }
    }
    let mut ech = Echelon::new();
    for (_, row) in rows {
        // Columns were pushed in increasing order, each at most once.
        if ech.insert(row) == Some(rhs_col) {
            return None;
        }
    }
    let x = ech.solve(rhs_col)?;
    let mut q = vec![Poly::zero(n); m];
    for (col, v) in x {
        let (j, nu) = &unknowns[col];
        q[*j] = &q[*j] + &Poly::term(n, z_mono(n, nu), v);
    }
    Some(q)
}

fn term_degrees(p: &MorphismData, q: &[Vec<Poly>]) -> Vec<Option<u32>> {
    (0..p.m())
        .map(|j| {
            q[j].iter()
                .filter(|x| !x.is_zero())
                .map(|x| p.coldeg()[j] + x.z_degree().unwrap_or(0))
                .max()
        })
        .collect()
}

/// Re-multiplies and compares: `Σ_j P^j Q_j = Φ` column by column.
pub fn verify_solution(p: &MorphismData, q: &[Vec<Poly>], rhs: &[Vec<Poly>]) -> bool {
    if q.len() != p.m() {
        return false;
    }
    let k = rhs.len();
    (0..k).all(|c| {
        let col: Vec<Poly> = q.iter().map(|row| row.get(c).cloned().unwrap_or_else(|| Poly::zero(p.n()))).collect();
        p.apply(&col).map(|v| v == rhs[c]).unwrap_or(false)
    })
}

/// Iterative deepening over `D = ρ, ρ+1, …, cap`.
pub fn solve_division(prob: &DivisionProblem) -> Result<DivisionOutcome> {
    let (cap, _) = prob.resolved_cap();
    solve_with_cap(&prob.p, &prob.phi, cap)
}

pub fn solve_with_cap(p: &MorphismData, phi: &[Poly], cap: u32) -> Result<DivisionOutcome> {
    if phi.len() != p.r() {
        return Err(Error::Input(format!("Φ has {} entries, P has {} rows", phi.len(), p.r())));
    }
    let rho = phi.iter().filter_map(|q| q.z_degree()).max().unwrap_or(0);
    if phi.iter().all(|q| q.is_zero()) {
        let q = vec![vec![Poly::zero(p.n())]; p.m()];
        return Ok(DivisionOutcome::Solved(DivisionCertificate {
            term_degrees: vec![None; p.m()],
            q,
            bound_used: 0,
            verified: true,
        }));
    }
    for d in rho..=cap {
        if let Some(sol) = solve_at_degree(p, phi, d) {
            let q: Vec<Vec<Poly>> = sol.into_iter().map(|x| vec![x]).collect();
            let verified = verify_solution(p, &q, &[phi.to_vec()]);
            if !verified {
                return Err(Error::Precondition("internal: solution failed re-verification".into()));
            }
            return Ok(DivisionOutcome::Solved(DivisionCertificate {
                term_degrees: term_degrees(p, &q),
                q,
                bound_used: d,
                verified,
            }));
        }
    }
    Ok(DivisionOutcome::Infeasible { cap })
}

/// Division with the cap fixed at `deg Φ`; the hypotheses under which this
/// cap suffices are the caller's responsibility.
pub fn noether_solve(p: &MorphismData, phi: &[Poly]) -> Result<DivisionOutcome> {
    let rho = phi.iter().filter_map(|q| q.z_degree()).max().unwrap_or(0);
    solve_with_cap(p, phi, rho)
}

/// `P Q = I_r` by `r` independent solves; the columns run in parallel when
/// the `parallel` feature is on, with results collected in order.
pub fn nullstellensatz_solve(p: &MorphismData, cap: u32) -> Result<DivisionOutcome> {
    let (n, m, r) = (p.n(), p.m(), p.r());
    let unit_col = |c: usize| -> Vec<Poly> { (0..r).map(|i| if i == c { Poly::one(n) } else { Poly::zero(n) }).collect() };
    let solve_col = |c: usize| solve_with_cap(p, &unit_col(c), cap);
    #[cfg(feature = "parallel")]
    let outcomes: Vec<Result<DivisionOutcome>> = {
        use rayon::prelude::*;
        (0..r).into_par_iter().map(solve_col).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<Result<DivisionOutcome>> = (0..r).map(solve_col).collect();

    let mut q = vec![vec![Poly::zero(n); r]; m];
    let mut bound = 0;
    for (c, o) in outcomes.into_iter().enumerate() {
        match o? {
            DivisionOutcome::Infeasible { cap } => return Ok(DivisionOutcome::Infeasible { cap }),
            DivisionOutcome::Solved(cert) => {
                bound = bound.max(cert.bound_used);
                for j in 0..m {
                    q[j][c] = cert.q[j][0].clone();
                }
            }
        }
    }
    let rhs: Vec<Vec<Poly>> = (0..r).map(unit_col).collect();
    let verified = verify_solution(p, &q, &rhs);
    if !verified {
        return Err(Error::Precondition("internal: solution failed re-verification".into()));
    }
    Ok(DivisionOutcome::Solved(DivisionCertificate { term_degrees: term_degrees(p, &q), q, bound_used: bound, verified }))
}

/// `ψ = Σ_j (-1)^{r-j} δ_{f_r} ⋯ \hat{δ_{f_j}} ⋯ δ_{f_1} H^j`, solving `fψ = φ`
/// when `F·H^j = φ_j` for each `j`.
pub fn fuhrmann_lift(f: &MorphismData, h: &[GradedElement], phi: &[Poly]) -> Result<Vec<Poly>> {
    let (n, m, r) = (f.n(), f.m(), f.r());
    if h.len() != r || phi.len() != r {
        return Err(Error::Input(format!("need {r} elements H^j and {r} entries φ_j")));
    }
    for (j, hj) in h.iter().enumerate() {
        if hj.dims() != (n, m, r) {
            return Err(Error::Input(format!("H^{} has mismatched rank data", j + 1)));
        }
        let pairing = pair_determinant(f, hj)?;
        if pairing != phi[j].clone().into() {
            return Err(Error::Input(format!("F·H^{} ≠ φ_{}", j + 1, j + 1)));
        }
    }
    let mut psi = GradedElement::zero(n, m, r);
    for (j, hj) in h.iter().enumerate() {
        let mut y = hj.clone();
        for i in 0..r {
            if i != j {
                y = y.interior_mult(f.row(i))?;
            }
        }
        if (r - 1 - j) % 2 == 1 {
            y = y.neg();
        }
        psi = psi.checked_add(&y)?;
    }
    let mut out = vec![Poly::zero(n); m];
    for (w, c) in psi.terms() {
        if w.ext_degree() != 1 || w.form != 0 || !c.is_polynomial() {
            return Err(Error::Input(format!("H must have polynomial Λ^r E coefficients; got term {w}")));
        }
        out[w.ext_indices()[0]] = c.num().clone();
    }
    Ok(out)
}

/// The scalar problem `Σ_I F_I H_I = φ_j` as a `1 × C(m, r)` morphism.
pub fn minors_morphism(f: &MorphismData) -> Result<(MorphismData, Vec<Vec<usize>>)> {
    let minors = determinant_section(f);
    let degs: Vec<u32> = minors.iter().map(|mi| mi.cols.iter().map(|&k| f.coldeg()[k]).sum()).collect();
    let cols = minors.iter().map(|mi| mi.cols.clone()).collect();
    let row = minors.into_iter().map(|mi| mi.value).collect();
    Ok((MorphismData::new(f.n(), vec![row], degs)?, cols))
}

#[derive(Clone, Debug)]
pub struct FuhrmannResult {
    pub h: Vec<GradedElement>,
    pub psi: Vec<Poly>,
    pub verified: bool,
}

/// Solves `F·H^j = φ_j` for each `j` within `cap`, then lifts.
/// `Ok(None)` when some scalar problem is infeasible within the cap.
pub fn fuhrmann_solve(f: &MorphismData, phi: &[Poly], cap: u32) -> Result<Option<FuhrmannResult>> {
    let (n, m, r) = (f.n(), f.m(), f.r());
    if phi.len() != r {
        return Err(Error::Input(format!("φ has {} entries, expected {r}", phi.len())));
    }
    let (fm, cols) = minors_morphism(f)?;
    let mut h = Vec::with_capacity(r);
    for pj in phi {
        let DivisionOutcome::Solved(cert) = solve_with_cap(&fm, std::slice::from_ref(pj), cap)? else {
            return Ok(None);
        };
        let mut e = GradedElement::zero(n, m, r);
        for (idx, set) in cols.iter().enumerate() {
            let mask = set.iter().fold(0u32, |a, &c| a | 1 << c);
            e.add_term(BasisWord { ext: mask, ..BasisWord::unit(r) }, cert.q[idx][0].clone().into());
        }
        h.push(e);
    }
    let psi = fuhrmann_lift(f, &h, phi)?;
    let verified = f.apply(&psi)? == phi;
    Ok(Some(FuhrmannResult { h, psi, verified }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly;

    fn p(s: &str, n: usize) -> Poly {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn homogenization() {
        assert_eq!(homogenize_poly(&p("z1 + 1", 1), 1).unwrap(), p("z2 + z1", 2));
        assert_eq!(homogenize_poly(&p("z1", 1), 2).unwrap(), p("z1*z2", 2));
        assert!(homogenize_poly(&p("z1^3", 1), 2).is_err());
        let h = homogenize_poly(&p("3*z1^2 - z2 + 7", 2), 2).unwrap();
        assert!(is_homogeneous(&h, 2));
        assert_eq!(dehomogenize_poly(&h).unwrap(), p("3*z1^2 - z2 + 7", 2));
    }

    #[test]
    fn macaulay_examples() {
        assert_eq!(macaulay_bound(2, 1, &[2, 1, 1]).value, 2);
        assert_eq!(macaulay_bound(1, 1, &[2, 2, 2]).value, 3);
        let b = macaulay_bound(2, 2, &[1, 1, 1]);
        assert!(b.unconstrained_by_condition && b.truncated_sum);
        assert_eq!(macaulay_bound(3, 1, &[0, 0]).clamped, true);
    }

    #[test]
    fn condition_clauses() {
        assert_eq!(villkor_check(2, 2, 3, &[1, 1, 1], 0).clause, Clause::FewColumns);
        assert_eq!(villkor_check(2, 1, 3, &[2, 1, 1], 2).clause, Clause::DegreeBound);
        assert!(!villkor_check(2, 1, 3, &[2, 1, 1], 1).satisfied);
    }

    #[test]
    fn small_divisions() {
        let f = MorphismData::parse(2, &[&["z1", "z2"]]).unwrap();
        let out = solve_with_cap(&f, &[p("z1^2 + z2^2", 2)], 4).unwrap();
        let cert = out.certificate().unwrap();
        assert_eq!(cert.bound_used, 2);
        assert_eq!(cert.term_degrees, vec![Some(2), Some(2)]);
        let g = MorphismData::parse(2, &[&["z1^2", "z2^2"]]).unwrap();
        assert_eq!(solve_with_cap(&g, &[p("z1*z2", 2)], 6).unwrap(), DivisionOutcome::Infeasible { cap: 6 });
    }
}
