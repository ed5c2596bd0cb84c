use koszul_core::arith::{parse_poly, GaussianRational, Poly, RationalFunction};
use koszul_core::division::{
    dehomogenize_poly, fuhrmann_lift, fuhrmann_solve, homogenize, homogenize_poly, is_homogeneous, macaulay_bound,
    noether_solve, nullstellensatz_solve, solve_with_cap, villkor_check, Clause, DivisionOutcome,
};
use koszul_core::geometry::{
    adjugate, det, determinant_section, gram_det, homotopy_residual, mat_mul, minimal_sections, omskriv_residual,
    omv_primitive, omv_residual, pointwise_norm, u_form, Numerators,
};
use koszul_core::multilinear::{apply_f, delta, delta_complex, delta_f, exactness_at_point, ExactnessLevel};
use koszul_core::sampling::{briancon_skoda_ratio, codim_probe, lojasiewicz_lhs, lojasiewicz_sample, Regimes};
use koszul_core::{running_example, BasisWord, Error, GradedElement, MorphismData, QSlot};
use num_rational::BigRational;
use num_traits::One;

fn p(s: &str, n: usize) -> Poly {
    parse_poly(s, n).unwrap()
}

fn rf(s: &str, n: usize) -> RationalFunction {
    RationalFunction::from_poly(p(s, n))
}

fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_ints(re, im)
}

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

fn word(form: u32, ext: u32, r: usize) -> BasisWord {
    BasisWord { form, ext, ..BasisWord::unit(r) }
}

fn padded_identity(r: usize, m: usize) -> MorphismData {
    let entries = (0..r)
        .map(|j| (0..m).map(|k| if j == k { Poly::one(1) } else { Poly::zero(1) }).collect())
        .collect();
    MorphismData::new(1, entries, vec![0; m]).unwrap()
}

fn single_row() -> MorphismData {
    MorphismData::parse(2, &[&["z1", "z2"]]).unwrap()
}

// Polynomials and rational functions.

#[test]
fn polynomial_basics() {
    assert_eq!(&p("z1 + w1", 1) + &p("z1 - w1", 1), p("2*z1", 1));
    let prod = &p("z1", 2) * &p("z2", 2);
    assert_eq!(prod.terms().next().unwrap().0.exps(), &[1, 1, 0, 0]);
    assert_eq!(&p("z1 + z2", 2) * &p("z1 - z2", 2), p("z1^2 - z2^2", 2));
    assert_eq!(p("i*z1", 1).conjugate(), p("-i*w1", 1));
    assert_eq!(p("z1*w2", 2).conjugate(), p("z2*w1", 2));
}

#[test]
fn dbar_examples() {
    let x = GradedElement::scalar(2, 1, 1, rf("z1^2*w2^3", 2)).dbar();
    assert_eq!(x.coeff(&word(0b10, 0, 1)), rf("3*z1^2*w2^2", 2));
    assert_eq!(x.num_terms(), 1);
    assert!(GradedElement::scalar(2, 1, 1, rf("z1^3 + i*z2", 2)).dbar().is_zero());
    let inv = RationalFunction::new(p("1", 1), p("z1*w1", 1)).unwrap();
    let d = GradedElement::scalar(1, 1, 1, inv).dbar();
    let want = RationalFunction::new(p("-1", 1), p("z1*w1^2", 1)).unwrap();
    assert_eq!(d.coeff(&word(1, 0, 1)), want);
}

#[test]
fn evaluation_examples() {
    assert_eq!(p("z1*w1", 1).evaluate(&[g(1, 1)]).unwrap(), g(2, 0));
    assert_eq!(p("z1*w1 + z2*w2", 2).evaluate(&[g(1, 0), g(0, 1)]).unwrap(), g(2, 0));
    let pole = RationalFunction::new(p("1", 1), p("z1", 1)).unwrap();
    assert!(matches!(pole.evaluate(&[g(0, 0)]), Err(Error::Pole(_))));
}

// Graded algebra.

#[test]
fn anticommutation() {
    let (e1, e2) = (GradedElement::e(1, 2, 1, 0), GradedElement::e(1, 2, 1, 1));
    assert!(e1.wedge(&e2).unwrap().checked_add(&e2.wedge(&e1).unwrap()).unwrap().is_zero());
    let t1 = GradedElement::theta(1, 2, 1, 0);
    assert_eq!(t1.wedge(&e1).unwrap(), e1.wedge(&t1).unwrap().neg());
}

fn factorial(k: u32) -> i64 {
    (1..=k as i64).product()
}

#[test]
fn divided_powers_by_brute_force() {
    // ε*_a ∧ ε*_b with ε*_a = x^a / a!: the product is x^{a+b}/(a! b!), so the
    // coefficient on ε*_{a+b} is (a+b)!/(a! b!).
    for a in 0..=3u32 {
        for b in 0..=3u32 {
            let prod = GradedElement::sym(1, 1, 1, &[a]).wedge(&GradedElement::sym(1, 1, 1, &[b])).unwrap();
            let want = factorial(a + b) / (factorial(a) * factorial(b));
            let w = BasisWord { sym: vec![a + b].into(), ..BasisWord::unit(1) };
            assert_eq!(prod.coeff(&w), RationalFunction::constant(1, GaussianRational::from_integer(want)));
        }
    }
}

#[test]
fn interior_multiplication_examples() {
    let n = 2;
    let e12 = GradedElement::e(n, 2, 1, 0).wedge(&GradedElement::e(n, 2, 1, 1)).unwrap();
    let got = e12.interior_mult(&[p("z1", n), p("z2", n)]).unwrap();
    let want = GradedElement::e(n, 2, 1, 1)
        .mul_poly(&p("z1", n))
        .checked_sub(&GradedElement::e(n, 2, 1, 0).mul_poly(&p("z2", n)))
        .unwrap();
    assert_eq!(got, want);
    assert!(GradedElement::e(n, 2, 1, 1).interior_mult(&[p("1", n), p("0", n)]).unwrap().is_zero());
}

#[test]
fn rank_one_complex_is_the_koszul_complex() {
    let f = MorphismData::parse(2, &[&["z1", "z2 + 1", "z1*z2"]]).unwrap();
    let (n, m, r) = (2, 3, 1);
    let xi = GradedElement::e(n, m, r, 0)
        .wedge(&GradedElement::e(n, m, r, 1))
        .unwrap()
        .wedge(&GradedElement::e(n, m, r, 2))
        .unwrap();
    // Level 3: Λ³E ⊗ ε₁* ⊗ det Q*.
    let x = xi.wedge(&GradedElement::sym(n, m, r, &[1])).unwrap().wedge(&GradedElement::detq(n, m, r)).unwrap();
    let want = xi.interior_mult(f.row(0)).unwrap().wedge(&GradedElement::detq(n, m, r)).unwrap();
    assert_eq!(delta_complex(&f, &x).unwrap(), want);
}

#[test]
fn delta_f_examples() {
    let f = single_row();
    let (n, m, r) = (2, 2, 1);
    let x = GradedElement::e(n, m, r, 0)
        .wedge(&GradedElement::e(n, m, r, 1))
        .unwrap()
        .wedge(&GradedElement::detq(n, m, r))
        .unwrap();
    let d = delta_f(&f, &x).unwrap();
    let want = GradedElement::e(n, m, r, 1)
        .mul_poly(&p("z1", n))
        .checked_sub(&GradedElement::e(n, m, r, 0).mul_poly(&p("z2", n)))
        .unwrap();
    assert_eq!(d, want);
    assert!(apply_f(&f, &d).unwrap().is_zero());

    let f = running_example();
    let (m, r) = (3, 2);
    let xi = (0..3).fold(GradedElement::scalar(n, m, r, RationalFunction::one(n)), |acc, i| {
        acc.wedge(&GradedElement::e(n, m, r, i)).unwrap()
    });
    let x = xi.wedge(&GradedElement::detq(n, m, r)).unwrap();
    let nested = xi.interior_mult(f.row(0)).unwrap().interior_mult(f.row(1)).unwrap();
    assert_eq!(delta_f(&f, &x).unwrap(), nested);
    // z1^2 e3 - z1 z2 e2 + z2^2 e1
    let want = GradedElement::e(n, m, r, 2)
        .mul_poly(&p("z1^2", n))
        .checked_sub(&GradedElement::e(n, m, r, 1).mul_poly(&p("z1*z2", n)))
        .unwrap()
        .checked_add(&GradedElement::e(n, m, r, 0).mul_poly(&p("z2^2", n)))
        .unwrap();
    assert_eq!(nested, want);
}

#[test]
fn exactness_examples() {
    let f = single_row();
    assert!(exactness_at_point(&f, &[g(1, 0), g(0, 0)], ExactnessLevel::E).unwrap().exact);
    let rep = exactness_at_point(&f, &[g(1, 0), g(0, 0)], ExactnessLevel::E).unwrap();
    assert_eq!((rep.dim, rep.rank_incoming, rep.rank_outgoing), (2, 1, 1));
    let f = running_example();
    for level in [ExactnessLevel::E, ExactnessLevel::E2] {
        assert!(exactness_at_point(&f, &[g(1, 0), g(1, 0)], level).unwrap().exact);
    }
    assert!(matches!(
        exactness_at_point(&single_row(), &[g(0, 0), g(0, 0)], ExactnessLevel::E),
        Err(Error::Precondition(_))
    ));
}

// Hermitian geometry.

#[test]
fn minors_and_gram_determinants() {
    let vals = |f: &MorphismData| determinant_section(f).into_iter().map(|mi| mi.value).collect::<Vec<_>>();
    assert_eq!(vals(&single_row()), vec![p("z1", 2), p("z2", 2)]);
    let nonzero: Vec<Poly> = vals(&padded_identity(2, 4)).into_iter().filter(|v| !v.is_zero()).collect();
    assert_eq!(nonzero, vec![Poly::one(1)]);
    assert_eq!(gram_det(&single_row()), p("z1*w1 + z2*w2", 2));
    let sq = MorphismData::parse(1, &[&["z1", "1"], &["i", "z1^2"]]).unwrap();
    let d = p("z1^3 - i", 1);
    assert_eq!(gram_det(&sq), &d * &d.conjugate());
    assert_eq!(gram_det(&running_example()), p("z1^2*w1^2 + z1*z2*w1*w2 + z2^2*w2^2", 2));
}

#[test]
fn adjugate_examples() {
    let a = vec![vec![p("z1", 1), p("w1 + 2", 1)], vec![p("i", 1), p("z1*w1", 1)]];
    let adj = adjugate(&a, 1).unwrap();
    assert_eq!(adj, vec![vec![p("z1*w1", 1), p("-w1 - 2", 1)], vec![p("-i", 1), p("z1", 1)]]);
    let b = vec![
        vec![p("z1", 1), p("1", 1), p("0", 1)],
        vec![p("w1", 1), p("2", 1), p("z1^2", 1)],
        vec![p("3", 1), p("i*w1", 1), p("1", 1)],
    ];
    let prod = mat_mul(&b, &adjugate(&b, 1).unwrap(), 1);
    let d = det(&b, 1);
    for (i, row) in prod.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            assert_eq!(*v, if i == j { d.clone() } else { Poly::zero(1) });
        }
    }
}

#[test]
fn minimal_sections_examples() {
    let f = single_row();
    let sec = minimal_sections(&f).unwrap();
    let g2 = p("z1*w1 + z2*w2", 2);
    for (i, w) in ["w1", "w2"].iter().enumerate() {
        let want = RationalFunction::new(p(w, 2), g2.clone()).unwrap();
        let bw = BasisWord { ext: 1 << i, qslot: QSlot::Dual(0), ..BasisWord::unit(1) };
        assert_eq!(sec.sigma.coeff(&bw), want);
    }
    assert_eq!(delta(&f, &sec.sigma).unwrap(), GradedElement::identity_q(2, 2, 1));

    let id = padded_identity(2, 2);
    let sec = minimal_sections(&id).unwrap();
    assert!(sec.gram_det.is_one());
    assert_eq!(sec.sigma, sec.s_section);

    let f = running_example();
    let sec = minimal_sections(&f).unwrap();
    assert_eq!(delta(&f, &sec.sigma).unwrap(), GradedElement::identity_q(2, 3, 2));
}

#[test]
fn square_case_has_only_u1() {
    let f = MorphismData::parse(1, &[&["z1", "1"], &["0", "z1"]]).unwrap();
    assert!(u_form(&f, 2).is_err());
    let u1 = u_form(&f, 1).unwrap();
    // f^{-1} = [[1/z1, -1/z1^2], [0, 1/z1]]
    let entry = |i: usize, j: usize| u1.coeff(&BasisWord { ext: 1 << i, qslot: QSlot::Dual(j), ..BasisWord::unit(2) });
    assert_eq!(entry(0, 0), RationalFunction::new(p("1", 1), p("z1", 1)).unwrap());
    assert_eq!(entry(0, 1), RationalFunction::new(p("-1", 1), p("z1^2", 1)).unwrap());
    assert!(entry(1, 0).is_zero());
    assert_eq!(entry(1, 1), RationalFunction::new(p("1", 1), p("z1", 1)).unwrap());
}

#[test]
fn second_form_for_a_single_row() {
    let f = single_row();
    let u2 = u_form(&f, 2).unwrap();
    let g2 = p("z1*w1 + z2*w2", 2).pow(2);
    let w = |form: u32| BasisWord { form, ext: 0b11, detq: true, qslot: QSlot::Dual(0), ..BasisWord::unit(1) };
    assert_eq!(u2.num_terms(), 2);
    assert_eq!(u2.coeff(&w(0b01)), RationalFunction::new(p("w2", 2), g2.clone()).unwrap());
    assert_eq!(u2.coeff(&w(0b10)), RationalFunction::new(p("-w1", 2), g2).unwrap());
}

#[test]
fn forms_match_their_numerators() {
    for f in [single_row(), running_example()] {
        let num = Numerators::new(&f).unwrap();
        let g = num.gram_det().clone();
        for k in 1..=koszul_core::geometry::top_level(&f) {
            let u = u_form(&f, k).unwrap();
            let gk = g.pow(k as u32);
            let scaled = num.numerator(k).unwrap().scale(&RationalFunction::new(Poly::one(2), gk.clone()).unwrap());
            assert_eq!(u, scaled);
            for (w, c) in u.terms() {
                assert!(gk.div_exact(c.den()).is_some(), "denominator must divide G^k");
                assert_eq!(w.form_degree() as usize, k - 1);
                assert_eq!(w.ext_degree() as usize, if k == 1 { 1 } else { f.r() + k - 1 });
            }
        }
    }
}

#[test]
fn homotopy_examples() {
    let f = MorphismData::parse(1, &[&["z1"]]).unwrap();
    assert!(homotopy_residual(&f).unwrap().holds());
    assert!(homotopy_residual(&single_row()).unwrap().holds());
    assert!(homotopy_residual(&running_example()).unwrap().holds());
}

#[test]
fn rewrite_examples() {
    assert!(omskriv_residual(&single_row(), &[p("1", 2)], 2).unwrap().is_zero());
    assert!(omskriv_residual(&running_example(), &[p("z1", 2), p("z2", 2)], 2).unwrap().is_zero());
    let sq = padded_identity(2, 2);
    assert!(omskriv_residual(&sq, &[p("1", 1), p("0", 1)], 2).is_err());
}

#[test]
fn primitive_examples() {
    let f = running_example();
    assert!(omv_residual(&f, &[p("1", 2), p("0", 2), p("0", 2)]).unwrap().is_zero());
    assert!(omv_primitive(&f, &[Poly::zero(2), Poly::zero(2), Poly::zero(2)]).unwrap().is_zero());
    let syz = [p("z2", 2), p("-z1", 2)];
    assert!(single_row().apply(&syz).unwrap().iter().all(Poly::is_zero));
    assert!(omv_residual(&single_row(), &syz).unwrap().is_zero());
}

#[test]
fn pointwise_norm_examples() {
    let f = single_row();
    let phi = p("z1 + i*z2^2", 2);
    assert_eq!(pointwise_norm(&f, &[phi.clone()]).unwrap(), RationalFunction::from_poly(&phi * &phi.conjugate()));
    assert!(pointwise_norm(&f, &[Poly::zero(2)]).unwrap().is_zero());
    let f = running_example();
    let nrm = pointwise_norm(&f, &[p("1", 2), p("0", 2)]).unwrap();
    let adj11 = minimal_sections(&f).unwrap().adj_gram[0][0].clone();
    assert_eq!(nrm, RationalFunction::from_poly(adj11));
    assert_eq!(nrm.conjugate(), nrm);
}

// Division.

#[test]
fn homogenization_examples() {
    assert_eq!(homogenize_poly(&p("z1 + 1", 1), 1).unwrap(), p("z2 + z1", 2));
    assert_eq!(homogenize_poly(&p("z1", 1), 2).unwrap(), p("z1*z2", 2));
    assert_eq!(dehomogenize_poly(&p("z1*z2", 2)).unwrap(), p("z1", 1));
    let f = running_example();
    let (h, _) = homogenize(&f, &[p("z1", 2), p("z2", 2)], 1).unwrap();
    for j in 0..2 {
        for k in 0..3 {
            assert!(is_homogeneous(h.entry(j, k), 1));
            assert_eq!(dehomogenize_poly(h.entry(j, k)).unwrap(), *f.entry(j, k));
        }
    }
}

#[test]
fn bound_examples() {
    assert_eq!(macaulay_bound(2, 1, &[2, 1, 1]).value, 2);
    assert_eq!(macaulay_bound(1, 1, &[2, 2, 2]).value, 3);
    let b = macaulay_bound(2, 2, &[1, 1, 1]);
    assert!(b.unconstrained_by_condition);
    assert_eq!(villkor_check(2, 2, 3, &[1, 1, 1], 0).clause, Clause::FewColumns);
    let c = villkor_check(2, 1, 3, &[2, 1, 1], 2);
    assert!(c.satisfied && c.clause == Clause::DegreeBound);
    assert!(!villkor_check(2, 1, 3, &[2, 1, 1], 1).satisfied);
}

#[test]
fn division_examples() {
    let f = single_row();
    let out = solve_with_cap(&f, &[p("z1^2 + z2^2", 2)], 4).unwrap();
    let cert = out.certificate().unwrap();
    assert_eq!(cert.bound_used, 2);
    assert_eq!(cert.q, vec![vec![p("z1", 2)], vec![p("z2", 2)]]);
    assert_eq!(cert.term_degrees, vec![Some(2), Some(2)]);

    let cert = noether_solve(&f, &[p("z1^3", 2)]).unwrap();
    assert_eq!(cert.certificate().unwrap().bound_used, 3);
    assert!(matches!(noether_solve(&f, &[p("1", 2)]).unwrap(), DivisionOutcome::Infeasible { cap: 0 }));

    let rex = running_example();
    let out = noether_solve(&rex, &[p("z1^2", 2), p("z1*z2", 2)]).unwrap();
    assert!(out.certificate().unwrap().bound_used <= 2);
}

#[test]
fn nullstellensatz_examples() {
    let f = MorphismData::parse(2, &[&["z1", "z2", "1 - z1*z2"]]).unwrap();
    let cert = nullstellensatz_solve(&f, 2).unwrap();
    assert!(cert.certificate().unwrap().bound_used <= 2);
    for cap in 0..=5 {
        assert!(nullstellensatz_solve(&single_row(), cap).unwrap().certificate().is_none());
    }
    let id = padded_identity(2, 3);
    let cert = nullstellensatz_solve(&id, 3).unwrap();
    let cert = cert.certificate().unwrap();
    assert_eq!(cert.bound_used, 0);
    assert_eq!(cert.q[0], vec![Poly::one(1), Poly::zero(1)]);
    assert_eq!(cert.q[1], vec![Poly::zero(1), Poly::one(1)]);
    assert_eq!(cert.q[2], vec![Poly::zero(1), Poly::zero(1)]);
}

#[test]
fn fuhrmann_examples() {
    let f = single_row();
    let phi = [p("z1*z2 + z2^3", 2)];
    let res = fuhrmann_solve(&f, &phi, 4).unwrap().unwrap();
    assert_eq!(f.apply(&res.psi).unwrap(), phi.to_vec());

    let rex = running_example();
    let zero_h = vec![GradedElement::zero(2, 3, 2); 2];
    let psi = fuhrmann_lift(&rex, &zero_h, &[Poly::zero(2), Poly::zero(2)]).unwrap();
    assert!(psi.iter().all(Poly::is_zero));

    let res = fuhrmann_solve(&rex, &[p("z1^2", 2), p("0", 2)], 4).unwrap().unwrap();
    assert!(res.verified);
    assert_eq!(rex.apply(&res.psi).unwrap(), vec![p("z1^2", 2), Poly::zero(2)]);
}

// Bounds and sampling.

#[test]
fn lojasiewicz_lhs_examples() {
    let id = padded_identity(2, 3);
    assert_eq!(lojasiewicz_lhs(&id, &[g(5, -2)]).unwrap(), BigRational::one());
    let f = single_row();
    assert_eq!(lojasiewicz_lhs(&f, &[g(1, 0), g(0, 0)]).unwrap(), q(1, 2));
    // Three minors of modulus 1 at (1,1), each over (1 + 2)^2.
    assert_eq!(lojasiewicz_lhs(&running_example(), &[g(1, 0), g(1, 0)]).unwrap(), q(1, 3));
}

#[test]
fn lojasiewicz_sample_examples() {
    let id = padded_identity(2, 3);
    let rep = lojasiewicz_sample(&id, 0, 1, 64, Regimes::Mixed).unwrap();
    assert_eq!(*rep.min_value.re(), BigRational::one());
    let rep = lojasiewicz_sample(&single_row(), 1, 2, 256, Regimes::ShellOnly).unwrap();
    assert!(*rep.min_value.re() >= q(1, 2));
    let line = MorphismData::parse(1, &[&["z1"]]).unwrap();
    let rep = lojasiewicz_sample(&line, 0, 3, 1024, Regimes::LocalOnly).unwrap();
    assert!(rep.flags.iter().any(|f| f.contains("no positive lower bound")));
}

#[test]
fn witnesses_reproduce_extremes() {
    let f = MorphismData::parse(2, &[&["z1^2", "z2^2"]]).unwrap();
    let phi = [p("z1^2*z2^2", 2)];
    let rep = briancon_skoda_ratio(&f, &phi, None, 11, 500, Regimes::Mixed).unwrap();
    let norm = pointwise_norm(&f, &phi).unwrap();
    let gd = gram_det(&f);
    for w in [&rep.witness_min, &rep.witness_max] {
        let v = norm.evaluate(&w.point).unwrap().re() / gd.evaluate(&w.point).unwrap().re().pow(2);
        assert_eq!(GaussianRational::real(v), w.value);
    }
    assert!(rep.min_value.re() <= rep.max_value.re());
    let zero = briancon_skoda_ratio(&f, &[Poly::zero(2)], Some(2), 1, 100, Regimes::Mixed).unwrap();
    assert!(zero.max_value.is_zero());
}

#[test]
fn sampler_input_errors() {
    let f = MorphismData::parse(1, &[&["z1"]]).unwrap();
    assert!(matches!(briancon_skoda_ratio(&f, &[p("1", 1)], None, 1, 0, Regimes::Mixed), Err(Error::Input(_))));
    assert!(matches!(briancon_skoda_ratio(&f, &[p("1", 1), p("1", 1)], None, 1, 5, Regimes::Mixed), Err(Error::Input(_))));
    let zero = MorphismData::parse(1, &[&["0"]]).unwrap();
    assert!(briancon_skoda_ratio(&zero, &[p("1", 1)], None, 1, 5, Regimes::Mixed).is_err());
}

#[test]
fn codimension_probe_examples() {
    let f = MorphismData::parse(2, &[&["z1", "z2", "1 - z1*z2"]]).unwrap();
    assert!(codim_probe(&f, 1, 3).unwrap().zero_set_empty);
    assert_eq!(codim_probe(&single_row(), 1, 3).unwrap().estimate, Some(2));
    assert_eq!(codim_probe(&running_example(), 1, 3).unwrap().estimate, Some(2));
    let zero = MorphismData::parse(1, &[&["0"]]).unwrap();
    assert!(matches!(codim_probe(&zero, 1, 3), Err(Error::NowhereSurjective)));
}
