use gammaeval::admissibility::{solve, AdmissibleFamily};
use gammaeval::arith::{factor_linear, int, rat, Rational, Var};
use gammaeval::contiguity::ShiftVector;
use gammaeval::identity::{IdentityKind, IdentityRecord};
use gammaeval::numerics::certify::{certify_exprs, PointStatus, Verdict};
use gammaeval::numerics::hyper::{partial_sum, termination_index};
use gammaeval::numerics::{hyper_value, Expr};
use gammaeval::synthesis::{clausen_square, default_points, functional_ratio, synthesize, synthesize_at};
use gammaeval::Error;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PREC: usize = 200;

fn family(g: &str, base: [(i64, i64); 3], z0: (i64, i64)) -> AdmissibleFamily {
    let [a, b, c] = base;
    AdmissibleFamily::new(ShiftVector::parse(g).unwrap(), [rat(a.0, a.1), rat(b.0, b.1), rat(c.0, c.1)], rat(z0.0, z0.1))
}

fn first() -> AdmissibleFamily {
    family("2,2,1", [(0, 1), (1, 3), (5, 6)], (-1, 8))
}

fn quarter() -> AdmissibleFamily {
    family("-1,3,2", [(0, 1), (1, 1), (3, 2)], (1, 4))
}

fn eighth() -> AdmissibleFamily {
    family("-1,3,2", [(0, 1), (1, 1), (3, 2)], (-1, 8))
}

#[test]
fn first_family_form() {
    let e = synthesize(&first(), PREC).unwrap();
    assert_eq!(e.form.r0, rat(16, 27));
    assert_eq!(e.form.alphas, vec![rat(5, 6)]);
    assert_eq!(e.form.deltas, vec![rat(2, 3)]);
    assert!(e.form.normalization.point.is_zero());
    assert!(e.form.normalization.constant.is_none());
    assert!(e.certification.passed(), "{:?}", e.certification);
    assert_eq!(e.certification.evaluated(), 8);
    assert!(e.certification.tolerance_digits >= 40);
}

#[test]
fn first_family_matches_displayed_closed_form() {
    let e = synthesize(&first(), PREC).unwrap();
    let shown = Expr::parse("(16/27)^t*gamma(t+5/6)*gamma(2/3)/(gamma(t+2/3)*gamma(5/6))").unwrap();
    let c = certify_exprs(&e.lhs, &shown, &default_points(), PREC);
    assert_eq!(c.verdict, Verdict::NumericallyCertified, "{c:?}");
}

#[test]
fn second_family_is_certified() {
    let f = family("2,2,1", [(0, 1), (-1, 3), (2, 3)], (-1, 8));
    let e = synthesize(&f, PREC).unwrap();
    assert!(e.certification.passed(), "{:?}", e.certification);
    assert_eq!(e.certification.evaluated(), 8);
    // the ratio must reproduce the functional equation on direct series values
    let r = functional_ratio(&f).unwrap();
    for t in 0..3i64 {
        let at = |s: i64| {
            let b = f.params.at(&int(s)).unwrap();
            hyper_value(&b[..2], &b[2..], &f.z0, PREC).unwrap().to_bigfloat(PREC)
        };
        let rt = r.eval_var(Var::T, &int(t)).unwrap().constant_value().unwrap();
        let lhs = at(t + 1);
        let rhs = at(t) * gammaeval::numerics::BigFloat::from_rational(&rt, PREC);
        assert!(lhs.rel_diff(&rhs).log10_abs() < -50.0);
    }
}

#[test]
fn minus_one_three_two_form() {
    let r = functional_ratio(&quarter()).unwrap();
    let fl = factor_linear(&r, Var::T).unwrap();
    assert_eq!(fl.constant, rat(16, 27));
    let mut a = fl.alphas.clone();
    a.sort();
    let mut d = fl.deltas.clone();
    d.sort();
    assert_eq!(a, vec![rat(3, 4), rat(5, 4)]);
    assert_eq!(d, vec![rat(2, 3), rat(7, 6)]);
    assert_eq!(fl.recompose(Var::T), r);
}

#[test]
fn minus_one_three_two_duplication_form() {
    let e = synthesize(&quarter(), PREC).unwrap();
    assert!(e.certification.passed(), "{:?}", e.certification);
    let shown =
        Expr::parse("2^(4*t+2)*gamma(2*t+3/2)*gamma(1/2)/(3^(3*t+3/2)*gamma(2*t+4/3)*gamma(2/3))").unwrap();
    let c = certify_exprs(&e.rhs, &shown, &default_points(), PREC);
    assert_eq!(c.verdict, Verdict::NumericallyCertified, "{c:?}");
    assert_eq!(c.evaluated(), 8);
}

#[test]
fn clausen_quarter() {
    let e = synthesize(&quarter(), PREC).unwrap();
    let pts = [int(0), rat(1, 4), int(1)];
    let rec = clausen_square(&e, PREC, &pts).unwrap();
    assert_eq!(rec.kind, IdentityKind::GammaEval);
    assert!(rec.certification.as_ref().unwrap().passed(), "{:?}", rec.certification);
    let lin = |s: i64, c: Rational| Expr::linear(&int(s), &c);
    let want_lhs = Expr::hyp(
        vec![lin(-2, int(0)), lin(6, int(2)), lin(2, int(1))],
        vec![lin(4, int(2)), lin(2, rat(3, 2))],
        Expr::Num(rat(1, 4)),
    );
    assert_eq!(rec.lhs_expr().unwrap(), want_lhs);
    let shown = Expr::parse(
        "2^(8*t+4)*gamma(2*t+3/2)^2*gamma(1/2)^2/(3^(6*t+3)*gamma(2*t+4/3)^2*gamma(2/3)^2)",
    )
    .unwrap();
    let c = certify_exprs(&want_lhs, &shown, &pts, PREC);
    assert!(c.passed(), "{c:?}");
}

#[test]
fn clausen_minus_eighth() {
    let e = synthesize(&eighth(), PREC).unwrap();
    assert!(e.certification.passed(), "{:?}", e.certification);
    let pts = [int(0), rat(1, 4), int(1)];
    let rec = clausen_square(&e, PREC, &pts).unwrap();
    assert!(rec.certification.as_ref().unwrap().passed(), "{:?}", rec.certification);
    let shown = Expr::parse(
        "2^(6*t+2)*gamma(2*t+3/2)^2*gamma(1/2)^2/(3^(6*t+2)*gamma(t+7/6)^2*gamma(t+5/6)^2)",
    )
    .unwrap();
    let c = certify_exprs(&rec.lhs_expr().unwrap(), &shown, &pts, PREC);
    assert!(c.passed(), "{c:?}");
}

#[test]
fn clausen_rejects_wrong_shape() {
    // c - a - b = 1/3 here
    let e = synthesize(&first(), PREC).unwrap();
    match clausen_square(&e, PREC, &default_points()) {
        Err(Error::ClausenShapeMismatch(_)) => {}
        other => panic!("expected shape mismatch, got {other:?}"),
    }
}

#[test]
fn ratio_matches_terminating_values() {
    let fams = solve(ShiftVector::parse("-1,3,2").unwrap(), &[]).unwrap().families;
    assert!(!fams.is_empty());
    for f in &fams {
        let r = functional_ratio(f).unwrap();
        for tau in 0..5i64 {
            let val = |s: i64| {
                let b = f.params.at(&int(s)).unwrap();
                let n = termination_index(&b[..2]).expect("a = -t terminates");
                partial_sum(&b[..2], &b[2..], &f.z0, n)
            };
            let (lo, hi) = (val(tau), val(tau + 1));
            if lo.is_zero() {
                continue;
            }
            let rt = r.eval_var(Var::T, &int(tau)).unwrap().constant_value().unwrap();
            assert_eq!(hi / lo, rt, "{f} at t={tau}");
        }
    }
}

#[test]
fn fresh_points_recertify() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for f in [first(), quarter(), eighth()] {
        let e = synthesize(&f, PREC).unwrap();
        assert!(e.certification.passed());
        let pts: Vec<Rational> = (0..3).map(|_| rat(rng.gen_range(1..300), 100)).collect();
        let c = certify_exprs(&e.lhs, &e.rhs, &pts, PREC);
        assert!(c.passed(), "{f}: {c:?}");
    }
}

#[test]
fn lower_parameter_poles_are_skipped() {
    let f = family("1,1,6", [(0, 1), (-1, 2), (-3, 1)], (4, 5));
    let e = synthesize(&f, PREC).unwrap();
    assert!(e.certification.passed(), "{:?}", e.certification);
    let skipped: Vec<Rational> = e
        .certification
        .points
        .iter()
        .filter(|p| matches!(p.status, PointStatus::Skipped(_)))
        .map(|p| p.t.clone())
        .collect();
    assert_eq!(skipped, vec![int(0), rat(1, 3), rat(1, 2)]);
    assert!(e.form.normalization.constant.is_some());
}

#[test]
fn identity_record_round_trips() {
    let e = synthesize(&quarter(), PREC).unwrap();
    let rec = e.identity("quarter");
    let back = IdentityRecord::from_json(&rec.to_json().unwrap()).unwrap();
    assert_eq!(back, rec);
    assert_eq!(back.lhs_expr().unwrap(), e.lhs);
    assert_eq!(back.rhs_expr().unwrap(), e.rhs);
}

#[test]
fn zero_shift_ratio_is_one() {
    let f = family("0,0,0", [(1, 2), (1, 3), (3, 2)], (1, 2));
    assert!(functional_ratio(&f).unwrap().is_one());
}

#[test]
fn custom_points_are_respected() {
    let e = synthesize_at(&first(), PREC, &[int(1), int(2)]).unwrap();
    assert_eq!(e.certification.points.len(), 2);
}

fn series(upper: &[Rational], lower: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(order + 1);
    let mut term = Rational::one();
    for n in 0..=order {
        out.push(term.clone());
        let k = int(n as i64);
        let mut num = Rational::one();
        for a in upper {
            num *= a + &k;
        }
        let mut den = &k + Rational::one();
        for b in lower {
            den *= b + &k;
        }
        term = term * num / den;
    }
    out
}

fn square(s: &[Rational]) -> Vec<Rational> {
    (0..s.len()).map(|n| (0..=n).map(|i| &s[i] * &s[n - i]).fold(Rational::zero(), |x, y| x + y)).collect()
}

#[test]
fn clausen_truncations_agree() {
    let cfg = Config { cases: 32, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(cfg, TestRng::from_seed(RngAlgorithm::ChaCha, &[5; 32]));
    let r = (-40i64..40, 1i64..13);
    runner
        .run(&(r.clone(), r), |((an, ad), (bn, bd))| {
            let a = rat(an, ad);
            let b = rat(bn, bd);
            let half = rat(1, 2);
            let c = &a + &b + &half;
            let two = int(2);
            let ab2 = (&a + &b) * &two;
            let bad = |x: &Rational| x.is_integer() && *x <= Rational::zero();
            prop_assume!(!bad(&c) && !bad(&ab2));
            let lhs = square(&series(&[a.clone(), b.clone()], &[c.clone()], 30));
            let rhs = series(&[&a * &two, &b * &two, &a + &b], &[ab2, c], 30);
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .unwrap();
}
