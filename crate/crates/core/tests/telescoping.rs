use gammaeval::arith::{int, parse_polynomial, parse_rational_function, rat, Rational, RationalFunction, Var};
use gammaeval::contiguity::{order2_recurrence, ParamVector, ShiftVector};
use gammaeval::identity::{IdentityKind, IdentityRecord};
use gammaeval::recurrence::Recurrence;
use gammaeval::telescoping::{
    certificate_residue, check_gosper, gosper, leading_coefficient_probe, numeric_residual, recurrence_record,
    step_two_conditions, telescope_order, verify_wz_pair, wz_pair, zeilberger, HyperTermFamily, DEFAULT_MAX_ORDER,
};
use gammaeval::Error;
use num_traits::Zero;

const PREC: usize = 200;

fn g_family() -> HyperTermFamily {
    HyperTermFamily::parse("1/2, t, 1-t", "1, 1/2+t", "1/4").unwrap()
}

fn first_family() -> HyperTermFamily {
    HyperTermFamily::parse("2*t, 1/3+2*t", "5/6+t", "-1/8").unwrap()
}

fn z2_families() -> [HyperTermFamily; 2] {
    [
        HyperTermFamily::parse("1/3, t, -1/3+2*t", "2/3, 1/2+t", "2").unwrap(),
        HyperTermFamily::parse("2/3, t, -2/3+2*t", "4/3, 1/2+t", "2").unwrap(),
    ]
}

fn shadow(term: &HyperTermFamily, rec: &Recurrence) {
    for t in [int(1), rat(3, 2), int(2)] {
        let r = numeric_residual(term, rec, &t, PREC).unwrap();
        assert!(r.log10_abs() < -30.0, "{term} at t={t}: {}", r.to_scientific(5));
    }
}

#[test]
fn gosper_classical_term() {
    let r = parse_rational_function("(n+1)^2/n").unwrap();
    let rho = gosper(&r).unwrap();
    assert!(check_gosper(&r, &rho));
    assert_eq!(rho, parse_rational_function("1/n").unwrap());
}

#[test]
fn gosper_rejects_harmonic_term() {
    let r = parse_rational_function("(n+1)/(n+2)").unwrap();
    assert_eq!(gosper(&r), Err(Error::NotGosperSummable));
}

#[test]
fn gosper_handles_constant_ratio() {
    // a constant term is summable: G(n) = n
    let r = RationalFunction::one();
    let rho = gosper(&r).unwrap();
    assert!(check_gosper(&r, &rho));
}

#[test]
fn g_family_is_second_order() {
    let term = g_family();
    assert!(telescope_order(&term, 1).unwrap().is_none());
    let rec = zeilberger(&term, DEFAULT_MAX_ORDER).unwrap();
    assert_eq!(rec.order(), 2);
    assert!(certificate_residue(&term, &rec).unwrap().is_zero());
    let want = Recurrence::homogeneous(vec![
        parse_polynomial("24*t^3+48*t^2+18*t").unwrap(),
        parse_polynomial("-(56*t^3+140*t^2+102*t+27)").unwrap(),
        parse_polynomial("32*t^3+96*t^2+94*t+30").unwrap(),
    ]);
    assert!(rec.equivalent(&want), "{rec}");
    shadow(&term, &rec);
}

#[test]
fn g_family_at_unit_argument() {
    let term = HyperTermFamily::parse("1/2, t, 1-t", "1, 1/2+t", "1").unwrap();
    let rec = zeilberger(&term, 2).unwrap();
    let want = Recurrence::homogeneous(vec![
        parse_polynomial("t*(2*t+1)*(2*t+3)").unwrap(),
        parse_polynomial("-(2*t+3)*(10*t^2+10*t+3)").unwrap(),
        parse_polynomial("(t+1)*(4*t+3)*(4*t+5)").unwrap(),
    ]);
    assert!(rec.equivalent(&want), "{rec}");
    // terminating values at t = 1, 2, 3
    let vals = [int(1), rat(3, 5), rat(3, 7)];
    assert!(rec.apply_rational(&int(1), &vals).is_zero());
}

#[test]
fn z2_families_are_second_order() {
    for term in z2_families() {
        assert!(telescope_order(&term, 1).unwrap().is_none(), "{term}");
        let rec = zeilberger(&term, 3).unwrap();
        assert_eq!(rec.order(), 2, "{term}");
        assert!(certificate_residue(&term, &rec).unwrap().is_zero());
    }
}

#[test]
fn first_family_is_first_order() {
    let term = first_family();
    let rec = zeilberger(&term, 2).unwrap();
    assert_eq!(rec.order(), 1);
    assert_eq!(rec.ratio().unwrap(), parse_rational_function("(16/27)*(t+5/6)/(t+2/3)").unwrap());
    shadow(&term, &rec);
}

#[test]
fn agrees_with_contiguity() {
    let gamma = ShiftVector::parse("1,1,1").unwrap();
    let base = [rat(1, 3), rat(1, 4), rat(2, 5)];
    let z = rat(1, 3);
    let term = HyperTermFamily::parse("1/3+t, 1/4+t", "2/5+t", "1/3").unwrap();
    let rec = zeilberger(&term, 2).unwrap();
    assert_eq!(rec.order(), 2);
    let other = order2_recurrence(gamma, &ParamVector::family(base, gamma), Some(&z)).unwrap();
    assert!(rec.equivalent(&other), "{rec} vs {other}");
    shadow(&term, &rec);
}

#[test]
fn wz_checks() {
    assert!(verify_wz_pair(&HyperTermFamily::zero(), &RationalFunction::zero()).unwrap().holds);
    let term = first_family();
    let rec = zeilberger(&term, 1).unwrap();
    let (a, b) = wz_pair(&term, &rec).unwrap();
    let ok = verify_wz_pair(&a, &b).unwrap();
    assert!(ok.holds, "{:?}", ok.residue);
    let bad = verify_wz_pair(&a, &(&b + &RationalFunction::one())).unwrap();
    assert!(!bad.holds);
    assert!(!bad.residue.is_zero());
}

#[test]
fn wz_pair_needs_first_order() {
    let term = g_family();
    let rec = zeilberger(&term, 2).unwrap();
    assert!(wz_pair(&term, &rec).is_err());
}

#[test]
fn probe_221() {
    let p = leading_coefficient_probe(ShiftVector::parse("2,2,1").unwrap()).unwrap();
    assert!(p.candidates.contains(&rat(-1, 8)), "{:?}", p.candidates);
    assert!(p.content.eval_var(Var::Z, &rat(-1, 8)).is_zero());
}

#[test]
fn probe_zero_shift_is_degenerate() {
    match leading_coefficient_probe(ShiftVector::parse("0,0,0").unwrap()) {
        Err(Error::DegenerateShift(_)) => {}
        other => panic!("expected degenerate shift, got {other:?}"),
    }
}

#[test]
fn probe_minus_one_three_two() {
    let p = leading_coefficient_probe(ShiftVector::parse("-1,3,2").unwrap()).unwrap();
    assert!(p.candidates.contains(&rat(1, 4)), "{:?}", p.candidates);
}

#[test]
fn extra_parameter_is_inhomogeneous() {
    let term = HyperTermFamily::parse("1, -t, 1/2-t", "1/3, -11/6+4*t", "1/5").unwrap();
    let rec = zeilberger(&term, 2).unwrap();
    assert_eq!(rec.order(), 1);
    assert!(rec.inhomogeneity.as_ref().is_some_and(|h| !h.is_zero()));
    assert!(certificate_residue(&term, &rec).unwrap().is_zero());
    // the sums terminate at nonnegative integer t
    for t in [int(1), int(2), int(3)] {
        let r = numeric_residual(&term, &rec, &t, PREC).unwrap();
        assert!(r.log10_abs() < -30.0, "t={t}: {}", r.to_scientific(5));
    }
}

#[test]
fn order_bounds_are_enforced() {
    assert!(zeilberger(&g_family(), 0).is_err());
    assert!(zeilberger(&g_family(), 5).is_err());
    assert_eq!(zeilberger(&g_family(), 1), Err(Error::NoRecurrenceFound(1)));
}

#[test]
fn step_two_flag() {
    let rec = zeilberger(&g_family(), 2).unwrap();
    let conds = step_two_conditions(&rec).unwrap();
    assert!(conds.iter().any(|c| !c.is_zero()));
    assert!(step_two_conditions(&zeilberger(&first_family(), 1).unwrap()).is_none());
}

#[test]
fn recurrence_record_round_trips() {
    let term = first_family();
    let rec = zeilberger(&term, 1).unwrap();
    let r = recurrence_record("first", &term, &rec);
    assert_eq!(r.kind, IdentityKind::Recurrence);
    assert_eq!(IdentityRecord::from_json(&r.to_json().unwrap()).unwrap(), r);
}

#[test]
fn random_two_f_one_certificates() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for _ in 0..6 {
        let mut q = || Rational::new(rng.gen_range(1..9).into(), rng.gen_range(2..7).into());
        let (a, b, c) = (q(), q(), q());
        let term = HyperTermFamily::parse(&format!("{a}+t, {b}"), &format!("{c}+2*t"), "1/2").unwrap();
        let rec = zeilberger(&term, 2).unwrap();
        assert!(certificate_residue(&term, &rec).unwrap().is_zero(), "{term}");
        shadow(&term, &rec);
    }
}
