use gammaeval::arith::{int, rat, Rational};
use gammaeval::numerics::hyper::partial_sum;
use gammaeval::numerics::{cm_product, gamma, hyper_value, BigFloat, Expr, HyperValue};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]))
}

fn close(a: &BigFloat, b: &BigFloat, digits: f64) -> bool {
    a.rel_diff(b).log10_abs() < -digits
}

#[test]
fn gamma_recurrence_property() {
    let p = 160;
    runner(100)
        .run(&(1i64..500, 1i64..100), |(n, d)| {
            let x = Rational::new(n.into(), d.into());
            prop_assume!(x < int(5));
            let lhs = gamma(&(x.clone() + int(1)), p).unwrap();
            let rhs = &BigFloat::from_rational(&x, p) * &gamma(&x, p).unwrap();
            prop_assert!(close(&lhs, &rhs, 40.0), "x = {x}");
            Ok(())
        })
        .unwrap();
}

#[test]
fn doubling_precision_is_consistent() {
    for x in [rat(1, 3), rat(7, 6), rat(-5, 4), rat(43, 7)] {
        let lo = gamma(&x, 128).unwrap();
        let hi = gamma(&x, 256).unwrap();
        assert!(lo.rel_diff(&hi) <= BigFloat::from_i64(2, 256).powi(8 - 128), "{x}");
    }
}

#[test]
fn terminating_series_are_bit_exact() {
    runner(50)
        .run(&(0i64..12, -30i64..30, 1i64..30, 1i64..40), |(t, b, c, zd)| {
            let up = [int(-t), rat(b, 7)];
            let lo = [rat(2 * c + 1, 2)];
            let z = rat(1, zd);
            match hyper_value(&up, &lo, &z, 64).unwrap() {
                HyperValue::Exact(v) => prop_assert_eq!(v, partial_sum(&up, &lo, &z, t as u64)),
                HyperValue::Approx(_) => prop_assert!(false, "terminating series summed numerically"),
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn tail_bound_is_sound() {
    // extending the exact sum far past the stopping point stays within the claimed error
    let up = [rat(1, 3), rat(5, 7)];
    let lo = [rat(3, 2)];
    for z in [rat(4, 5), rat(-1, 8), rat(1, 5)] {
        let v = hyper_value(&up, &lo, &z, 100).unwrap().to_bigfloat(100);
        let long = partial_sum(&up, &lo, &z, 900);
        let exact = BigFloat::from_rational(&long, 200);
        assert!(v.rel_diff(&exact) <= BigFloat::from_i64(2, 200).powi(10 - 100), "z = {z}");
    }
}

#[test]
fn quarter_constant() {
    let p = 200;
    let h = hyper_value(&[rat(1, 2), rat(1, 2), rat(1, 2)], &[int(1), int(1)], &rat(1, 4), p)
        .unwrap()
        .to_bigfloat(p);
    let closed = Expr::parse("sqrt(3)*gamma(1/3)^6/(2^(8/3)*pi^4)").unwrap().eval(&int(0), p).unwrap();
    assert!(close(&h, &closed, 40.0));
}

#[test]
fn cm_constants() {
    let p = 200;
    let h7 = hyper_value(&[rat(1, 2), rat(1, 2), rat(1, 2)], &[int(1), int(1)], &rat(1, 64), p).unwrap().to_bigfloat(p);
    let c7 = Expr::parse("2/(7*pi)*cm(7)").unwrap().eval(&int(0), p).unwrap();
    assert!(close(&h7, &c7, 30.0));
    let z = -Rational::new(1.into(), 512000.into());
    let h43 = hyper_value(&[rat(1, 2), rat(1, 6), rat(5, 6)], &[int(1), int(1)], &z, p).unwrap().to_bigfloat(p);
    let c43 = Expr::parse("4*sqrt(15)/(43*pi)*cm(43)").unwrap().eval(&int(0), p).unwrap();
    assert!(close(&h43, &c43, 30.0));
    // the product alone is independent of the route through Expr
    assert!(close(&cm_product(7, p).unwrap(), &Expr::Cm(7).eval(&int(0), p).unwrap(), 50.0));
}
