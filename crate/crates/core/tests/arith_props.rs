use gammaeval::arith::{
    factor_linear, normalize, rat, rational_roots, Monomial, Polynomial, Rational, RationalFunction, Var,
};
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn monomial() -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0u16..=2, 4).prop_map(|e| {
        let mut m = Monomial::one();
        // a, c, z, t carry most of the structure in practice
        m.0[Var::A.index()] = e[0];
        m.0[Var::C.index()] = e[1];
        m.0[Var::Z.index()] = e[2];
        m.0[Var::T.index()] = e[3];
        m
    })
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((monomial(), small_rational()), 0..5).prop_map(Polynomial::from_terms)
}

fn univariate() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec(small_rational(), 1..5).prop_map(|cs| {
        Polynomial::from_coeffs_in(Var::T, &cs.into_iter().map(Polynomial::constant).collect::<Vec<_>>())
    })
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

#[test]
fn ring_axioms() {
    runner(500)
        .run(&(polynomial(), polynomial(), polynomial()), |(p, q, r)| {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert!((&p - &p).is_zero());
            Ok(())
        })
        .unwrap();
}

#[test]
fn normalize_is_idempotent() {
    runner(100)
        .run(&(polynomial(), polynomial(), polynomial()), |(p, q, g)| {
            prop_assume!(!q.is_zero() && !g.is_zero());
            let f = normalize(&p * &g, &q * &g).unwrap();
            let again = normalize(f.numer().clone(), f.denom().clone()).unwrap();
            prop_assert_eq!(&f, &again);
            prop_assert_eq!(f, normalize(p, q).unwrap());
            Ok(())
        })
        .unwrap();
}

#[test]
fn factor_linear_recomposes() {
    let lin = || (small_rational(), -6i64..=6, 1i64..=6).prop_map(|(c, n, d)| (c, rat(n, d)));
    runner(100)
        .run(
            &(proptest::collection::vec(lin(), 0..4), proptest::collection::vec(lin(), 0..4)),
            |(num, den)| {
                let build = |roots: &Vec<(Rational, Rational)>| {
                    roots.iter().fold(Polynomial::one(), |acc, (_, r)| &acc * &Polynomial::linear(Var::T, r.clone()))
                };
                let scale = num.first().map(|(c, _)| c.clone()).filter(|c| !c.is_zero()).unwrap_or(rat(3, 2));
                let f = RationalFunction::new(build(&num).scale(&scale), build(&den)).unwrap();
                let lf = factor_linear(&f, Var::T).unwrap();
                prop_assert_eq!(lf.recompose(Var::T), f);
                Ok(())
            },
        )
        .unwrap();
}

#[test]
fn rational_roots_are_exactly_the_roots() {
    runner(100)
        .run(&(univariate(), proptest::collection::vec(small_rational(), 100)), |(p, probes)| {
            prop_assume!(!p.is_zero());
            let roots = rational_roots(&p, Var::T).unwrap();
            for r in &roots {
                prop_assert!(p.eval_var(Var::T, r).is_zero());
            }
            for x in probes {
                let vanishes = p.eval_var(Var::T, &x).is_zero();
                prop_assert_eq!(vanishes, roots.contains(&x));
            }
            Ok(())
        })
        .unwrap();
}
