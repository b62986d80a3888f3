use gammaeval::arith::{rat, Polynomial, Rational, Var};
use gammaeval::contiguity::{shift_matrix_factored, FactoredMatrix, ShiftVector};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

const ORDER: usize = 40;

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn shift() -> impl Strategy<Value = ShiftVector> {
    (-2i32..=2, -2i32..=2, -2i32..=2).prop_map(|(k, l, m)| ShiftVector::new(k, l, m))
}

/// Non-integral rationals keep every Pochhammer factor nonzero.
fn param() -> impl Strategy<Value = Rational> {
    (-20i64..=20, prop::sample::select(vec![3i64, 5, 7, 11])).prop_map(|(n, d)| rat(n * d + 1, d))
}

/// Taylor coefficients of F and F' below `len`.
fn series(a: &Rational, b: &Rational, c: &Rational, len: usize) -> (Vec<Rational>, Vec<Rational>) {
    let mut u = vec![Rational::one()];
    for n in 0..len {
        let nr = Rational::from_integer((n as i64).into());
        let next = &u[n] * (a + &nr) * (b + &nr) / ((c + &nr) * (&nr + Rational::one()));
        u.push(next);
    }
    let d: Vec<Rational> = (0..len).map(|n| &u[n + 1] * Rational::from_integer(((n + 1) as i64).into())).collect();
    u.truncate(len);
    (u, d)
}

fn z_coeffs(p: &Polynomial) -> Vec<Rational> {
    p.coeffs_in(Var::Z).iter().map(|c| c.constant_value().expect("only z remains")).collect()
}

fn mul_trunc(p: &[Rational], s: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in p.iter().enumerate() {
        for (j, y) in s.iter().enumerate() {
            if i + j < len {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn at_point(m: &FactoredMatrix, a: &Rational, b: &Rational, c: &Rational) -> Option<FactoredMatrix> {
    let bind = [
        (Var::A, Polynomial::constant(a.clone())),
        (Var::B, Polynomial::constant(b.clone())),
        (Var::C, Polynomial::constant(c.clone())),
    ];
    m.substitute(&bind).ok()
}

#[test]
fn series_oracle() {
    runner(50)
        .run(&(shift(), param(), param(), param()), |(g, a, b, c)| {
            let m = shift_matrix_factored(g);
            let Some(mp) = at_point(&m, &a, &b, &c) else {
                return Err(TestCaseError::reject("denominator vanishes at sample"));
            };
            let len = ORDER + 8;
            let (f, df) = series(&a, &b, &c, len);
            let k = |x: i32| Rational::from_integer(x.into());
            let (fs, dfs) = series(&(&a + k(g.k)), &(&b + k(g.l)), &(&c + k(g.m)), len);
            let delta = z_coeffs(&mp.den_product());
            for (row, target) in [(0usize, &fs), (1usize, &dfs)] {
                let lhs = mul_trunc(&delta, target, ORDER);
                let r0 = mul_trunc(&z_coeffs(&mp.p[row][0]), &f, ORDER);
                let r1 = mul_trunc(&z_coeffs(&mp.p[row][1]), &df, ORDER);
                for n in 0..ORDER {
                    prop_assert_eq!(&lhs[n], &(&r0[n] + &r1[n]), "shift {} row {} order {}", g, row, n);
                }
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn composition_consistency() {
    runner(50)
        .run(&(shift(), shift()), |(g1, g2)| {
            let whole = shift_matrix_factored(g1 + g2).to_transfer();
            let k = |x: i32| Rational::from_integer(x.into());
            let second = shift_matrix_factored(g2)
                .shift(Var::A, &k(g1.k))
                .shift(Var::B, &k(g1.l))
                .shift(Var::C, &k(g1.m));
            let composed = second.mul(&shift_matrix_factored(g1)).to_transfer();
            prop_assert_eq!(whole, composed);
            Ok(())
        })
        .unwrap();
}
