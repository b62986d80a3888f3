//! Laurent polynomials in the parameters `a, b, c, d` over ℚ.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::rational::fmt_rational;
use crate::arith::Rational;

pub const PARAMS: [char; 4] = ['a', 'b', 'c', 'd'];

pub type Exps = [i32; 4];

pub fn param_index(ch: char) -> Option<usize> {
    PARAMS.iter().position(|&p| p == ch)
}

/// `coef · a^e₀ b^e₁ c^e₂ d^e₃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mono {
    pub coef: Rational,
    pub exps: Exps,
}

impl Mono {
    pub fn constant(coef: Rational) -> Self {
        Mono { coef, exps: [0; 4] }
    }

    pub fn one() -> Self {
        Mono::constant(Rational::one())
    }

    pub fn is_constant(&self) -> bool {
        self.exps == [0; 4]
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono { coef: &self.coef * &o.coef, exps: add_exps(&self.exps, &o.exps) }
    }
}

fn add_exps(x: &Exps, y: &Exps) -> Exps {
    [x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]]
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent {
    terms: BTreeMap<Exps, Rational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn from_mono(m: &Mono) -> Self {
        let mut out = Laurent::zero();
        if !m.coef.is_zero() {
            out.terms.insert(m.exps, m.coef.clone());
        }
        out
    }

    pub fn constant(c: Rational) -> Self {
        Laurent::from_mono(&Mono::constant(c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rational)> {
        self.terms.iter()
    }

    /// `self += m · other`.
    pub fn add_scaled(&mut self, other: &Laurent, m: &Mono) {
        for (e, c) in &other.terms {
            let key = add_exps(e, &m.exps);
            let v = c * &m.coef;
            match self.terms.get_mut(&key) {
                Some(x) => {
                    *x += v;
                    if x.is_zero() {
                        self.terms.remove(&key);
                    }
                }
                None => {
                    self.terms.insert(key, v);
                }
            }
        }
    }

    pub fn scaled(&self, m: &Mono) -> Laurent {
        let mut out = Laurent::zero();
        out.add_scaled(self, m);
        out
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let mut out = self.clone();
        out.add_scaled(o, &Mono::one());
        out
    }

    pub fn sub(&self, o: &Laurent) -> Laurent {
        let mut out = self.clone();
        out.add_scaled(o, &Mono::constant(-Rational::one()));
        out
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e, c) in &o.terms {
            out.add_scaled(self, &Mono { coef: c.clone(), exps: *e });
        }
        out
    }

    /// Sets parameter `i` to the rational `v`; `None` for a negative power of zero.
    pub fn specialize(&self, i: usize, v: &Rational) -> Option<Laurent> {
        let mut out = Laurent::zero();
        for (e, c) in &self.terms {
            let k = e[i];
            if v.is_zero() && k < 0 {
                return None;
            }
            let f = crate::arith::rational::pow(v, k as i64);
            let mut ex = *e;
            ex[i] = 0;
            out.add_scaled(&Laurent::constant(c * f), &Mono { coef: Rational::one(), exps: ex });
        }
        Some(out)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest total degree first
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by_key(|(e, _)| std::cmp::Reverse((e.iter().sum::<i32>(), **e)));
        for (i, (e, c)) in items.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut parts = Vec::new();
            if !a.is_one() || *e == [0; 4] {
                parts.push(fmt_rational(&a));
            }
            for (j, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => parts.push(PARAMS[j].to_string()),
                    _ => parts.push(format!("{}^{}", PARAMS[j], k)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn negative_powers_multiply_out() {
        let x = Laurent::from_mono(&Mono { coef: int(1), exps: [1, 0, 0, 0] });
        let y = Laurent::from_mono(&Mono { coef: int(2), exps: [-1, 0, 0, 0] });
        assert_eq!(x.mul(&y), Laurent::constant(int(2)));
        assert_eq!(y.to_string(), "2*a^-1");
    }

    #[test]
    fn specialization() {
        let x = Laurent::from_mono(&Mono { coef: int(3), exps: [2, 1, 0, 0] });
        assert_eq!(x.specialize(0, &rat(1, 2)).unwrap().to_string(), "3/4*b");
        let y = Laurent::from_mono(&Mono { coef: int(1), exps: [-1, 0, 0, 0] });
        assert!(y.specialize(0, &int(0)).is_none());
    }
}
