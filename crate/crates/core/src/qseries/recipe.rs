//! Sum and product recipes in the q-series grammar:
//!
//! ```text
//! sum(k) (-1)^k * qbinom-exp(k) * a^k * poch(q^2/a; q^2; k) / poch(q^3; q^3; k)
//! poch(a*q; q^2; inf) / poch(q^3; q^6; inf)
//! ```
//!
//! `poch(x; q^r; n)` is `(x; q^r)_n` with `n` an integer, `k+j` or `inf`, and
//! `qbinom-exp(k)` stands for `q^(k(k+1)/2)`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::laurent::{param_index, Mono, PARAMS};
use super::series::QSeries;
use crate::arith::rational::{is_integer, pow, to_i64};
use crate::arith::{int, rat, Rational};
use crate::error::{Error, Result};

/// Hard cap on the summation index.
const MAX_TERMS: i64 = 100_000;

/// Values for the parameters `a, b, c, d`; `None` keeps one symbolic.
pub type Bindings = [Option<Rational>; 4];

pub const SYMBOLIC: Bindings = [None, None, None, None];

/// `c₀ + c₁k + c₂k²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPoly([Rational; 3]);

impl KPoly {
    pub fn constant(c: Rational) -> Self {
        KPoly([c, Rational::zero(), Rational::zero()])
    }

    pub fn zero() -> Self {
        KPoly::constant(Rational::zero())
    }

    pub fn k() -> Self {
        KPoly([Rational::zero(), Rational::one(), Rational::zero()])
    }

    pub fn is_constant(&self) -> bool {
        self.0[1].is_zero() && self.0[2].is_zero()
    }

    fn degree(&self) -> usize {
        (0..3).rev().find(|&i| !self.0[i].is_zero()).unwrap_or(0)
    }

    fn add(&self, o: &KPoly) -> KPoly {
        KPoly([&self.0[0] + &o.0[0], &self.0[1] + &o.0[1], &self.0[2] + &o.0[2]])
    }

    fn scale(&self, c: &Rational) -> KPoly {
        KPoly([&self.0[0] * c, &self.0[1] * c, &self.0[2] * c])
    }

    fn mul(&self, o: &KPoly) -> Result<KPoly> {
        if self.degree() + o.degree() > 2 {
            return Err(parse_err(0, "exponent beyond degree 2 in k"));
        }
        let mut c = [Rational::zero(), Rational::zero(), Rational::zero()];
        for i in 0..3 {
            for j in 0..3 - i {
                c[i + j] += &self.0[i] * &o.0[j];
            }
        }
        Ok(KPoly(c))
    }

    pub fn eval(&self, k: i64) -> Result<i64> {
        let kk = int(k);
        let v = &self.0[0] + &self.0[1] * &kk + &self.0[2] * &kk * &kk;
        if !is_integer(&v) {
            return Err(Error::Eval(format!("exponent {v} at k={k} is not an integer")));
        }
        to_i64(&v).ok_or_else(|| Error::Eval("exponent overflow".into()))
    }

    /// True when the values eventually increase with `k`.
    fn grows(&self) -> bool {
        self.0[2].is_positive() || (self.0[2].is_zero() && self.0[1].is_positive())
    }
}

/// `coef · coef_pow^k · ∏ pᵢ^(Pᵢ(k)) · q^(Q(k))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KMono {
    pub coef: Rational,
    pub coef_pow: Rational,
    pub params: [KPoly; 4],
    pub q: KPoly,
}

impl KMono {
    pub fn constant(c: Rational) -> Self {
        KMono {
            coef: c,
            coef_pow: Rational::one(),
            params: [KPoly::zero(), KPoly::zero(), KPoly::zero(), KPoly::zero()],
            q: KPoly::zero(),
        }
    }

    pub fn one() -> Self {
        KMono::constant(Rational::one())
    }

    pub fn from_mono(m: &Mono, q: i64) -> Self {
        let mut out = KMono::constant(m.coef.clone());
        for (p, &e) in out.params.iter_mut().zip(&m.exps) {
            *p = KPoly::constant(int(e as i64));
        }
        out.q = KPoly::constant(int(q));
        out
    }

    fn param(i: usize) -> Self {
        let mut m = KMono::one();
        m.params[i] = KPoly::constant(Rational::one());
        m
    }

    fn q() -> Self {
        KMono { q: KPoly::constant(Rational::one()), ..KMono::one() }
    }

    fn is_k_free(&self) -> bool {
        self.coef_pow.is_one() && self.params.iter().all(KPoly::is_constant) && self.q.is_constant()
    }

    fn mul(&self, o: &KMono) -> KMono {
        KMono {
            coef: &self.coef * &o.coef,
            coef_pow: &self.coef_pow * &o.coef_pow,
            params: std::array::from_fn(|i| self.params[i].add(&o.params[i])),
            q: self.q.add(&o.q),
        }
    }

    fn inv(&self) -> Result<KMono> {
        if self.coef.is_zero() || self.coef_pow.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let m1 = -Rational::one();
        Ok(KMono {
            coef: Rational::one() / &self.coef,
            coef_pow: Rational::one() / &self.coef_pow,
            params: std::array::from_fn(|i| self.params[i].scale(&m1)),
            q: self.q.scale(&m1),
        })
    }

    fn pow(&self, e: &KPoly) -> Result<KMono> {
        let bad = |what: &str| parse_err(0, &format!("cannot raise {what} to a non-constant power"));
        let (coef, coef_pow) = if e.is_constant() {
            let n = e.eval(0)?;
            (pow(&self.coef, n), pow(&self.coef_pow, n))
        } else {
            if !self.coef_pow.is_one() {
                return Err(bad("a k-th power"));
            }
            if e.degree() > 1 && !self.coef.is_one() {
                return Err(bad("a constant"));
            }
            let (e0, e1) = (e.eval(0)?, e.eval(1)? - e.eval(0)?);
            (pow(&self.coef, e0), pow(&self.coef, e1))
        };
        let mut params = self.params.clone();
        for p in params.iter_mut() {
            *p = p.mul(e)?;
        }
        Ok(KMono { coef, coef_pow, params, q: self.q.mul(e)? })
    }

    /// The monomial at index `k`, with its power of `q`.
    pub fn at(&self, k: i64, bind: &Bindings) -> Result<(Mono, i64)> {
        let mut coef = &self.coef * pow(&self.coef_pow, k);
        let mut exps = [0i32; 4];
        for i in 0..4 {
            let e = self.params[i].eval(k)?;
            match &bind[i] {
                Some(v) if v.is_zero() && e < 0 => return Err(Error::ZeroDenominator),
                Some(v) => coef *= pow(v, e),
                None => exps[i] = e as i32,
            }
        }
        Ok((Mono { coef, exps }, self.q.eval(k)?))
    }

    /// Replaces parameter `i` by `pᵢ^p · q^s`.
    fn substitute(&mut self, i: usize, p: i64, s: i64) {
        let e = self.params[i].clone();
        self.params[i] = e.scale(&int(p));
        self.q = self.q.add(&e.scale(&int(s)));
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Len {
    Fixed(i64),
    /// `k + offset`.
    K(i64),
    Inf,
}

/// `(base; q^step)_len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poch {
    pub base: KMono,
    pub step: i64,
    pub len: Len,
}

/// A binomial `1 - m q^s`.
type Binomial = (Mono, i64);

impl Poch {
    /// Factors of the product at index `k`; negative lengths land in `inv`.
    fn expand(&self, k: i64, bind: &Bindings, order: usize, out: &mut Vec<Binomial>, inv: &mut Vec<Binomial>) -> Result<()> {
        let (m, e) = self.base.at(k, bind)?;
        if m.coef.is_zero() {
            return Ok(());
        }
        let n = match self.len {
            Len::Fixed(n) => n,
            Len::K(off) => k + off,
            Len::Inf => {
                if self.step <= 0 {
                    return Err(Error::NonTruncatable(format!("{self} has step q^{}", self.step)));
                }
                let mut j = 0;
                while e + self.step * j < order as i64 {
                    out.push((m.clone(), e + self.step * j));
                    j += 1;
                }
                return Ok(());
            }
        };
        if n >= 0 {
            out.extend((0..n).map(|j| (m.clone(), e + self.step * j)));
        } else {
            inv.extend((1..=-n).map(|j| (m.clone(), e - self.step * j)));
        }
        Ok(())
    }

    fn substitute(&mut self, i: usize, p: i64, s: i64) {
        self.base.substitute(i, p, s);
    }
}

impl fmt::Display for Poch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = match self.len {
            Len::Fixed(n) => n.to_string(),
            Len::K(0) => "k".into(),
            Len::K(o) => format!("k{o:+}"),
            Len::Inf => "inf".into(),
        };
        write!(f, "poch({}; q^{}; {len})", fmt_kmono(&self.base), self.step)
    }
}

fn fmt_kpoly(p: &KPoly) -> String {
    let mut parts = Vec::new();
    for (i, c) in p.0.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let v = match i {
            0 => crate::arith::rational::fmt_rational(c),
            1 if c.is_one() => "k".into(),
            1 => format!("{}*k", crate::arith::rational::fmt_rational(c)),
            _ if c.is_one() => "k^2".into(),
            _ => format!("{}*k^2", crate::arith::rational::fmt_rational(c)),
        };
        parts.push(v);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+").replace("+-", "-")
    }
}

fn fmt_kmono(m: &KMono) -> String {
    let mut parts = Vec::new();
    if !m.coef.is_one() || (m.params.iter().all(|p| p.0 == KPoly::zero().0) && m.q.0 == KPoly::zero().0) {
        parts.push(format!("({})", crate::arith::rational::fmt_rational(&m.coef)));
    }
    if !m.coef_pow.is_one() {
        parts.push(format!("({})^k", crate::arith::rational::fmt_rational(&m.coef_pow)));
    }
    let names = PARAMS.iter().map(|c| c.to_string()).chain(std::iter::once("q".to_string()));
    for (name, p) in names.zip(m.params.iter().chain(std::iter::once(&m.q))) {
        if *p == KPoly::zero() {
            continue;
        }
        if *p == KPoly::constant(Rational::one()) {
            parts.push(name);
        } else {
            parts.push(format!("{name}^({})", fmt_kpoly(p)));
        }
    }
    parts.join("*")
}

/// One side of a q-identity: a product, or a sum over `k >= 0` of products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Side {
    pub sum: bool,
    pub prefactor: KMono,
    pub num: Vec<Poch>,
    pub den: Vec<Poch>,
}

impl Side {
    pub fn parse(src: &str) -> Result<Side> {
        Parser::new(src).side()
    }

    /// Replaces parameter `i` by `pᵢ^p · q^s` throughout.
    pub fn substitute(&self, param: char, p: i64, s: i64) -> Result<Side> {
        let i = param_index(param).ok_or_else(|| parse_err(0, &format!("unknown parameter {param}")))?;
        let mut out = self.clone();
        out.prefactor.substitute(i, p, s);
        for f in out.num.iter_mut().chain(out.den.iter_mut()) {
            f.substitute(i, p, s);
        }
        Ok(out)
    }

    /// The summand (or the product) at index `k`, to `O(q^order)`.
    pub fn term(&self, k: i64, bind: &Bindings, order: usize) -> Result<QSeries> {
        let (m, e) = self.prefactor.at(k, bind)?;
        if e < 0 {
            return Err(Error::NonTruncatable(format!("prefactor has q^{e}")));
        }
        if m.coef.is_zero() || e >= order as i64 {
            return Ok(QSeries::zero(order));
        }
        let (mut num, mut den) = (Vec::new(), Vec::new());
        for f in &self.num {
            f.expand(k, bind, order, &mut num, &mut den)?;
        }
        for f in &self.den {
            f.expand(k, bind, order, &mut den, &mut num)?;
        }
        // common factors first, so that order-zero denominators can cancel
        let mut i = 0;
        while i < den.len() {
            if let Some(j) = num.iter().position(|x| *x == den[i]) {
                num.swap_remove(j);
                den.swap_remove(i);
            } else {
                i += 1;
            }
        }
        let mut s = QSeries::monomial(&m, e as usize, order);
        for (m, e) in &num {
            if *e < 0 {
                return Err(Error::NonTruncatable(format!("factor with q^{e}")));
            }
            s.mul_binomial(m, *e as usize);
        }
        for (m, e) in &den {
            if *e < 0 {
                return Err(Error::NonTruncatable(format!("factor with q^{e}")));
            }
            s.div_binomial(m, *e as usize)?;
        }
        Ok(s)
    }

    /// Expands the side to `O(q^order)`.
    pub fn eval(&self, order: usize, bind: &Bindings) -> Result<QSeries> {
        if !self.sum {
            return self.term(0, bind, order);
        }
        let mut acc = QSeries::zero(order);
        for k in 0..MAX_TERMS {
            if self.past_order(k, order)? {
                return Ok(acc);
            }
            acc = acc.add(&self.term(k, bind, order)?);
        }
        Err(Error::NonTerminatingOrder(format!("more than {MAX_TERMS} terms needed")))
    }

    /// True when the summands from index `k` on all vanish to `O(q^order)`.
    pub fn past_order(&self, k: i64, order: usize) -> Result<bool> {
        let q = &self.prefactor.q;
        if !q.grows() {
            return Err(Error::NonTerminatingOrder(format!("prefactor q^({}) does not grow with k", fmt_kpoly(q))));
        }
        Ok(q.eval(k)? >= order as i64 && q.eval(k + 1)? >= q.eval(k)?)
    }

    /// Summands `k = 0, 1, ...` that contribute below `O(q^order)`.
    pub fn terms(&self, order: usize, bind: &Bindings) -> Result<Vec<QSeries>> {
        let mut out = Vec::new();
        let mut k = 0;
        while !self.past_order(k, order)? {
            out.push(self.term(k, bind, order)?);
            k += 1;
            if k > MAX_TERMS {
                return Err(Error::NonTerminatingOrder(format!("more than {MAX_TERMS} terms needed")));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sum {
            write!(f, "sum(k) ")?;
        }
        write!(f, "{}", fmt_kmono(&self.prefactor))?;
        for p in &self.num {
            write!(f, " * {p}")?;
        }
        for p in &self.den {
            write!(f, " / {p}")?;
        }
        Ok(())
    }
}

fn parse_err(offset: usize, message: &str) -> Error {
    Error::Parse { offset, message: message.to_string() }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    sum: bool,
}

enum Factor {
    Atom(KMono),
    Poch(Poch),
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src: src.as_bytes(), pos: 0, sum: false }
    }

    fn err(&self, msg: &str) -> Error {
        parse_err(self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphabetic() || self.src[self.pos] == b'-') {
            // a dash only continues a word like qbinom-exp
            if self.src[self.pos] == b'-' && !self.src[start..self.pos].eq_ignore_ascii_case(b"qbinom") {
                break;
            }
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| parse_err(start, "expected an integer"))
    }

    fn side(mut self) -> Result<Side> {
        let save = self.pos;
        if self.word() == "sum" {
            self.expect(b'(')?;
            if self.word() != "k" {
                return Err(self.err("expected sum(k)"));
            }
            self.expect(b')')?;
            self.sum = true;
        } else {
            self.pos = save;
        }
        let mut side = Side { sum: self.sum, prefactor: KMono::one(), num: vec![], den: vec![] };
        let mut denom = false;
        if self.eat(b'-') {
            side.prefactor.coef = -side.prefactor.coef;
        }
        loop {
            match self.factor()? {
                Factor::Atom(m) => {
                    let m = if denom { m.inv()? } else { m };
                    side.prefactor = side.prefactor.mul(&m);
                }
                Factor::Poch(p) => {
                    if denom {
                        side.den.push(p);
                    } else {
                        side.num.push(p);
                    }
                }
            }
            if self.eat(b'*') {
                denom = false;
            } else if self.eat(b'/') {
                denom = true;
            } else {
                break;
            }
        }
        if self.peek().is_some() {
            return Err(self.err("unexpected trailing input"));
        }
        if !side.sum {
            let k_free = side.prefactor.is_k_free()
                && side.num.iter().chain(&side.den).all(|p| p.base.is_k_free() && !matches!(p.len, Len::K(_)));
            if !k_free {
                return Err(parse_err(0, "k appears outside sum(k)"));
            }
        }
        Ok(side)
    }

    fn factor(&mut self) -> Result<Factor> {
        let save = self.pos;
        match self.word().as_str() {
            "poch" => {
                self.expect(b'(')?;
                let base = self.mono()?;
                self.expect(b';')?;
                if self.word() != "q" {
                    return Err(self.err("expected q^r as the step"));
                }
                let step = if self.eat(b'^') { self.signed_integer()? } else { 1 };
                self.expect(b';')?;
                let len = self.len()?;
                self.expect(b')')?;
                Ok(Factor::Poch(Poch { base, step, len }))
            }
            "qbinom-exp" => {
                self.expect(b'(')?;
                if self.word() != "k" {
                    return Err(self.err("expected qbinom-exp(k)"));
                }
                self.expect(b')')?;
                let half = rat(1, 2);
                Ok(Factor::Atom(KMono { q: KPoly([Rational::zero(), half.clone(), half]), ..KMono::one() }))
            }
            _ => {
                self.pos = save;
                Ok(Factor::Atom(self.power()?))
            }
        }
    }

    fn signed_integer(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let n = self.integer()?;
        Ok(if neg { -n } else { n })
    }

    fn len(&mut self) -> Result<Len> {
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Ok(Len::Fixed(self.integer()?));
        }
        match self.word().as_str() {
            "inf" => Ok(Len::Inf),
            "k" => {
                if self.eat(b'+') {
                    Ok(Len::K(self.integer()?))
                } else if self.eat(b'-') {
                    Ok(Len::K(-self.integer()?))
                } else {
                    Ok(Len::K(0))
                }
            }
            _ => Err(self.err("expected a length: integer, k, k+j or inf")),
        }
    }

    /// `[-] power {(*|/) power}`, used inside parentheses and `poch`.
    fn mono(&mut self) -> Result<KMono> {
        let mut m = KMono::one();
        if self.eat(b'-') {
            m.coef = -m.coef;
        }
        m = m.mul(&self.power()?);
        loop {
            if self.eat(b'*') {
                m = m.mul(&self.power()?);
            } else if self.eat(b'/') {
                m = m.mul(&self.power()?.inv()?);
            } else {
                return Ok(m);
            }
        }
    }

    fn power(&mut self) -> Result<KMono> {
        let base = self.primary()?;
        if self.eat(b'^') {
            let e = self.exponent()?;
            base.pow(&e)
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<KMono> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let m = self.mono()?;
                self.expect(b')')?;
                Ok(m)
            }
            Some(c) if c.is_ascii_digit() => Ok(KMono::constant(int(self.integer()?))),
            Some(c) if c.is_ascii_alphabetic() => {
                let w = self.word();
                let ch = w.chars().next().unwrap();
                if w.len() != 1 {
                    return Err(self.err(&format!("unknown symbol {w}")));
                }
                if ch == 'q' {
                    return Ok(KMono::q());
                }
                let i = param_index(ch).ok_or_else(|| self.err(&format!("unknown symbol {w}")))?;
                Ok(KMono::param(i))
            }
            _ => Err(self.err("expected a number, parameter, q or '('")),
        }
    }

    fn exponent(&mut self) -> Result<KPoly> {
        let neg = self.eat(b'-');
        let e = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.kexpr()?;
                self.expect(b')')?;
                e
            }
            Some(c) if c.is_ascii_digit() => KPoly::constant(int(self.integer()?)),
            _ => {
                if self.word() != "k" {
                    return Err(self.err("expected an exponent"));
                }
                KPoly::k()
            }
        };
        Ok(if neg { e.scale(&-Rational::one()) } else { e })
    }

    fn kexpr(&mut self) -> Result<KPoly> {
        let mut acc = self.kterm()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.kterm()?);
            } else if self.eat(b'-') {
                acc = acc.add(&self.kterm()?.scale(&-Rational::one()));
            } else {
                return Ok(acc);
            }
        }
    }

    fn kterm(&mut self) -> Result<KPoly> {
        let mut acc = self.kunary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.kunary()?)?;
            } else if self.eat(b'/') {
                let d = self.kunary()?;
                if !d.is_constant() || d.0[0].is_zero() {
                    return Err(self.err("division by a non-constant or zero exponent"));
                }
                acc = acc.scale(&(Rational::one() / &d.0[0]));
            } else {
                return Ok(acc);
            }
        }
    }

    fn kunary(&mut self) -> Result<KPoly> {
        if self.eat(b'-') {
            return Ok(self.kunary()?.scale(&-Rational::one()));
        }
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.kexpr()?;
                self.expect(b')')?;
                e
            }
            Some(c) if c.is_ascii_digit() => KPoly::constant(int(self.integer()?)),
            _ => {
                if self.word() != "k" {
                    return Err(self.err("expected k or an integer"));
                }
                KPoly::k()
            }
        };
        if self.eat(b'^') {
            let n = self.integer()?;
            let mut acc = KPoly::constant(Rational::one());
            for _ in 0..n {
                acc = acc.mul(&base)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_summand() {
        let s = Side::parse("sum(k) (-1)^k * qbinom-exp(k) * a^k * poch(q^2/a; q^2; k) / poch(q^3; q^3; k)").unwrap();
        assert!(s.sum);
        assert_eq!(s.num.len(), 1);
        assert_eq!(s.den.len(), 1);
        assert_eq!(s.prefactor.coef_pow, int(-1));
        assert_eq!(s.prefactor.q.eval(3).unwrap(), 6);
        assert_eq!(s.num[0].base.params[0], KPoly::constant(int(-1)));
    }

    #[test]
    fn quadratic_exponents() {
        let s = Side::parse("sum(k) q^(k^2+2*k) * (a*q)^k").unwrap();
        assert_eq!(s.prefactor.q.eval(2).unwrap(), 10);
        assert_eq!(s.prefactor.params[0].eval(2).unwrap(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Side::parse("poch(a; q; k)").is_err());
        assert!(Side::parse("poch(a; q; 3").is_err());
        assert!(Side::parse("x^2").is_err());
        assert!(Side::parse("sum(k) poch(a; q; k) junk").is_err());
    }

    #[test]
    fn display_reparses() {
        let s = Side::parse("sum(k) (-1)^k * q^(k^2) * a^k / poch(a^3*q^2; q^3; k+1)").unwrap();
        assert_eq!(Side::parse(&s.to_string()).unwrap(), s);
    }
}
