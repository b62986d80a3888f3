//! Exact arithmetic kernel.

pub mod gcd;
pub mod linear;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod roots;
pub mod unipoly;

pub use gcd::{gcd, lcm, resultant};
pub use linear::LinearForm;
pub use parse::{parse_constant, parse_polynomial, parse_rational_function};
pub use poly::{Monomial, Polynomial, Var};
pub use ratfunc::{normalize, RationalFunction};
pub use rational::{int, rat, Rational};
pub use roots::{factor_linear, rational_roots, LinearFactorization};
pub use unipoly::UniPoly;
