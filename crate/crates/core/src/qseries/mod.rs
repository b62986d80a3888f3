//! Truncated q-series with Laurent polynomial coefficients in `a, b, c, d`,
//! q-Pochhammer products and coefficientwise identity checks.

pub mod identities;
pub mod laurent;
pub mod recipe;
pub mod series;

pub use identities::{
    as_printed, builtin, builtin_names, builtin_source, chern_telescoping, mutated, verify_q_identity, QCheck, QIdentity, DEFAULT_ORDER,
};
pub use laurent::{Laurent, Mono};
pub use recipe::{Bindings, Len, Side, SYMBOLIC};
pub use series::QSeries;

use crate::error::Result;

/// `(m q^e; q^step)_len` to `O(q^order)`; `len = None` is the infinite product.
pub fn qpochhammer(m: &Mono, e: i64, step: i64, len: Option<i64>, order: usize) -> Result<QSeries> {
    let base = recipe::KMono::from_mono(m, e);
    let len = len.map_or(Len::Inf, Len::Fixed);
    let side = Side { sum: false, prefactor: recipe::KMono::one(), num: vec![recipe::Poch { base, step, len }], den: vec![] };
    side.eval(order, &SYMBOLIC)
}
