//! Arbitrary-precision evaluation: Γ at rational points, hypergeometric
//! series, Legendre-symbol gamma products, closed-form expressions and
//! numeric certification of identities.

pub mod bigfloat;
pub mod certify;
pub mod cm;
pub mod expr;
pub mod gamma;
pub mod hyper;

pub use bigfloat::BigFloat;
pub use certify::{certify, Certification, PointResult, PointStatus, Verdict};
pub use cm::{cm_product, legendre};
pub use expr::Expr;
pub use gamma::gamma;
pub use hyper::{hyper_value, HyperValue};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: usize = 200;
