//! Exact differential polynomial ring.
//!
//! Jet variables `u^(k)` over Gaussian rationals, with the total derivative,
//! exact antiderivatives, substitution and rewrite reduction.

mod integrate;
mod monomial;
mod parse;
mod poly;
mod reduce;
mod ring;
mod substitute;

pub use integrate::integrate_exact;
pub use monomial::Monomial;
pub use parse::{parse, parse_lambda_coeffs};
pub use poly::DiffPoly;
pub use reduce::{reduce_modulo, RewriteRule};
pub(crate) use ring::same_ring;
pub use ring::{JetVar, Ring, RingRef, VarSpec};
pub use substitute::{embed, invert_monomial, substitute, SubstMap};
