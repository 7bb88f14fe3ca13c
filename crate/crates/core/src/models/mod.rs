//! KdV and NLS presets.

mod kdv;
mod nls;

pub use kdv::KdvModel;
pub use nls::{EIdentity, NlsModel, Reality};

use crate::diffring::{reduce_modulo, DiffPoly, RewriteRule};
use crate::error::Result;

/// A condition integrated once and reduced: `expression = 0`, with the named
/// constant appearing inside `expression`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedCondition {
    pub name: String,
    pub expression: DiffPoly,
    pub constant_symbol: String,
    /// Rules under which the expression is a first integral.
    pub rules: Vec<RewriteRule>,
}

impl ReducedCondition {
    /// `D(expression)` reduces to zero modulo `rules`.
    pub fn invariant_holds(&self) -> Result<bool> {
        Ok(reduce_modulo(&self.expression.derivative(), &self.rules)?.is_zero())
    }
}
