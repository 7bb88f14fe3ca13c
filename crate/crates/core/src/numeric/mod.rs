//! Floating-point checks on closed-form solutions.

mod abel;
mod checks;
mod eval;
mod provider;
mod report;
mod roots;

pub use abel::{abel_sum_check, AbelOptions};
pub use checks::{
    constancy_check, constancy_check_with, curve_membership, curve_points, eval_on_grid, phi_roots,
    CurvePoint,
};
pub use eval::{eval, eval_lambda, horner, CompiledLambda, CompiledPoly};
pub use provider::{Env, JetMap, JetProvider, KdvSoliton, NlsProvider, NlsSolution};
pub use report::{Grid, PointDetail, VerifyReport};
pub use roots::{polynomial_roots, taylor_shift};
