use num_complex::Complex64;
use rayon::prelude::*;

use super::eval::{horner, CompiledLambda, CompiledPoly};
use super::provider::{Env, JetProvider};
use super::report::{Grid, PointDetail, VerifyReport};
use super::roots::polynomial_roots;
use crate::diffring::DiffPoly;
use crate::error::Result;
use crate::spectral::LambdaPoly;

/// Values of `expr` over the grid, in grid order.
pub fn eval_on_grid(
    expr: &DiffPoly,
    provider: &dyn JetProvider,
    env_extra: &Env,
    grid: &Grid,
) -> Result<Vec<(f64, Complex64)>> {
    let c = CompiledPoly::new(expr);
    grid.xs()
        .into_par_iter()
        .map(|x| {
            let mut env = Env::at(provider, x);
            env.constants.extend(env_extra.constants.clone());
            Ok((x, c.eval(&env)?))
        })
        .collect()
}

/// `max|v − mean| ≤ tol·(1 + |mean|)`.
pub fn constancy_check(
    check: &str,
    expr: &DiffPoly,
    provider: &dyn JetProvider,
    grid: &Grid,
    tol: f64,
) -> Result<VerifyReport> {
    constancy_check_with(check, expr, provider, &Env::default(), grid, tol)
}

/// As `constancy_check`, with extra constant values layered over the
/// provider's.
pub fn constancy_check_with(
    check: &str,
    expr: &DiffPoly,
    provider: &dyn JetProvider,
    extra: &Env,
    grid: &Grid,
    tol: f64,
) -> Result<VerifyReport> {
    let vals = eval_on_grid(expr, provider, extra, grid)?;
    let n = vals.len().max(1) as f64;
    let mean = vals.iter().map(|v| v.1).sum::<Complex64>() / n;
    let details = vals
        .into_iter()
        .map(|(x, v)| PointDetail {
            x,
            value: v,
            deviation: (v - mean).norm(),
            flagged: false,
        })
        .collect();
    Ok(VerifyReport::new(
        check,
        *grid,
        mean,
        tol * (1.0 + mean.norm()),
        details,
    ))
}

/// Roots in λ of `φ(x, λ)`, ordered by (re, im).
pub fn phi_roots(phi: &LambdaPoly, provider: &dyn JetProvider, x: f64) -> Result<Vec<Complex64>> {
    let env = Env::at(provider, x);
    polynomial_roots(&CompiledLambda::new(phi).coeffs_at(&env)?)
}

/// `(λ_k(x), Y = φ'(x, λ_k))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub x: f64,
    pub k: usize,
    pub lambda: Complex64,
    pub y: Complex64,
}

/// Points `P_k` over the grid; `perturb` shifts every λ_k (negative control).
pub fn curve_points(
    phi: &LambdaPoly,
    provider: &dyn JetProvider,
    grid: &Grid,
    perturb: f64,
) -> Result<Vec<CurvePoint>> {
    let c = CompiledLambda::new(phi);
    let dc = CompiledLambda::new(&phi.derivative());
    let per_x: Vec<Vec<CurvePoint>> = grid
        .xs()
        .into_par_iter()
        .map(|x| {
            let env = Env::at(provider, x);
            let roots = polynomial_roots(&c.coeffs_at(&env)?)?;
            let d = dc.coeffs_at(&env)?;
            Ok(roots
                .into_iter()
                .enumerate()
                .map(|(k, l)| {
                    let lambda = l + perturb;
                    CurvePoint {
                        x,
                        k,
                        lambda,
                        y: horner(&d, lambda),
                    }
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(per_x.into_iter().flatten().collect())
}

/// `|H(λ_k) + ½Y²| ≤ tol·(1 + max ½|Y|²)` at every point.
pub fn curve_membership(
    points: &[CurvePoint],
    h: &LambdaPoly,
    provider: &dyn JetProvider,
    grid: &Grid,
    tol: f64,
) -> Result<VerifyReport> {
    let ch = CompiledLambda::new(h);
    let details: Vec<PointDetail> = points
        .par_iter()
        .map(|p| {
            let env = Env::at(provider, p.x);
            let v = ch.eval(&env, p.lambda)? + 0.5 * p.y * p.y;
            Ok(PointDetail {
                x: p.x,
                value: v,
                deviation: v.norm(),
                flagged: false,
            })
        })
        .collect::<Result<_>>()?;
    let scale = points
        .iter()
        .map(|p| 0.5 * p.y.norm_sqr())
        .fold(0.0, f64::max);
    Ok(VerifyReport::new(
        "curve_membership",
        *grid,
        Complex64::new(0.0, 0.0),
        tol * (1.0 + scale),
        details,
    ))
}
