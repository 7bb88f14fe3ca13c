use num_complex::Complex64;
use rayon::prelude::*;

use super::eval::{horner, CompiledLambda};
use super::provider::{Env, JetProvider};
use super::report::{Grid, PointDetail, VerifyReport};
use super::roots::{derivative, newton, polynomial_roots, taylor_shift};
use crate::error::{Error, Result};
use crate::spectral::LambdaPoly;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AbelOptions {
    pub mu: usize,
    /// Finite-difference step.
    pub h: f64,
    pub tol: f64,
    /// `−1` flips the branch `Y = φ'` (negative control).
    pub branch_sign: f64,
    /// Terms kept in the Taylor expansion of `φ(x + jh, ·)` about `x`.
    pub taylor_order: usize,
}

impl Default for AbelOptions {
    fn default() -> Self {
        Self {
            mu: 1,
            h: 1e-4,
            tol: 1e-8,
            branch_sign: 1.0,
            taylor_order: 6,
        }
    }
}

const STENCIL: [i32; 5] = [-2, -1, 0, 1, 2];

/// `Σ_k λ_k^(μ−1) λ_k' / Y_k` at every grid point, compared with `0` for
/// `μ < n` and `−1/A_0` for `μ = n`.
///
/// `λ_k'` comes from five-point stencils on the displacements
/// `δ_j = λ_k(x + jh) − λ_k(x)`. Each δ_j is the root near zero of the
/// Taylor-shifted `Σ_m (jh)^m/m! · D^mφ(x, λ_k + δ)`, so the common rounding
/// of `φ(x, λ_k)` cancels in the stencil. Where `λ'` and `Y` vanish together
/// the ratio is replaced by `λ''/Y'`.
pub fn abel_sum_check(
    phi: &LambdaPoly,
    provider: &dyn JetProvider,
    grid: &Grid,
    opts: &AbelOptions,
) -> Result<VerifyReport> {
    let n = phi.degree();
    if opts.mu < 1 || opts.mu > n {
        return Err(Error::Precondition(format!(
            "mu must lie in 1..={n}, got {}",
            opts.mu
        )));
    }
    let m_max = opts.taylor_order;
    let derivs: Vec<CompiledLambda> = (0..=m_max.max(2))
        .map(|m| CompiledLambda::new(&phi.nth_derivative(m)))
        .collect();
    let h = opts.h;
    let mut fact = vec![1.0f64; m_max + 1];
    for m in 1..=m_max {
        fact[m] = fact[m - 1] * m as f64;
    }

    let details: Vec<PointDetail> = grid
        .xs()
        .into_par_iter()
        .map(|x| {
            let env = Env::at(provider, x);
            let c: Vec<Vec<Complex64>> = derivs
                .iter()
                .map(|d| d.coeffs_at(&env))
                .collect::<Result<_>>()?;
            let roots = polynomial_roots(&c[0])?;
            let a0 = *c[0].last().expect("degree ≥ 1");
            let expected = if opts.mu < n {
                Complex64::new(0.0, 0.0)
            } else {
                -1.0 / a0
            };
            let collision = roots.iter().enumerate().any(|(i, a)| {
                roots[i + 1..]
                    .iter()
                    .any(|b| (a - b).norm() < 1e-6 * (1.0 + a.norm()))
            });
            let mut sum = Complex64::new(0.0, 0.0);
            for &lk in &roots {
                let shifted: Vec<Vec<Complex64>> = c.iter().map(|p| taylor_shift(p, lk)).collect();
                let delta = |j: i32| -> Complex64 {
                    let t = j as f64 * h;
                    let mut g = vec![Complex64::new(0.0, 0.0); shifted[0].len()];
                    for m in 0..=m_max {
                        let w = t.powi(m as i32) / fact[m];
                        for (gi, si) in g.iter_mut().zip(&shifted[m]) {
                            *gi += si * w;
                        }
                    }
                    newton(&g, Complex64::new(0.0, 0.0))
                };
                let d: Vec<Complex64> = STENCIL.iter().map(|&j| delta(j)).collect();
                let l1 = (d[0] - 8.0 * d[1] + 8.0 * d[3] - d[4]) / (12.0 * h);
                let l2 = (-d[0] + 16.0 * d[1] - 30.0 * d[2] + 16.0 * d[3] - d[4]) / (12.0 * h * h);
                let y = horner(&shifted[1], d[2]);
                let ratio = if l1.norm() < 1e-6 * h * l2.norm() || y.norm() == 0.0 {
                    let y1 =
                        horner(&shifted[2], d[2]) + horner(&derivative(&shifted[1]), d[2]) * l1;
                    l2 / y1
                } else {
                    l1 / y
                };
                sum += lk.powi(opts.mu as i32 - 1) * ratio / opts.branch_sign;
            }
            let deviation = (sum - expected).norm();
            Ok(PointDetail {
                x,
                value: sum,
                deviation: if deviation.is_finite() {
                    deviation
                } else {
                    f64::INFINITY
                },
                flagged: collision,
            })
        })
        .collect::<Result<_>>()?;

    // the expected value is the same at every point for normalized solitons
    let env = Env::at(provider, grid.start);
    let a0 = *derivs[0].coeffs_at(&env)?.last().expect("degree ≥ 1");
    let reference = if opts.mu < n {
        Complex64::new(0.0, 0.0)
    } else {
        -1.0 / a0
    };
    Ok(VerifyReport::new(
        format!("abel_sum_mu{}", opts.mu),
        *grid,
        reference,
        opts.tol,
        details,
    ))
}
