use num_complex::Complex64;

use super::provider::Env;
use crate::diffring::DiffPoly;
use crate::error::{Error, Result};
use crate::spectral::LambdaPoly;

// (coefficient, [(variable, order, exponent)])
type Term = (Complex64, Vec<(usize, usize, i32)>);

/// A differential polynomial with coefficients converted to doubles once.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    names: Vec<(String, bool)>,
    terms: Vec<Term>,
}

impl CompiledPoly {
    pub fn new(p: &DiffPoly) -> Self {
        let ring = p.ring();
        let names = ring
            .vars()
            .iter()
            .map(|v| (v.name.clone(), v.constant))
            .collect();
        let terms = p
            .terms()
            .map(|(m, c)| {
                let fs = m
                    .factors()
                    .iter()
                    .map(|&(j, e)| (j.var as usize, j.order as usize, e))
                    .collect();
                (c.to_complex64(), fs)
            })
            .collect();
        Self { names, terms }
    }

    fn lookup(&self, env: &Env, var: usize, order: usize) -> Result<Complex64> {
        let (name, constant) = &self.names[var];
        if *constant {
            return env
                .constants
                .get(name)
                .copied()
                .ok_or_else(|| Error::Numeric(format!("no value for constant '{name}'")));
        }
        env.jets
            .get(name)
            .ok_or_else(|| Error::Numeric(format!("no jets for '{name}'")))?
            .get(order)
            .copied()
            .ok_or_else(|| Error::Numeric(format!("'{name}' jets stop below order {order}")))
    }

    pub fn eval(&self, env: &Env) -> Result<Complex64> {
        let mut sum = Complex64::new(0.0, 0.0);
        for (c, fs) in &self.terms {
            let mut t = *c;
            for &(v, k, e) in fs {
                t *= self.lookup(env, v, k)?.powi(e);
            }
            sum += t;
        }
        Ok(sum)
    }
}

#[derive(Clone, Debug)]
pub struct CompiledLambda {
    coeffs: Vec<CompiledPoly>,
}

impl CompiledLambda {
    pub fn new(p: &LambdaPoly) -> Self {
        Self {
            coeffs: p.ascending().iter().map(CompiledPoly::new).collect(),
        }
    }

    /// Coefficients at a point, ascending in λ.
    pub fn coeffs_at(&self, env: &Env) -> Result<Vec<Complex64>> {
        self.coeffs.iter().map(|c| c.eval(env)).collect()
    }

    pub fn eval(&self, env: &Env, lambda: Complex64) -> Result<Complex64> {
        Ok(horner(&self.coeffs_at(env)?, lambda))
    }
}

/// `Σ c_k z^k` for ascending `c`.
pub fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

pub fn eval(p: &DiffPoly, env: &Env) -> Result<Complex64> {
    CompiledPoly::new(p).eval(env)
}

pub fn eval_lambda(p: &LambdaPoly, env: &Env, lambda: Complex64) -> Result<Complex64> {
    CompiledLambda::new(p).eval(env, lambda)
}
