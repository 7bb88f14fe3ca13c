use crate::diffring::{integrate_exact, DiffPoly, JetVar, RewriteRule, Ring, RingRef};
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::spectral::{derive_soliton, ConstantsPolicy, OperatorSpec, SolitonDerivation};

use super::ReducedCondition;

/// Schrödinger operator `λ − q` over the ring `{q}`.
#[derive(Clone, Debug)]
pub struct KdvModel {
    pub ring: RingRef,
    pub operator: OperatorSpec,
}

impl Default for KdvModel {
    fn default() -> Self {
        Self::new()
    }
}

impl KdvModel {
    pub fn new() -> Self {
        let ring = Ring::jets(&["q"]);
        let operator = OperatorSpec::parse(&ring, "lambda - q").expect("valid operator");
        Self { ring, operator }
    }

    /// `A_0 = 4^n/2`, so that `A_k = 4^(n−k) F_(k−1)` with `F_(−1) = ½`.
    pub fn a0(n: usize) -> GaussianRational {
        GaussianRational::from_int(4).pow(n as i32) * GaussianRational::from_frac(1, 2)
    }

    pub fn derive(&self, n: usize) -> Result<SolitonDerivation> {
        derive_soliton(&self.operator, n, Self::a0(n), &ConstantsPolicy::Zero)
    }

    pub fn q(&self) -> DiffPoly {
        DiffPoly::var(&self.ring, "q").expect("q in ring")
    }

    /// `𝓜(φ) = φ''' + 4qφ' + 2q'φ`.
    pub fn m(&self, phi: &DiffPoly) -> DiffPoly {
        let q = self.q();
        let four = GaussianRational::from_int(4);
        let two = GaussianRational::from_int(2);
        &(&phi.nth_derivative(3) + &(&q * &phi.derivative()).scale(&four))
            + &(&q.derivative() * phi).scale(&two)
    }

    /// `F_0..F_n` from `F_j = ∫𝓜(F_(j−1))`, `F_(−1) = ½`, zero constants.
    pub fn densities(&self, n: usize) -> Result<Vec<DiffPoly>> {
        let mut prev = DiffPoly::constant(&self.ring, GaussianRational::from_frac(1, 2));
        let mut out = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            let f = integrate_exact(&self.m(&prev))?;
            out.push(f.clone());
            prev = f;
        }
        Ok(out)
    }

    /// `F_n = const`, with the stationary flow `F_n' = 0` solved for `q^(2n+1)`
    /// as the rewrite rule.
    pub fn reduced_density(&self, n: usize) -> Result<ReducedCondition> {
        let f = self.densities(n)?.pop().expect("n+1 densities");
        let top = JetVar::new(0, 2 * n + 1);
        let df = f.derivative();
        let a = df.coefficient_of(top, 1);
        let lead = a
            .as_scalar()
            .filter(|c| !num_traits::Zero::is_zero(c))
            .ok_or_else(|| {
                Error::Structural(
                    "F_n' is not linear in its top jet with constant coefficient".into(),
                )
            })?;
        let rest = &df - &DiffPoly::jet(&self.ring, "q", 2 * n + 1)?.scale(&lead);
        let rule = RewriteRule::new(top, rest.scale(&-lead.inv().expect("nonzero")))?;
        Ok(ReducedCondition {
            name: format!("kdv-density-{n}"),
            expression: f,
            constant_symbol: format!("F_{n}"),
            rules: vec![rule],
        })
    }
}
