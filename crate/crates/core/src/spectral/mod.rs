//! Operators `L(λ) = Σ L_i λ^(d−i)`, the soliton recursion, the `d`
//! solvability conditions and linear combinations of normalized solitons.

mod lambda;

pub use lambda::LambdaPoly;

use num_traits::Zero;
use serde::Serialize;

use crate::diffring::{integrate_exact, same_ring, DiffPoly, RingRef};
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;

/// A multiplicative spectral operator of degree `d ≥ 1` with constant,
/// nonzero leading coefficient `L_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSpec {
    l: LambdaPoly,
    l0: GaussianRational,
}

impl OperatorSpec {
    pub fn new(l: LambdaPoly) -> Result<Self> {
        if l.degree() == 0 {
            return Err(Error::Precondition(
                "operator must have degree d ≥ 1".into(),
            ));
        }
        let l0 = l.is_scalar_leading().ok_or_else(|| {
            Error::Precondition("leading coefficient L_0 must be a nonzero constant".into())
        })?;
        Ok(Self { l, l0 })
    }

    pub fn parse(ring: &RingRef, s: &str) -> Result<Self> {
        Self::new(LambdaPoly::parse(ring, s)?)
    }

    pub fn d(&self) -> usize {
        self.l.degree()
    }

    pub fn l0(&self) -> &GaussianRational {
        &self.l0
    }

    pub fn poly(&self) -> &LambdaPoly {
        &self.l
    }

    pub fn ring(&self) -> &RingRef {
        self.l.ring()
    }

    /// `L_i`, the coefficient of `λ^(d−i)`; zero outside `0..=d`.
    pub fn l_i(&self, i: usize) -> DiffPoly {
        if i > self.d() {
            return DiffPoly::zero(self.ring());
        }
        self.l.coeff(self.d() - i)
    }

    pub fn embed(&self, target: &RingRef) -> Result<Self> {
        Self::new(self.l.embed(target)?)
    }
}

/// How the integration constants of `A_1..A_n` are chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstantsPolicy {
    /// All zero (normalized solitons).
    Zero,
    /// `C_1..C_n`, added to `A_1..A_n` respectively.
    Explicit(Vec<GaussianRational>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedConstant {
    pub name: String,
    #[serde(serialize_with = "crate::format::json::ser_gaussian")]
    pub value: GaussianRational,
}

/// Output of the recursion: `A_0..A_n`, the constants used, and the
/// extension `A_(n+1)..A_(n+d)` needed by the conditions and the curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolitonDerivation {
    pub n: usize,
    pub a: Vec<DiffPoly>,
    pub a0: GaussianRational,
    pub constants: Vec<NamedConstant>,
    pub extended: Vec<DiffPoly>,
}

impl SolitonDerivation {
    pub fn ring(&self) -> &RingRef {
        self.a[0].ring()
    }

    /// `A_k` for any integer `k` (zero for `k < 0` or past the extension).
    pub fn coeff(&self, k: i64) -> DiffPoly {
        if k < 0 {
            return DiffPoly::zero(self.ring());
        }
        let k = k as usize;
        if k <= self.n {
            self.a[k].clone()
        } else {
            self.extended
                .get(k - self.n - 1)
                .cloned()
                .unwrap_or_else(|| DiffPoly::zero(self.ring()))
        }
    }

    /// `φ_n = Σ A_i λ^(n−i)`.
    pub fn phi(&self) -> LambdaPoly {
        LambdaPoly::from_descending(self.ring(), self.a.clone()).expect("coefficients share a ring")
    }
}

/// `d` condition residuals, index 0 holding `s = d−1` down to `s = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionSet {
    pub residuals: Vec<DiffPoly>,
}

impl ConditionSet {
    /// Residual `𝒜_(n,s)`.
    pub fn s(&self, s: usize) -> &DiffPoly {
        &self.residuals[self.residuals.len() - 1 - s]
    }

    pub fn all_zero(&self) -> bool {
        self.residuals.iter().all(DiffPoly::is_zero)
    }
}

fn check_ring(op: &OperatorSpec, ring: &RingRef) -> Result<()> {
    if same_ring(op.ring(), ring) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// `φ''' − 2⟨L, φ⟩`.
pub fn residual(op: &OperatorSpec, phi: &LambdaPoly) -> Result<LambdaPoly> {
    check_ring(op, phi.ring())?;
    let br = op.poly().bracket(phi)?;
    phi.nth_derivative(3)
        .checked_sub(&br.scale(&GaussianRational::from_int(2)))
}

/// One recursion step without integration constant:
/// `−(1/2L_0)(∫ Σ_(i=1..d) ⟨L_i, A_(k−i)⟩ − ½A''_(k−d))`.
fn recursion_step(op: &OperatorSpec, coeffs: &[DiffPoly], k: usize) -> Result<DiffPoly> {
    let ring = op.ring();
    let get = |j: i64| -> DiffPoly {
        if j < 0 {
            DiffPoly::zero(ring)
        } else {
            coeffs[j as usize].clone()
        }
    };
    let mut s = DiffPoly::zero(ring);
    for i in 1..=op.d() {
        let a = get(k as i64 - i as i64);
        if !a.is_zero() {
            s = &s + &op.l_i(i).bracket(&a);
        }
    }
    let integral = integrate_exact(&s)?;
    let half = GaussianRational::from_frac(1, 2);
    let a_kd = get(k as i64 - op.d() as i64).nth_derivative(2);
    let factor = -(GaussianRational::from_int(2) * op.l0().clone())
        .inv()
        .expect("L_0 ≠ 0");
    Ok((&integral - &a_kd.scale(&half)).scale(&factor))
}

/// Runs the recursion for `A_1..A_(n+d)` from the leading constant `a0`.
pub fn derive_soliton(
    op: &OperatorSpec,
    n: usize,
    a0: GaussianRational,
    constants: &ConstantsPolicy,
) -> Result<SolitonDerivation> {
    if a0.is_zero() {
        return Err(Error::Precondition("A_0 must be nonzero".into()));
    }
    let consts: Vec<GaussianRational> = match constants {
        ConstantsPolicy::Zero => vec![GaussianRational::zero(); n],
        ConstantsPolicy::Explicit(c) if c.len() == n => c.clone(),
        ConstantsPolicy::Explicit(c) => {
            return Err(Error::Precondition(format!(
                "expected {n} integration constants, got {}",
                c.len()
            )))
        }
    };
    let ring = op.ring();
    let mut coeffs = vec![DiffPoly::constant(ring, a0.clone())];
    for k in 1..=n + op.d() {
        let mut a = recursion_step(op, &coeffs, k)?;
        if k <= n {
            a = &a + &DiffPoly::constant(ring, consts[k - 1].clone());
        }
        coeffs.push(a);
    }
    let extended = coeffs.split_off(n + 1);
    let named = match constants {
        ConstantsPolicy::Zero => Vec::new(),
        ConstantsPolicy::Explicit(_) => consts
            .into_iter()
            .enumerate()
            .map(|(i, value)| NamedConstant {
                name: format!("C_{}", i + 1),
                value,
            })
            .collect(),
    };
    Ok(SolitonDerivation {
        n,
        a: coeffs,
        a0,
        constants: named,
        extended,
    })
}

fn check_extended(der: &SolitonDerivation, op: &OperatorSpec) -> Result<()> {
    check_ring(op, der.ring())?;
    if der.extended.len() < op.d() {
        return Err(Error::Precondition(
            "derivation is not extended through A_(n+d)".into(),
        ));
    }
    Ok(())
}

/// `𝒜_(n,s) = A'''_(n−s) − 2 Σ_(i=d−s..d) ⟨L_i, A_(d+n−s−i)⟩`, `s = d−1..0`.
pub fn conditions(der: &SolitonDerivation, op: &OperatorSpec) -> Result<ConditionSet> {
    check_extended(der, op)?;
    let (n, d) = (der.n as i64, op.d() as i64);
    let two = GaussianRational::from_int(2);
    let residuals = (0..d)
        .rev()
        .map(|s| {
            let mut acc = DiffPoly::zero(der.ring());
            for i in (d - s)..=d {
                let a = der.coeff(d + n - s - i);
                if !a.is_zero() {
                    acc = &acc + &op.l_i(i as usize).bracket(&a);
                }
            }
            &der.coeff(n - s).nth_derivative(3) - &acc.scale(&two)
        })
        .collect();
    Ok(ConditionSet { residuals })
}

/// `𝒜_(n,s) = 4L_0 A'_(n+d−s) + 2 Σ_(i=1..d−s−1) ⟨L_i, A_(d+n−s−i)⟩`.
pub fn conditions_alternative(der: &SolitonDerivation, op: &OperatorSpec) -> Result<ConditionSet> {
    check_extended(der, op)?;
    let (n, d) = (der.n as i64, op.d() as i64);
    let four_l0 = GaussianRational::from_int(4) * op.l0().clone();
    let residuals = (0..d)
        .rev()
        .map(|s| {
            let mut acc = der.coeff(n + d - s).derivative().scale(&four_l0);
            for i in 1..(d - s) {
                let a = der.coeff(d + n - s - i);
                acc = &acc
                    + &op
                        .l_i(i as usize)
                        .bracket(&a)
                        .scale(&GaussianRational::from_int(2));
            }
            acc
        })
        .collect();
    Ok(ConditionSet { residuals })
}

/// `ψ_n = Σ_j K_j φ_(n−j)` for `normalized = [φ_n, φ_(n−1), …, φ_0]` of one
/// operator; the extension follows from the extensions of each `φ_(n−j)`.
pub fn linear_combination(
    k: &[GaussianRational],
    normalized: &[SolitonDerivation],
) -> Result<SolitonDerivation> {
    let Some(first) = normalized.first() else {
        return Err(Error::Precondition("no normalized solitons given".into()));
    };
    let n = first.n;
    if k.len() != n + 1 || normalized.len() != n + 1 {
        return Err(Error::Precondition(format!(
            "need {} coefficients K_0..K_n and solitons φ_n..φ_0",
            n + 1
        )));
    }
    if k[0].is_zero() {
        return Err(Error::Precondition("K_0 must be nonzero".into()));
    }
    for (j, der) in normalized.iter().enumerate() {
        if der.n != n - j || !same_ring(der.ring(), first.ring()) || der.a0 != first.a0 {
            return Err(Error::Precondition(
                "normalized list must be φ_n..φ_0 of one operator with one A_0".into(),
            ));
        }
        if der.extended.len() != first.extended.len() {
            return Err(Error::Precondition("inconsistent extension lengths".into()));
        }
    }
    let ring = first.ring();
    let d = first.extended.len() as i64;
    let b = |idx: i64| -> DiffPoly {
        let mut acc = DiffPoly::zero(ring);
        for (j, kj) in k.iter().enumerate() {
            let i = idx - j as i64;
            if i >= 0 && !kj.is_zero() {
                acc = &acc + &normalized[j].coeff(i).scale(kj);
            }
        }
        acc
    };
    let n_i = n as i64;
    let a: Vec<DiffPoly> = (0..=n_i).map(b).collect();
    let extended: Vec<DiffPoly> = (n_i + 1..=n_i + d).map(b).collect();
    let constants = (1..=n)
        .map(|j| NamedConstant {
            name: format!("C_{j}"),
            value: &k[j] * &first.a0,
        })
        .collect();
    Ok(SolitonDerivation {
        n,
        a0: &k[0] * &first.a0,
        a,
        constants,
        extended,
    })
}

/// Recovers `K_0..K_n` with `der = Σ K_j φ_(n−j)`, given the normalized
/// `φ_n` (extended) of the same operator. Fails unless every remainder is a
/// scalar multiple of `A_0`.
pub fn decompose(
    der: &SolitonDerivation,
    normalized: &SolitonDerivation,
) -> Result<Vec<GaussianRational>> {
    if der.n != normalized.n || !same_ring(der.ring(), normalized.ring()) {
        return Err(Error::Precondition("mismatched derivations".into()));
    }
    let a0_inv = normalized.a0.inv().expect("A_0 ≠ 0");
    let mut k: Vec<GaussianRational> = Vec::with_capacity(der.n + 1);
    for j in 0..=der.n as i64 {
        let mut rem = der.coeff(j);
        for (i, ki) in k.iter().enumerate() {
            rem = &rem - &normalized.coeff(j - i as i64).scale(ki);
        }
        let c = rem.as_scalar().ok_or_else(|| {
            Error::Precondition(format!("A_{j} remainder {rem} is not a constant"))
        })?;
        k.push(&c * &a0_inv);
    }
    let check = {
        let list: Vec<SolitonDerivation> = (0..=der.n)
            .map(|j| truncate(normalized, der.n - j))
            .collect();
        linear_combination(&k, &list)?
    };
    if check.a != der.a || check.extended != der.extended {
        return Err(Error::Precondition(
            "derivation is not a linear combination of normalized solitons".into(),
        ));
    }
    Ok(k)
}

/// The normalized `φ_m` (with its extension) read off a longer normalized derivation.
pub fn truncate(normalized: &SolitonDerivation, m: usize) -> SolitonDerivation {
    let d = normalized.extended.len();
    SolitonDerivation {
        n: m,
        a: (0..=m as i64).map(|i| normalized.coeff(i)).collect(),
        a0: normalized.a0.clone(),
        constants: Vec::new(),
        extended: (m as i64 + 1..=(m + d) as i64)
            .map(|i| normalized.coeff(i))
            .collect(),
    }
}

impl ConditionSet {
    pub fn len(&self) -> usize {
        self.residuals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residuals.is_empty()
    }
}
