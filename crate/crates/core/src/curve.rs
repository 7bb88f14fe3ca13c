//! The curve polynomial `H(φ) = φφ'' − ½φ'² − 2Lφ²` and its structure.

use num_traits::Zero;

use crate::diffring::{integrate_exact, same_ring, DiffPoly};
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::spectral::{conditions, residual, LambdaPoly, OperatorSpec, SolitonDerivation};

/// `H(φ)` in closed form; no integration.
pub fn hamiltonian(op: &OperatorSpec, phi: &LambdaPoly) -> Result<LambdaPoly> {
    if !same_ring(op.ring(), phi.ring()) {
        return Err(Error::RingMismatch);
    }
    let d1 = phi.derivative();
    let a = phi.checked_mul(&phi.nth_derivative(2))?;
    let b = d1
        .checked_mul(&d1)?
        .scale(&GaussianRational::from_frac(1, 2));
    let c = op
        .poly()
        .checked_mul(&phi.checked_mul(phi)?)?
        .scale(&GaussianRational::from_int(2));
    a.checked_sub(&b)?.checked_sub(&c)
}

/// Checks `D_x H(φ) = φ·(φ''' − 2⟨L, φ⟩)`; the witness is the difference.
pub fn derivative_identity_check(
    op: &OperatorSpec,
    phi: &LambdaPoly,
) -> Result<(bool, LambdaPoly)> {
    let lhs = hamiltonian(op, phi)?.derivative();
    let rhs = phi.checked_mul(&residual(op, phi)?)?;
    let w = lhs.checked_sub(&rhs)?;
    Ok((w.is_zero(), w))
}

/// Genus of `½Y² = −H(X)` with `deg H = 2n + d`.
pub fn genus(n: usize, d: usize) -> usize {
    if d % 2 == 1 {
        n + (d - 1) / 2
    } else {
        n + (d - 2) / 2
    }
}

/// `H_n` together with its structural data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveData {
    pub h: LambdaPoly,
    pub n: usize,
    pub d: usize,
    pub degree: usize,
    pub genus: usize,
    pub leading: GaussianRational,
    pub gap_ok: bool,
}

impl CurveData {
    /// Builds the data without judging it.
    pub fn compute(op: &OperatorSpec, der: &SolitonDerivation) -> Result<Self> {
        let h = hamiltonian(op, &der.phi())?;
        let (n, d) = (der.n, op.d());
        let leading = h
            .coeff(2 * n + d)
            .as_scalar()
            .unwrap_or_else(GaussianRational::zero);
        let gap_ok = (n + d..2 * n + d).all(|k| h.coeff(k).is_zero());
        Ok(Self {
            degree: h.degree(),
            genus: genus(n, d),
            h,
            n,
            d,
            leading,
            gap_ok,
        })
    }

    /// `−2L_0A_0²`.
    pub fn expected_leading(op: &OperatorSpec, der: &SolitonDerivation) -> GaussianRational {
        -(GaussianRational::from_int(2) * op.l0().clone() * der.a0.clone() * der.a0.clone())
    }

    /// `R_n = −2H_n`.
    pub fn r(&self) -> LambdaPoly {
        self.h.scale(&GaussianRational::from_int(-2))
    }
}

/// `H_n` with the degree, leading coefficient and gap verified.
pub fn curve_data(op: &OperatorSpec, der: &SolitonDerivation) -> Result<CurveData> {
    let data = CurveData::compute(op, der)?;
    let expected = 2 * der.n + op.d();
    if data.degree != expected {
        return Err(Error::Structural(format!(
            "deg H = {}, expected 2n+d = {expected}",
            data.degree
        )));
    }
    let lead = CurveData::expected_leading(op, der);
    if data.h.leading().as_scalar().as_ref() != Some(&lead) {
        return Err(Error::Structural(format!(
            "leading coefficient {} differs from -2 L_0 A_0^2 = {lead}",
            data.h.leading()
        )));
    }
    if !data.gap_ok {
        return Err(Error::Structural(format!(
            "nonzero coefficient in the gap λ^{}..λ^{}",
            der.n + op.d(),
            2 * der.n + op.d() - 1
        )));
    }
    Ok(data)
}

/// `H_n` assembled from the integrated condition sums:
/// `−2L_0A_0²λ^(2n+d) + Σ_k (Σ_(i+j=k) ∫𝒜_(n,d−i)A_j) λ^(d+n−k)`.
///
/// Agrees with `hamiltonian` up to jet-free terms in each coefficient (the
/// integration constants); exactly for normalized solitons.
pub fn hamiltonian_from_conditions(
    op: &OperatorSpec,
    der: &SolitonDerivation,
) -> Result<LambdaPoly> {
    let cs = conditions(der, op)?;
    let (n, d) = (der.n, op.d());
    let ring = der.ring();
    let mut coeffs = vec![DiffPoly::zero(ring); 2 * n + d + 1];
    coeffs[2 * n + d] = DiffPoly::constant(ring, CurveData::expected_leading(op, der));
    for k in 1..=d + n {
        let mut sum = DiffPoly::zero(ring);
        for i in 1..=d.min(k) {
            let j = k - i;
            if j > n {
                continue;
            }
            sum = &sum + &(cs.s(d - i) * &der.a[j]);
        }
        coeffs[d + n - k] = integrate_exact(&sum)?;
    }
    LambdaPoly::from_ascending(ring, coeffs)
}

/// KdV integral form of `H_n` with `F_(−1) = A_0/4^n`, `F_j = A_(j+1)/4^(n−j−1)`,
/// `F_n = 4A_(n+1)`:
/// `−(4λ)^(2n+1)F_(−1)²/2 + (4λ)^n F_(−1)F_n + Σ_(j<n) (4λ)^(n−1−j)[F_jF_n − ∫F_j'F_n]`.
pub fn kdv_integral_form(der: &SolitonDerivation) -> Result<LambdaPoly> {
    if der.extended.is_empty() {
        return Err(Error::Precondition("derivation is not extended".into()));
    }
    let n = der.n;
    let four = GaussianRational::from_int(4);
    let f = |j: i64| -> DiffPoly {
        let k = j + 1;
        let e = n as i64 - k;
        let s = four.pow(-e as i32);
        der.coeff(k).scale(&s)
    };
    let fm1 = f(-1);
    let fn_ = f(n as i64);
    let four_lambda = |p: usize, c: DiffPoly| -> LambdaPoly {
        LambdaPoly::monomial(c.scale(&four.pow(p as i32)), p)
    };
    let mut h = four_lambda(
        2 * n + 1,
        (&fm1 * &fm1).scale(&GaussianRational::from_frac(-1, 2)),
    );
    h = h.checked_add(&four_lambda(n, &fm1 * &fn_))?;
    for j in 0..n {
        let fj = f(j as i64);
        let integral = integrate_exact(&(&fj.derivative() * &fn_))?;
        h = h.checked_add(&four_lambda(n - 1 - j, &(&fj * &fn_) - &integral))?;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffring::{Ring, RingRef};
    use crate::spectral::{derive_soliton, ConstantsPolicy};

    fn kdv(n: usize) -> (RingRef, OperatorSpec, SolitonDerivation) {
        let r = Ring::jets(&["q"]);
        let op = OperatorSpec::parse(&r, "lambda - q").unwrap();
        let a0 = GaussianRational::from_int(4).pow(n as i32) * GaussianRational::from_frac(1, 2);
        let der = derive_soliton(&op, n, a0, &ConstantsPolicy::Zero).unwrap();
        (r, op, der)
    }

    #[test]
    fn kdv_h0_h1() {
        let (r, op, der) = kdv(0);
        assert_eq!(
            hamiltonian(&op, &der.phi()).unwrap(),
            LambdaPoly::parse(&r, "-1/2 (lambda - q)").unwrap()
        );
        let (r, op, der) = kdv(1);
        let h1 = LambdaPoly::parse(
            &r,
            "-8 lambda^3 + 2 lambda (q'' + 3q^2) + q(q'' + 3q^2) - (1/2 q'^2 + q^3)",
        )
        .unwrap();
        assert_eq!(hamiltonian(&op, &der.phi()).unwrap(), h1);
        let data = curve_data(&op, &der).unwrap();
        assert_eq!((data.degree, data.genus), (3, 1));
        assert_eq!(data.leading, GaussianRational::from_int(-8));
        assert_eq!(kdv_integral_form(&der).unwrap(), h1);
        assert_eq!(hamiltonian_from_conditions(&op, &der).unwrap(), h1);
    }

    #[test]
    fn identity_on_kdv_phi2() {
        let (_, op, der) = kdv(2);
        let (ok, w) = derivative_identity_check(&op, &der.phi()).unwrap();
        assert!(ok, "{w}");
        assert_eq!(residual(&op, &der.phi()).unwrap().degree(), 0);
        let zero = LambdaPoly::zero(op.ring());
        assert!(derivative_identity_check(&op, &zero).unwrap().0);
    }

    #[test]
    fn genus_formula() {
        assert_eq!(genus(1, 1), 1);
        assert_eq!(genus(2, 2), 2);
        assert_eq!(genus(1, 2), 1);
        assert_eq!(genus(3, 3), 4);
    }

    #[test]
    fn gap_violation_is_structural() {
        let r = Ring::jets(&["u"]);
        // nonzero constant in L_1 breaks the gap
        let op = OperatorSpec::parse(&r, "lambda + 1 + u").unwrap();
        let der = derive_soliton(
            &op,
            1,
            GaussianRational::from_int(2),
            &ConstantsPolicy::Zero,
        )
        .unwrap();
        assert!(matches!(curve_data(&op, &der), Err(Error::Structural(_))));
    }
}
