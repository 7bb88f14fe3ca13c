use std::fmt;

use num_traits::{One, Zero};

use crate::diffring::{embed, parse_lambda_coeffs, same_ring, DiffPoly, RingRef};
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;

/// Polynomial in the spectral parameter λ with `DiffPoly` coefficients.
///
/// Stored in ascending powers with no trailing zero coefficient; the zero
/// polynomial has no coefficients and reports degree 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaPoly {
    ring: RingRef,
    coeffs: Vec<DiffPoly>,
}

impl LambdaPoly {
    pub fn zero(ring: &RingRef) -> Self {
        Self {
            ring: ring.clone(),
            coeffs: Vec::new(),
        }
    }

    /// From coefficients of λ^0, λ^1, ...
    pub fn from_ascending(ring: &RingRef, coeffs: Vec<DiffPoly>) -> Result<Self> {
        if coeffs.iter().any(|c| !same_ring(c.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        let mut p = Self {
            ring: ring.clone(),
            coeffs,
        };
        p.trim();
        Ok(p)
    }

    /// From coefficients listed highest power first.
    pub fn from_descending(ring: &RingRef, mut coeffs: Vec<DiffPoly>) -> Result<Self> {
        coeffs.reverse();
        Self::from_ascending(ring, coeffs)
    }

    pub fn constant(p: DiffPoly) -> Self {
        let ring = p.ring().clone();
        Self::from_ascending(&ring, vec![p]).expect("same ring")
    }

    /// `c·λ^k`.
    pub fn monomial(p: DiffPoly, k: usize) -> Self {
        let ring = p.ring().clone();
        let mut v = vec![DiffPoly::zero(&ring); k];
        v.push(p);
        Self::from_ascending(&ring, v).expect("same ring")
    }

    /// The spectral parameter itself.
    pub fn lambda(ring: &RingRef) -> Self {
        Self::monomial(DiffPoly::one(ring), 1)
    }

    pub fn parse(ring: &RingRef, s: &str) -> Result<Self> {
        Self::from_ascending(ring, parse_lambda_coeffs(ring, s)?)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(DiffPoly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficient of λ^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> DiffPoly {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| DiffPoly::zero(&self.ring))
    }

    pub fn ascending(&self) -> &[DiffPoly] {
        &self.coeffs
    }

    /// Coefficients from λ^degree down to λ^0.
    pub fn descending(&self) -> Vec<DiffPoly> {
        let mut v = self.coeffs.clone();
        v.reverse();
        v
    }

    pub fn leading(&self) -> DiffPoly {
        self.coeff(self.degree())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&DiffPoly, &DiffPoly) -> DiffPoly) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|k| f(&self.coeff(k), &other.coeff(k))).collect();
        Self::from_ascending(&self.ring, v)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let mut v = vec![DiffPoly::zero(&self.ring); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        Self::from_ascending(&self.ring, v)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn mul_diffpoly(&self, p: &DiffPoly) -> Self {
        self.map(|c| c * p)
    }

    /// `λ^k · self`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![DiffPoly::zero(&self.ring); k];
        v.extend(self.coeffs.iter().cloned());
        Self {
            ring: self.ring.clone(),
            coeffs: v,
        }
    }

    pub fn map(&self, f: impl Fn(&DiffPoly) -> DiffPoly) -> Self {
        let v = self.coeffs.iter().map(f).collect();
        Self::from_ascending(&self.ring, v).expect("map stays in the ring")
    }

    pub fn try_map(&self, f: impl Fn(&DiffPoly) -> Result<DiffPoly>) -> Result<Self> {
        let v = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        let ring = v
            .first()
            .map(|p| p.ring().clone())
            .unwrap_or(self.ring.clone());
        Self::from_ascending(&ring, v)
    }

    /// Total x-derivative, coefficient-wise.
    pub fn derivative(&self) -> Self {
        self.map(DiffPoly::derivative)
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        self.map(|p| p.nth_derivative(k))
    }

    /// Partial derivative in λ.
    pub fn d_lambda(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&GaussianRational::from_int(k as i64)))
            .collect();
        Self::from_ascending(&self.ring, v).expect("same ring")
    }

    /// `⟨ψ, φ⟩ = ψ'φ + 2ψφ'` on λ-polynomials.
    pub fn bracket(&self, phi: &Self) -> Result<Self> {
        let a = self.derivative().checked_mul(phi)?;
        let b = self.checked_mul(&phi.derivative())?;
        a.checked_add(&b.scale(&GaussianRational::from_int(2)))
    }

    /// Substitutes λ ↦ `x` (Horner).
    pub fn eval_at(&self, x: &DiffPoly) -> Result<DiffPoly> {
        if !same_ring(&self.ring, x.ring()) {
            return Err(Error::RingMismatch);
        }
        let mut acc = DiffPoly::zero(&self.ring);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        Ok(acc)
    }

    pub fn embed(&self, target: &RingRef) -> Result<Self> {
        let v = self
            .coeffs
            .iter()
            .map(|c| embed(c, target))
            .collect::<Result<Vec<_>>>()?;
        Self::from_ascending(target, v)
    }

    pub fn is_scalar_leading(&self) -> Option<GaussianRational> {
        self.leading().as_scalar().filter(|c| !c.is_zero())
    }
}

impl fmt::Display for LambdaPoly {
    /// Re-parseable text, highest power first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let lam = match k {
                0 => String::new(),
                1 => "lambda".to_string(),
                k => format!("lambda^{k}"),
            };
            let coeff = if c.num_terms() > 1 && k > 0 {
                format!("({c})")
            } else {
                c.to_string()
            };
            parts.push(match (k, c.as_scalar()) {
                (0, _) => coeff,
                (_, Some(s)) if s.is_one() => lam,
                (_, Some(s)) if (-s.clone()).is_one() => format!("-{lam}"),
                _ => format!("{coeff} {lam}"),
            });
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        write!(f, "{out}")
    }
}
