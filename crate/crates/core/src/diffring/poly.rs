use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::ring::{same_ring, JetName, JetVar, RingRef};
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;

/// A differential polynomial: exact Gaussian-rational combination of monomials
/// in jet variables of one ring.
#[derive(Clone, Debug)]
pub struct DiffPoly {
    ring: RingRef,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl PartialEq for DiffPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for DiffPoly {}

impl DiffPoly {
    pub fn zero(ring: &RingRef) -> Self {
        Self {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: GaussianRational) -> Self {
        Self::term(ring, Monomial::one(), c)
    }

    pub fn int(ring: &RingRef, n: i64) -> Self {
        Self::constant(ring, GaussianRational::from_int(n))
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::int(ring, 1)
    }

    pub fn term(ring: &RingRef, m: Monomial, c: GaussianRational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The jet `name^(order)`.
    pub fn jet(ring: &RingRef, name: &str, order: usize) -> Result<Self> {
        let idx = ring
            .index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        if order > 0 && ring.var(idx).constant {
            return Ok(Self::zero(ring));
        }
        Ok(Self::term(
            ring,
            Monomial::from_factors([(JetVar::new(idx, order), 1)]),
            GaussianRational::one(),
        ))
    }

    pub fn var(ring: &RingRef, name: &str) -> Result<Self> {
        Self::jet(ring, name, 0)
    }

    /// Builds a polynomial from raw terms, validating exponents against the ring.
    pub fn from_terms(
        ring: &RingRef,
        terms: impl IntoIterator<Item = (Monomial, GaussianRational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            for &(j, e) in m.factors() {
                let v = ring
                    .vars()
                    .get(j.var as usize)
                    .ok_or_else(|| Error::UnknownVariable(format!("#{}", j.var)))?;
                if e < 0 && !(v.invertible && j.order == 0) {
                    return Err(Error::InvalidExponent(v.name.clone()));
                }
                if v.constant && j.order > 0 {
                    return Err(Error::InvalidRing(format!(
                        "derivative of constant '{}'",
                        v.name
                    )));
                }
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no jet variable of any kind appears.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The scalar value if the polynomial has no variables.
    pub fn as_scalar(&self) -> Option<GaussianRational> {
        if self.is_zero() {
            Some(GaussianRational::zero())
        } else if self.is_scalar() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check(&self, other: &DiffPoly) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &DiffPoly) -> Result<DiffPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &DiffPoly) -> Result<DiffPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &DiffPoly) -> Result<DiffPoly> {
        self.check(other)?;
        let mut out = DiffPoly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero(&self.ring);
        }
        DiffPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> DiffPoly {
        let mut out = DiffPoly::zero(&self.ring);
        for (k, c) in &self.terms {
            out.add_term(k.mul(m), c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> DiffPoly {
        let mut acc = DiffPoly::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn conj_coeffs(&self) -> DiffPoly {
        DiffPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.conj()))
                .collect(),
        }
    }

    /// Total x-derivative (Leibniz rule on jets; constant variables have D = 0).
    pub fn derivative(&self) -> DiffPoly {
        let mut out = DiffPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            for &(j, e) in m.factors() {
                if self.ring.var(j.var as usize).constant {
                    continue;
                }
                let nm = m.with(j, -1).with(j.derivative(), 1);
                out.add_term(nm, &(c * &GaussianRational::from_int(e as i64)));
            }
        }
        out
    }

    pub fn nth_derivative(&self, k: usize) -> DiffPoly {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative();
        }
        p
    }

    /// `⟨ψ, φ⟩ = ψ'φ + 2ψφ'`.
    pub fn bracket(&self, phi: &DiffPoly) -> DiffPoly {
        &(&self.derivative() * phi)
            + &(self * &phi.derivative()).scale(&GaussianRational::from_int(2))
    }

    /// Highest jet order present among non-constant variables.
    pub fn max_order(&self) -> Option<u16> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter())
            .filter(|(j, _)| !self.ring.var(j.var as usize).constant)
            .map(|(j, _)| j.order)
            .max()
    }

    /// Highest jet order of the named variable, if it occurs.
    pub fn max_order_of(&self, var: usize) -> Option<u16> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter())
            .filter(|(j, _)| j.var as usize == var)
            .map(|(j, _)| j.order)
            .max()
    }

    /// All jets occurring, sorted.
    pub fn jets(&self) -> Vec<JetVar> {
        let mut v: Vec<JetVar> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(j, _)| *j))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Coefficient of `j^e` viewed as a polynomial in the single jet `j`.
    pub fn coefficient_of(&self, j: JetVar, e: i32) -> DiffPoly {
        let mut out = DiffPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            if m.exponent(j) == e {
                out.add_term(m.with(j, -e), c);
            }
        }
        out
    }

    /// Splits into (terms free of non-constant jets, the rest).
    pub fn split_jet_free(&self) -> (DiffPoly, DiffPoly) {
        let mut free = DiffPoly::zero(&self.ring);
        let mut rest = DiffPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let jet_free = m
                .factors()
                .iter()
                .all(|(j, _)| self.ring.var(j.var as usize).constant);
            if jet_free {
                free.add_term(m.clone(), c);
            } else {
                rest.add_term(m.clone(), c);
            }
        }
        (free, rest)
    }

    /// Greatest common monomial divisor: per jet, the minimum exponent over all terms
    /// (absent counts as 0, so negative powers are collected too).
    pub fn monomial_content(&self) -> Monomial {
        if self.is_zero() {
            return Monomial::one();
        }
        Monomial::from_factors(self.jets().into_iter().map(|j| {
            let e = self.terms.keys().map(|m| m.exponent(j)).min().unwrap_or(0);
            (j, e)
        }))
    }

    pub(crate) fn with_ring(self, ring: &RingRef) -> DiffPoly {
        DiffPoly {
            ring: ring.clone(),
            terms: self.terms,
        }
    }

    /// Plain-text rendering (re-parseable).
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub(crate) fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for &(j, e) in m.factors() {
            let name = JetName(&self.ring, j).to_string();
            if e == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{e}"));
            }
        }
        parts.join(" ")
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let (neg, mag) = if c.is_real() && c.re < num_rational::BigRational::zero() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = self.fmt_monomial(m);
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag} {mono}")?;
            }
        }
        Ok(())
    }
}

macro_rules! ref_op {
    ($tr:ident $f:ident $checked:ident) => {
        impl<'a> $tr<&'a DiffPoly> for &'a DiffPoly {
            type Output = DiffPoly;
            /// Panics on ring mismatch; use the `checked_*` form to get an error.
            fn $f(self, o: &DiffPoly) -> DiffPoly {
                self.$checked(o).expect("ring mismatch")
            }
        }
        impl $tr for DiffPoly {
            type Output = DiffPoly;
            fn $f(self, o: DiffPoly) -> DiffPoly {
                (&self).$f(&o)
            }
        }
    };
}
ref_op!(Add add checked_add);
ref_op!(Sub sub checked_sub);
ref_op!(Mul mul checked_mul);

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        self.scale(&-GaussianRational::one())
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        -&self
    }
}
