//! Random differential polynomials and operators shared by the property and
//! acceptance targets.
#![allow(dead_code)]

use proptest::prelude::*;
use soliton_core::diffring::{DiffPoly, RingRef};
use soliton_core::gaussian::GaussianRational;
use soliton_core::spectral::{LambdaPoly, OperatorSpec};

/// `(coefficient, [(var, order, exponent)])`.
pub type TermSpec = (i64, Vec<(usize, usize, u32)>);

pub fn build(ring: &RingRef, terms: &[TermSpec]) -> DiffPoly {
    let mut acc = DiffPoly::zero(ring);
    for (c, factors) in terms {
        let mut t = DiffPoly::int(ring, *c);
        for &(v, k, e) in factors {
            let name = ring.var(v).name.clone();
            t = &t * &DiffPoly::jet(ring, &name, k).unwrap().pow(e);
        }
        acc = &acc + &t;
    }
    acc
}

fn factor(
    nvars: usize,
    max_order: usize,
    max_exp: u32,
) -> impl Strategy<Value = (usize, usize, u32)> {
    (0..nvars, 0..=max_order, 1..=max_exp)
}

/// Terms over the first `nvars` ring variables; `min_factors = 1` keeps the
/// constant term zero.
pub fn terms(
    nvars: usize,
    max_order: usize,
    max_terms: usize,
    min_factors: usize,
) -> impl Strategy<Value = Vec<TermSpec>> {
    let coeff = prop_oneof![-3i64..=-1, 1i64..=3];
    let t = (
        coeff,
        prop::collection::vec(factor(nvars, max_order, 2), min_factors..=2),
    );
    prop::collection::vec(t, 0..=max_terms)
}

/// `L_0` and the specs of `L_1..L_d`.
#[derive(Clone, Debug)]
pub struct OpSpec {
    pub l0: i64,
    pub rest: Vec<Vec<TermSpec>>,
}

impl OpSpec {
    pub fn d(&self) -> usize {
        self.rest.len()
    }

    pub fn build(&self, ring: &RingRef) -> OperatorSpec {
        let mut coeffs = vec![DiffPoly::int(ring, self.l0)];
        coeffs.extend(self.rest.iter().map(|t| build(ring, t)));
        OperatorSpec::new(LambdaPoly::from_descending(ring, coeffs).unwrap()).unwrap()
    }
}

/// Operators of degree `d` in `d_range` whose lower coefficients are small
/// zero-constant polynomials in two variables of order ≤ 1.
pub fn operator(d_range: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = OpSpec> {
    let l0 = prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2)];
    (l0, d_range).prop_flat_map(|(l0, d)| {
        prop::collection::vec(terms(2, 1, 2, 1), d).prop_map(move |rest| OpSpec { l0, rest })
    })
}

pub fn scalar() -> impl Strategy<Value = GaussianRational> {
    (-4i64..=4, 1i64..=3, -2i64..=2).prop_map(|(n, d, im)| {
        GaussianRational::from_frac(n, d) + GaussianRational::i() * GaussianRational::from_int(im)
    })
}

pub fn nonzero_scalar() -> impl Strategy<Value = GaussianRational> {
    scalar().prop_filter("nonzero", |c| !num_traits::Zero::is_zero(c))
}
