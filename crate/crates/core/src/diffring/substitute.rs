use std::collections::{BTreeMap, HashMap};

use super::monomial::Monomial;
use super::poly::DiffPoly;
use super::ring::{JetVar, RingRef};
use crate::error::{Error, Result};

/// Images of variables under a substitution, keyed by variable name.
pub type SubstMap = BTreeMap<String, DiffPoly>;

/// Ring homomorphism commuting with D: the `k`-th jet of a mapped variable
/// goes to `D^k(image)`; unmapped variables are carried over by name into
/// `target`.
pub fn substitute(p: &DiffPoly, map: &SubstMap, target: &RingRef) -> Result<DiffPoly> {
    for img in map.values() {
        if !super::ring::same_ring(img.ring(), target) {
            return Err(Error::RingMismatch);
        }
    }
    let src = p.ring().clone();
    let mut cache: HashMap<JetVar, DiffPoly> = HashMap::new();
    let mut image_of = |j: JetVar| -> Result<DiffPoly> {
        if let Some(v) = cache.get(&j) {
            return Ok(v.clone());
        }
        let spec = src.var(j.var as usize);
        let img = match map.get(&spec.name) {
            Some(g) => g.nth_derivative(j.order as usize),
            None => {
                let idx = target
                    .index(&spec.name)
                    .ok_or_else(|| Error::UnknownVariable(spec.name.clone()))?;
                let tv = target.var(idx);
                if tv.constant != spec.constant {
                    return Err(Error::Substitution(format!(
                        "'{}' changes constancy between rings",
                        spec.name
                    )));
                }
                DiffPoly::jet(target, &spec.name, j.order as usize)?
            }
        };
        cache.insert(j, img.clone());
        Ok(img)
    };

    let mut out = DiffPoly::zero(target);
    for (m, c) in p.terms() {
        let mut acc = DiffPoly::constant(target, c.clone());
        for &(j, e) in m.factors() {
            let img = image_of(j)?;
            let f = if e >= 0 {
                img.pow(e as u32)
            } else {
                invert_monomial(&img)?.pow((-e) as u32)
            };
            acc = &acc * &f;
        }
        out = &out + &acc;
    }
    Ok(out)
}

/// Inverse of a single-term polynomial whose factors are all invertible.
pub fn invert_monomial(p: &DiffPoly) -> Result<DiffPoly> {
    let mut terms = p.terms();
    let (m, c) = match (terms.next(), terms.next()) {
        (Some(t), None) => t,
        _ => {
            return Err(Error::Substitution(format!(
                "cannot invert non-monomial image {p}"
            )))
        }
    };
    for &(j, _) in m.factors() {
        let v = p.ring().var(j.var as usize);
        if !(v.invertible && j.order == 0) {
            return Err(Error::Substitution(format!(
                "inversion of non-invertible '{}'",
                v.name
            )));
        }
    }
    let inv = c.inv().expect("nonzero coefficient");
    Ok(DiffPoly::term(p.ring(), m.pow(-1), inv))
}

/// Re-homes `p` into a ring containing every variable that occurs in it (by name).
pub fn embed(p: &DiffPoly, target: &RingRef) -> Result<DiffPoly> {
    if super::ring::same_ring(p.ring(), target) {
        return Ok(p.clone().with_ring(target));
    }
    let mut idx: Vec<Option<usize>> = vec![None; p.ring().vars().len()];
    for j in p.jets() {
        let name = &p.ring().var(j.var as usize).name;
        let i = target
            .index(name)
            .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
        idx[j.var as usize] = Some(i);
    }
    let terms = p.terms().map(|(m, c)| {
        let f = m.factors().iter().map(|&(j, e)| {
            let i = idx[j.var as usize].expect("occurring variable mapped");
            (JetVar::new(i, j.order as usize), e)
        });
        (Monomial::from_factors(f), c.clone())
    });
    DiffPoly::from_terms(target, terms)
}
