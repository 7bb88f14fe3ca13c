use std::collections::HashMap;

use super::poly::DiffPoly;
use super::ring::{same_ring, JetName, JetVar};
use crate::error::{Error, Result};

/// Replaces every jet `target^(m)`, `m ≥ order`, by `D^(m-order)(replacement)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RewriteRule {
    pub target: JetVar,
    pub replacement: DiffPoly,
}

impl RewriteRule {
    pub fn new(target: JetVar, replacement: DiffPoly) -> Result<Self> {
        let ring = replacement.ring();
        if target.var as usize >= ring.vars().len() {
            return Err(Error::InvalidRule("target outside the ring".into()));
        }
        if ring.var(target.var as usize).constant {
            return Err(Error::InvalidRule("target is a constant".into()));
        }
        if replacement
            .max_order_of(target.var as usize)
            .is_some_and(|o| o >= target.order)
        {
            return Err(Error::InvalidRule(format!(
                "replacement for {} contains it or a higher jet",
                JetName(ring, target)
            )));
        }
        Ok(Self {
            target,
            replacement,
        })
    }
}

const MAX_PASSES: usize = 64;

/// Rewrites to a fixpoint under the derivative closure of `rules`.
pub fn reduce_modulo(p: &DiffPoly, rules: &[RewriteRule]) -> Result<DiffPoly> {
    for r in rules {
        if !same_ring(r.replacement.ring(), p.ring()) {
            return Err(Error::RingMismatch);
        }
    }
    let mut images: HashMap<JetVar, DiffPoly> = HashMap::new();
    let mut image = |j: JetVar| -> Option<DiffPoly> {
        let rule = rules
            .iter()
            .find(|r| r.target.var == j.var && j.order >= r.target.order)?;
        if let Some(v) = images.get(&j) {
            return Some(v.clone());
        }
        let img = rule
            .replacement
            .nth_derivative((j.order - rule.target.order) as usize);
        images.insert(j, img.clone());
        Some(img)
    };

    let mut cur = p.clone();
    for _ in 0..MAX_PASSES {
        let mut changed = false;
        let mut next = DiffPoly::zero(p.ring());
        for (m, c) in cur.terms() {
            let hits: Vec<(JetVar, i32, DiffPoly)> = m
                .factors()
                .iter()
                .filter_map(|&(j, e)| image(j).map(|img| (j, e, img)))
                .collect();
            if hits.is_empty() {
                next.add_term(m.clone(), c);
                continue;
            }
            changed = true;
            let mut rest = m.clone();
            for (j, e, _) in &hits {
                rest.bump(*j, -e);
            }
            let mut acc = DiffPoly::term(p.ring(), rest, c.clone());
            for (_, e, img) in &hits {
                // targets have order >= 1 or are non-invertible, so e > 0
                acc = &acc * &img.pow(*e as u32);
            }
            next = &next + &acc;
        }
        cur = next;
        if !changed {
            return Ok(cur);
        }
    }
    Err(Error::ReductionDiverged {
        passes: MAX_PASSES,
        partial: Box::new(cur),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffring::{parse, Ring, VarSpec};

    #[test]
    fn stationary_nls_rule() {
        let r = Ring::new(vec![
            VarSpec::jet("q"),
            VarSpec::jet("qbar"),
            VarSpec::constant("omega"),
        ])
        .unwrap();
        let q = r.index("q").unwrap();
        let rule = RewriteRule::new(
            JetVar::new(q, 2),
            parse(&r, "2 omega q - 2 qbar q^2").unwrap(),
        )
        .unwrap();
        let p = parse(&r, "1/2 q'' + qbar q^2 - omega q").unwrap();
        assert!(reduce_modulo(&p, std::slice::from_ref(&rule))
            .unwrap()
            .is_zero());
        let p = parse(&r, "q[4]").unwrap();
        let got = reduce_modulo(&p, &[rule]).unwrap();
        assert!(got.max_order_of(q).unwrap() <= 1);
    }

    #[test]
    fn empty_rules() {
        let r = Ring::jets(&["q"]);
        let p = parse(&r, "q''' + q q'").unwrap();
        assert_eq!(reduce_modulo(&p, &[]).unwrap(), p);
    }

    #[test]
    fn bad_rules() {
        let r = Ring::jets(&["u", "v"]);
        let u = r.index("u").unwrap();
        let v = r.index("v").unwrap();
        assert!(RewriteRule::new(JetVar::new(u, 1), parse(&r, "u'' + v").unwrap()).is_err());
        // u' -> v', v' -> u' ping-pong forever
        let rules = [
            RewriteRule::new(JetVar::new(u, 1), parse(&r, "v'").unwrap()).unwrap(),
            RewriteRule::new(JetVar::new(v, 1), parse(&r, "u'").unwrap()).unwrap(),
        ];
        assert!(matches!(
            reduce_modulo(&parse(&r, "u'").unwrap(), &rules),
            Err(Error::ReductionDiverged { .. })
        ));
    }
}
