use super::poly::DiffPoly;
use super::ring::JetVar;
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;

fn not_exact(rem: DiffPoly) -> Error {
    Error::NotExact {
        remainder: Box::new(rem),
    }
}

/// Top jets of `p`: the highest order among non-constant variables and the
/// variables attaining it.
fn top_jets(p: &DiffPoly) -> Option<(u16, Vec<u16>)> {
    let k = p.max_order()?;
    let mut vars: Vec<u16> = p
        .jets()
        .into_iter()
        .filter(|j| j.order == k && !p.ring().var(j.var as usize).constant)
        .map(|j| j.var)
        .collect();
    vars.dedup();
    Some((k, vars))
}

/// `∫ a d(u)`, treating `a` as a polynomial in the jet `u`.
fn integrate_in(a: &DiffPoly, u: JetVar) -> Option<DiffPoly> {
    let mut out = DiffPoly::zero(a.ring());
    for (m, c) in a.terms() {
        let e = m.exponent(u);
        if e == -1 {
            return None;
        }
        let k = GaussianRational::from_int(e as i64 + 1);
        out.add_term(m.with(u, 1), &(c / &k));
    }
    Some(out)
}

/// Exact antiderivative with zero constant term.
///
/// Integrates by parts on the highest jet: an exact derivative is linear in
/// its top jet `u_K`, with a coefficient free of order `≥ K` jets, and that
/// coefficient is `∂P/∂u_{K-1}` of the primitive `P`. Each step removes one
/// base from the top order; if that measure fails to drop the input is not
/// a derivative. Fails with the unreduced remainder as certificate.
pub fn integrate_exact(p: &DiffPoly) -> Result<DiffPoly> {
    let mut rem = p.clone();
    let mut result = DiffPoly::zero(p.ring());
    let mut last: Option<(u16, usize)> = None;
    loop {
        if rem.is_zero() {
            return Ok(result);
        }
        let Some((k, vars)) = top_jets(&rem) else {
            return Err(not_exact(rem));
        };
        if k == 0 {
            return Err(not_exact(rem));
        }
        let measure = (k, vars.len());
        if let Some(prev) = last {
            if measure >= prev {
                return Err(not_exact(rem));
            }
        }
        last = Some(measure);

        let top = JetVar {
            var: *vars.last().unwrap(),
            order: k,
        };
        // coefficient of the top jet; reject higher powers
        let mut a = DiffPoly::zero(p.ring());
        let mut nonlinear = false;
        for (m, c) in rem.terms() {
            match m.exponent(top) {
                0 => {}
                1 => a.add_term(m.with(top, -1), c),
                _ => nonlinear = true,
            }
        }
        if nonlinear || a.max_order().is_some_and(|o| o >= k) {
            return Err(not_exact(rem));
        }
        let below = JetVar {
            var: top.var,
            order: k - 1,
        };
        let Some(p1) = integrate_in(&a, below) else {
            return Err(not_exact(rem));
        };
        rem = &rem - &p1.derivative();
        result = &result + &p1;
    }
}
