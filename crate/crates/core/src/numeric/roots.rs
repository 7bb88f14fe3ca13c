use nalgebra::DMatrix;
use num_complex::Complex64;

use super::eval::horner;
use crate::error::{Error, Result};

/// Coefficients of `p(a + δ)` in δ, ascending.
pub fn taylor_shift(c: &[Complex64], a: Complex64) -> Vec<Complex64> {
    let mut out = c.to_vec();
    let n = out.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let hi = out[j + 1];
            out[j] += a * hi;
        }
    }
    out
}

pub fn derivative(c: &[Complex64]) -> Vec<Complex64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(k, &a)| a * k as f64)
        .collect()
}

/// Newton iteration from `z0` on the polynomial `c`.
pub fn newton(c: &[Complex64], z0: Complex64) -> Complex64 {
    let dc = derivative(c);
    let mut z = z0;
    for _ in 0..60 {
        let d = horner(&dc, z);
        if d == Complex64::new(0.0, 0.0) {
            break;
        }
        let step = horner(c, z) / d;
        z -= step;
        if !step.is_finite() {
            return z0;
        }
        if step.norm() <= 4.0 * f64::EPSILON * z.norm() || step.norm() == 0.0 {
            break;
        }
    }
    z
}

/// Roots of `Σ c_k λ^k` (ascending), ordered by (re, im).
pub fn polynomial_roots(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    if lead.norm() == 0.0 || !lead.is_finite() {
        return Err(Error::Numeric("degenerate leading coefficient".into()));
    }
    let mut roots = if n == 1 {
        vec![-c[0] / lead]
    } else {
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
        for i in 0..n {
            m[(i, n - 1)] = -c[i] / lead;
        }
        let ev = m
            .eigenvalues()
            .ok_or_else(|| Error::Numeric("companion eigenvalues did not converge".into()))?;
        ev.iter().map(|&z| newton(c, z)).collect()
    };
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn known_roots() {
        // (λ − 1)(λ + 2)(λ − i)
        let p = [c(0.0, 2.0), c(-2.0, -1.0), c(1.0, -1.0), c(1.0, 0.0)];
        let r = polynomial_roots(&p).unwrap();
        let want = [c(-2.0, 0.0), c(0.0, 1.0), c(1.0, 0.0)];
        for (a, b) in r.iter().zip(want) {
            assert!((a - b).norm() < 1e-13, "{a} vs {b}");
        }
        assert!(polynomial_roots(&[c(2.0, 0.0)]).unwrap().is_empty());
        assert!(polynomial_roots(&[c(1.0, 0.0), c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn shift_matches_evaluation() {
        let p = [c(1.0, 0.5), c(-2.0, 0.0), c(0.0, 3.0), c(0.25, 0.0)];
        let a = c(0.3, -0.7);
        let s = taylor_shift(&p, a);
        for d in [c(0.0, 0.0), c(0.1, 0.2), c(-1.0, 0.0)] {
            assert!((horner(&s, d) - horner(&p, a + d)).norm() < 1e-13);
        }
    }
}
