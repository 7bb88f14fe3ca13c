//! LaTeX in the usual notation: `q'`, `q'''`, `q^{(4)}`, `\bar{q}`, λ descending.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::diffring::{DiffPoly, JetVar, Monomial, Ring};
use crate::gaussian::GaussianRational;
use crate::spectral::LambdaPoly;

const GREEK: &[&str] = &[
    "alpha", "beta", "gamma", "delta", "epsilon", "kappa", "lambda", "mu", "nu", "omega", "Omega",
    "rho", "sigma", "tau", "theta", "xi", "Gamma", "Delta",
];

/// `omega2` → `\omega_2`, `qbar` → `\bar{q}`, `F` → `F`.
pub fn symbol(name: &str) -> String {
    if let Some(base) = name.strip_suffix("bar") {
        if !base.is_empty() {
            return format!("\\bar{{{}}}", symbol(base));
        }
    }
    let split = name.find(|c: char| c.is_ascii_digit() || c == '_');
    let (stem, sub) = match split {
        Some(i) => (&name[..i], name[i..].trim_start_matches('_')),
        None => (name, ""),
    };
    let stem = if GREEK.contains(&stem) {
        format!("\\{stem}")
    } else {
        stem.to_string()
    };
    if sub.is_empty() {
        stem
    } else {
        format!("{stem}_{{{sub}}}")
    }
}

fn jet(ring: &Ring, j: JetVar) -> String {
    let s = symbol(&ring.var(j.var as usize).name);
    match j.order {
        0 => s,
        k @ 1..=3 => format!("{s}{}", "'".repeat(k as usize)),
        k => format!("{s}^{{({k})}}"),
    }
}

fn exponent(e: i32) -> String {
    if (0..10).contains(&e) {
        format!("^{e}")
    } else {
        format!("^{{{e}}}")
    }
}

fn factor(ring: &Ring, j: JetVar, e: i32) -> String {
    let base = jet(ring, j);
    if e == 1 {
        return base;
    }
    if j.order > 0 {
        format!("({base}){}", exponent(e))
    } else {
        format!("{base}{}", exponent(e))
    }
}

fn monomial(ring: &Ring, m: &Monomial) -> String {
    let mut out = String::new();
    for &(j, e) in m.factors() {
        let f = factor(ring, j, e);
        // `\omega q` needs a separator, `q\bar{q}` does not
        if out.ends_with(|c: char| c.is_ascii_alphabetic())
            && out
                .rsplit('\\')
                .next()
                .is_some_and(|t| t.chars().all(|c| c.is_ascii_alphabetic()))
            && out.contains('\\')
            && f.starts_with(|c: char| c.is_ascii_alphabetic())
        {
            out.push(' ');
        }
        out.push_str(&f);
    }
    out
}

fn rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

/// Sign and magnitude text of a coefficient; `unit` is empty for ±1.
fn coefficient(c: &GaussianRational) -> (bool, String) {
    let fmt_mag = |r: &BigRational, imag: bool| -> String {
        let one = r.abs().is_one();
        match (one, imag) {
            (true, false) => String::new(),
            (true, true) => "i".into(),
            (false, false) => rational(&r.abs()),
            (false, true) => format!("{}i", rational(&r.abs())),
        }
    };
    if c.im.is_zero() {
        (c.re.is_negative(), fmt_mag(&c.re, false))
    } else if c.re.is_zero() {
        (c.im.is_negative(), fmt_mag(&c.im, true))
    } else {
        let sign = if c.im.is_negative() { "-" } else { "+" };
        let im = fmt_mag(&c.im, true);
        let im = if im.is_empty() { "i".into() } else { im };
        (false, format!("({} {sign} {im})", rational(&c.re)))
    }
}

/// Display order: highest jet order first, then larger exponents of the
/// highest jets first.
fn display_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    let key = |m: &Monomial| m.max_order().map(i32::from).unwrap_or(-1);
    key(b).cmp(&key(a)).then_with(|| {
        let ra = a.factors().iter().rev();
        let rb = b.factors().iter().rev();
        for (x, y) in ra.zip(rb) {
            let c = y.0.cmp(&x.0).then(y.1.cmp(&x.1));
            if c != Ordering::Equal {
                return c;
            }
        }
        b.factors().len().cmp(&a.factors().len())
    })
}

/// Terms in display order as (negative?, text) pairs.
fn terms(p: &DiffPoly, suffix: &str) -> Vec<(bool, String)> {
    let ring = p.ring();
    let mut ts: Vec<_> = p.terms().collect();
    ts.sort_by(|a, b| display_cmp(a.0, b.0));
    ts.into_iter()
        .map(|(m, c)| {
            let (neg, mag) = coefficient(c);
            let mono = format!("{}{suffix}", monomial(ring, m));
            let body = if mono.is_empty() {
                if mag.is_empty() {
                    "1".to_string()
                } else {
                    mag
                }
            } else {
                format!("{mag}{mono}")
            };
            (neg, body)
        })
        .collect()
}

fn join(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, body)) in parts.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

pub fn diffpoly(p: &DiffPoly) -> String {
    join(terms(p, ""))
}

fn lambda_power(k: usize) -> String {
    match k {
        0 => String::new(),
        1 => "\\lambda".into(),
        k => format!("\\lambda{}", exponent(k as i32)),
    }
}

pub fn lambda_poly(p: &LambdaPoly) -> String {
    let mut parts = Vec::new();
    for (k, c) in p.ascending().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let lam = lambda_power(k);
        if c.num_terms() == 1 || k == 0 {
            parts.extend(terms(c, &lam));
        } else {
            let inner = diffpoly(c);
            parts.push((false, format!("({inner}){lam}")));
        }
    }
    join(parts)
}

/// A scalar as LaTeX (`-\frac{1}{2}`, `8`, `i`).
pub fn scalar(c: &GaussianRational) -> String {
    let (neg, mag) = coefficient(c);
    let mag = if mag.is_empty() { "1".into() } else { mag };
    if neg {
        format!("-{mag}")
    } else {
        mag
    }
}
