//! Canonical JSON: `{"terms":[{"coeff":{"re":"3/4","im":"0"},"factors":[{"var":"E","order":0,"exp":2}]}]}`.
//!
//! Terms follow the canonical monomial order; keys keep their insertion order.

use num_complex::Complex64;
use serde::Serializer;
use serde_json::{json, Map, Value};

use super::round_sig;
use crate::diffring::{DiffPoly, JetVar, Monomial, RingRef};
use crate::error::{Error, Result};
use crate::gaussian::{rational_from_str, rational_to_string, GaussianRational};
use crate::spectral::LambdaPoly;

pub fn gaussian(c: &GaussianRational) -> Value {
    json!({"re": rational_to_string(&c.re), "im": rational_to_string(&c.im)})
}

pub(crate) fn ser_gaussian<S: Serializer>(c: &GaussianRational, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&gaussian(c), s)
}

pub fn complex(z: Complex64) -> Value {
    json!({"re": round_sig(z.re), "im": round_sig(z.im)})
}

pub fn diffpoly(p: &DiffPoly) -> Value {
    let ring = p.ring();
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| {
            let factors: Vec<Value> = m
                .factors()
                .iter()
                .map(|(j, e)| {
                    json!({"var": ring.var(j.var as usize).name, "order": j.order, "exp": e})
                })
                .collect();
            json!({"coeff": gaussian(c), "factors": factors})
        })
        .collect();
    json!({ "terms": terms })
}

/// Coefficients listed from λ^degree down to λ^0.
pub fn lambda_poly(p: &LambdaPoly) -> Value {
    let coeffs: Vec<Value> = p.descending().iter().map(diffpoly).collect();
    json!({"degree": p.degree(), "coeffs": coeffs})
}

fn bad(msg: &str) -> Error {
    Error::Json(msg.to_string())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(&format!("missing '{key}'")))
}

pub fn gaussian_from(v: &Value) -> Result<GaussianRational> {
    let part = |k: &str| -> Result<_> {
        let s = get(v, k)?
            .as_str()
            .ok_or_else(|| bad("rational must be a string"))?;
        rational_from_str(s).map_err(|e| bad(&e.msg))
    };
    Ok(GaussianRational::new(part("re")?, part("im")?))
}

pub fn diffpoly_from(ring: &RingRef, v: &Value) -> Result<DiffPoly> {
    let terms = get(v, "terms")?
        .as_array()
        .ok_or_else(|| bad("'terms' must be an array"))?;
    let mut parsed = Vec::with_capacity(terms.len());
    for t in terms {
        let c = gaussian_from(get(t, "coeff")?)?;
        let mut factors = Vec::new();
        for f in get(t, "factors")?
            .as_array()
            .ok_or_else(|| bad("'factors' must be an array"))?
        {
            let name = get(f, "var")?
                .as_str()
                .ok_or_else(|| bad("'var' must be a string"))?;
            let idx = ring
                .index(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            let order = get(f, "order")?
                .as_u64()
                .ok_or_else(|| bad("bad 'order'"))?;
            let exp = get(f, "exp")?.as_i64().ok_or_else(|| bad("bad 'exp'"))?;
            let exp = i32::try_from(exp).map_err(|_| bad("exponent out of range"))?;
            if exp == 0 {
                return Err(bad("zero exponent"));
            }
            factors.push((JetVar::new(idx, order as usize), exp));
        }
        parsed.push((Monomial::from_factors(factors), c));
    }
    DiffPoly::from_terms(ring, parsed)
}

pub fn lambda_poly_from(ring: &RingRef, v: &Value) -> Result<LambdaPoly> {
    let coeffs = get(v, "coeffs")?
        .as_array()
        .ok_or_else(|| bad("'coeffs' must be an array"))?
        .iter()
        .map(|c| diffpoly_from(ring, c))
        .collect::<Result<Vec<_>>>()?;
    let p = LambdaPoly::from_descending(ring, coeffs)?;
    if let Some(d) = v.get("degree").and_then(Value::as_u64) {
        if d as usize != p.degree() {
            return Err(bad("'degree' disagrees with coefficients"));
        }
    }
    Ok(p)
}

/// Pretty JSON with a trailing newline.
pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn object(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}
