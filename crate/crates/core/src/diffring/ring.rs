use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A base symbol of the ring.
///
/// `invertible` variables may carry negative exponents at order 0.
/// `constant` variables have zero derivative (named constants such as ω).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarSpec {
    pub name: String,
    #[serde(default)]
    pub invertible: bool,
    #[serde(default)]
    pub constant: bool,
}

impl VarSpec {
    pub fn jet(name: &str) -> Self {
        Self {
            name: name.to_string(),
            invertible: false,
            constant: false,
        }
    }

    pub fn invertible(name: &str) -> Self {
        Self {
            invertible: true,
            ..Self::jet(name)
        }
    }

    pub fn constant(name: &str) -> Self {
        Self {
            constant: true,
            ..Self::jet(name)
        }
    }
}

/// The variable universe of a differential polynomial ring.
///
/// Variables are stored sorted by name, so variable indices follow the
/// canonical name order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<VarSpec>,
}

pub type RingRef = Arc<Ring>;

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "i"
        && s != "lambda"
}

impl Ring {
    pub fn new(mut vars: Vec<VarSpec>) -> Result<RingRef> {
        vars.sort_by(|a, b| a.name.cmp(&b.name));
        for w in vars.windows(2) {
            if w[0].name == w[1].name {
                return Err(Error::InvalidRing(format!(
                    "duplicate variable '{}'",
                    w[0].name
                )));
            }
        }
        for v in &vars {
            if !valid_ident(&v.name) {
                return Err(Error::InvalidRing(format!(
                    "bad variable name '{}'",
                    v.name
                )));
            }
            if v.invertible && v.constant {
                return Err(Error::InvalidRing(format!(
                    "'{}' cannot be both invertible and constant",
                    v.name
                )));
            }
        }
        if vars.len() > u16::MAX as usize {
            return Err(Error::InvalidRing("too many variables".into()));
        }
        Ok(Arc::new(Ring { vars }))
    }

    /// Ring of plain jet variables.
    pub fn jets(names: &[&str]) -> RingRef {
        Self::new(names.iter().map(|n| VarSpec::jet(n)).collect()).expect("valid names")
    }

    pub fn vars(&self) -> &[VarSpec] {
        &self.vars
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.vars
            .binary_search_by(|v| v.name.as_str().cmp(name))
            .ok()
    }

    pub fn var(&self, idx: usize) -> &VarSpec {
        &self.vars[idx]
    }

    pub fn has_invertible(&self) -> bool {
        self.vars.iter().any(|v| v.invertible)
    }

    /// A ring with the extra variables added (existing names must agree).
    pub fn extended(&self, extra: &[VarSpec]) -> Result<RingRef> {
        let mut vars = self.vars.clone();
        for e in extra {
            match self.index(&e.name) {
                Some(i) if &self.vars[i] == e => {}
                Some(_) => {
                    return Err(Error::InvalidRing(format!(
                        "conflicting declaration of '{}'",
                        e.name
                    )))
                }
                None => vars.push(e.clone()),
            }
        }
        Ring::new(vars)
    }
}

pub(crate) fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// The `order`-th x-derivative of variable `var` (an index into the ring).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetVar {
    pub var: u16,
    pub order: u16,
}

impl JetVar {
    pub fn new(var: usize, order: usize) -> Self {
        Self {
            var: var as u16,
            order: order as u16,
        }
    }

    pub fn derivative(self) -> Self {
        Self {
            var: self.var,
            order: self.order + 1,
        }
    }
}

/// Plain-text jet name: primes up to three, then `name[k]`.
pub(crate) struct JetName<'a>(pub &'a Ring, pub JetVar);

impl fmt::Display for JetName<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = &self.0.var(self.1.var as usize).name;
        match self.1.order {
            k @ 0..=3 => write!(f, "{}{}", name, "'".repeat(k as usize)),
            k => write!(f, "{name}[{k}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_unique() {
        let r = Ring::jets(&["q", "E", "F"]);
        let names: Vec<_> = r.vars().iter().map(|v| v.name.as_str()).collect();
        assert_eq!(names, ["E", "F", "q"]);
        assert_eq!(r.index("F"), Some(1));
        assert!(Ring::new(vec![VarSpec::jet("q"), VarSpec::jet("q")]).is_err());
        assert!(Ring::new(vec![VarSpec::jet("i")]).is_err());
    }

    #[test]
    fn extension() {
        let r = Ring::jets(&["q"]);
        let r2 = r.extended(&[VarSpec::constant("omega")]).unwrap();
        assert_eq!(r2.vars().len(), 2);
        assert!(r.extended(&[VarSpec::invertible("q")]).is_err());
    }
}
