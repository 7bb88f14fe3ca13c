use smallvec::SmallVec;

use super::ring::JetVar;

/// A product of jet powers, sorted by `JetVar` with no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[(JetVar, i32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Self(SmallVec::new())
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (JetVar, i32)>) -> Self {
        let mut m = Self::one();
        for (j, e) in factors {
            m.bump(j, e);
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(JetVar, i32)] {
        &self.0
    }

    pub fn exponent(&self, j: JetVar) -> i32 {
        match self.0.binary_search_by(|(k, _)| k.cmp(&j)) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    /// Adds `delta` to the exponent of `j`, dropping it if it becomes zero.
    pub fn bump(&mut self, j: JetVar, delta: i32) {
        if delta == 0 {
            return;
        }
        match self.0.binary_search_by(|(k, _)| k.cmp(&j)) {
            Ok(i) => {
                self.0[i].1 += delta;
                if self.0[i].1 == 0 {
                    self.0.remove(i);
                }
            }
            Err(i) => self.0.insert(i, (j, delta)),
        }
    }

    pub fn with(&self, j: JetVar, delta: i32) -> Self {
        let mut m = self.clone();
        m.bump(j, delta);
        m
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(ja, ea)), Some(&&(jb, eb))) => {
                    if ja < jb {
                        out.push((ja, ea));
                        a.next();
                    } else if jb < ja {
                        out.push((jb, eb));
                        b.next();
                    } else {
                        if ea + eb != 0 {
                            out.push((ja, ea + eb));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some(&&f), None) => {
                    out.push(f);
                    a.next();
                }
                (None, Some(&&f)) => {
                    out.push(f);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial(out)
    }

    pub fn pow(&self, e: i32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(j, k)| (j, k * e)).collect())
    }

    /// Highest derivative order appearing, if any factor is present.
    pub fn max_order(&self) -> Option<u16> {
        self.0.iter().map(|(j, _)| j.order).max()
    }

    /// Total degree (sum of exponents).
    pub fn degree(&self) -> i32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&(_, e)| e < 0)
    }
}
