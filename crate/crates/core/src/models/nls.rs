use num_traits::Zero;

use crate::diffring::{
    integrate_exact, parse, reduce_modulo, substitute, DiffPoly, JetVar, RewriteRule, Ring,
    RingRef, SubstMap, VarSpec,
};
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::spectral::{
    conditions, derive_soliton, ConstantsPolicy, OperatorSpec, SolitonDerivation,
};

use super::ReducedCondition;

/// Names of the equation-of-motion constants carried through reductions.
const CONSTANTS: &[&str] = &["k", "omega", "omega2", "rho", "Omega", "Omega2"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reality {
    Real,
    Imaginary,
}

impl Reality {
    /// Reality of a named constant under the formal conjugation `q ↔ q̄`.
    pub fn of(name: &str) -> Option<Self> {
        match name {
            "k" | "omega" | "rho" | "Omega2" => Some(Self::Real),
            "omega2" | "Omega" => Some(Self::Imaginary),
            _ => None,
        }
    }
}

/// One of the `E_(n)` identities, both sides already in `q, q̄`.
#[derive(Clone, Debug)]
pub struct EIdentity {
    pub name: &'static str,
    pub lhs: DiffPoly,
    pub rhs: DiffPoly,
}

impl EIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `−λ² + Eλ + F` with the reduction `E = iq'/q`, `F = −¼E² − σqq̄ + (i/2)E'`.
#[derive(Clone, Debug)]
pub struct NlsModel {
    pub sigma: i8,
    pub ef_ring: RingRef,
    pub operator: OperatorSpec,
    /// `q, q̄` (invertible) plus the named constants.
    pub q_ring: RingRef,
    pub substitution: SubstMap,
}

/// Per-n naming of the two integrated conditions.
struct Case {
    a_name: &'static str,
    a_symbol: &'static str,
    /// Value of `A_(n+1)` in terms of the named constant.
    a_value: &'static str,
    a_anchor: &'static str,
    b_name: &'static str,
    b_symbol: &'static str,
    /// Multiplier of the B constant; `sigma_power` extra factors of σ.
    b_alpha: (i64, i64, i32),
    b_anchor: &'static str,
}

fn case(n: usize) -> Option<Case> {
    Some(match n {
        0 => Case {
            a_name: "zeroth-hierarchy",
            a_symbol: "k",
            a_value: "k",
            a_anchor: "q'",
            b_name: "first-density",
            b_symbol: "rho",
            b_alpha: (4, 0, 1),
            b_anchor: "q qbar",
        },
        1 => Case {
            a_name: "stationary-NLS",
            a_symbol: "omega",
            a_value: "-omega",
            a_anchor: "1/2 q''",
            b_name: "phase-flux",
            b_symbol: "Omega",
            b_alpha: (0, 1, 0),
            b_anchor: "qbar q'",
        },
        2 => Case {
            a_name: "mKdV",
            a_symbol: "omega2",
            a_value: "-1/4 i omega2",
            a_anchor: "q'''",
            b_name: "third-density",
            b_symbol: "Omega2",
            b_alpha: (1, 0, 0),
            b_anchor: "1/3 q' qbar'",
        },
        _ => return None,
    })
}

impl NlsModel {
    pub fn new(sigma: i8) -> Result<Self> {
        if sigma != 1 && sigma != -1 {
            return Err(Error::Precondition(format!(
                "sigma must be ±1, got {sigma}"
            )));
        }
        let ef_ring = Ring::jets(&["E", "F"]);
        let operator = OperatorSpec::parse(&ef_ring, "-lambda^2 + E lambda + F")?;
        let mut vars = vec![VarSpec::invertible("q"), VarSpec::invertible("qbar")];
        vars.extend(CONSTANTS.iter().map(|c| VarSpec::constant(c)));
        let q_ring = Ring::new(vars)?;
        let e = parse(&q_ring, "i q' q^-1")?;
        let s = GaussianRational::from_int(sigma as i64);
        let f = &(&(&e * &e).scale(&GaussianRational::from_frac(-1, 4))
            - &parse(&q_ring, "q qbar")?.scale(&s))
            + &e.derivative()
                .scale(&(GaussianRational::i() * GaussianRational::from_frac(1, 2)));
        let substitution = [("E".to_string(), e), ("F".to_string(), f)]
            .into_iter()
            .collect();
        Ok(Self {
            sigma,
            ef_ring,
            operator,
            q_ring,
            substitution,
        })
    }

    fn sigma_gr(&self) -> GaussianRational {
        GaussianRational::from_int(self.sigma as i64)
    }

    /// Normalized `φ_n` over `E, F` with `A_0 = 2`.
    pub fn soliton_table(&self, n: usize) -> Result<SolitonDerivation> {
        derive_soliton(
            &self.operator,
            n,
            GaussianRational::from_int(2),
            &ConstantsPolicy::Zero,
        )
    }

    /// Rewrites an `E, F` expression (constants allowed) in `q, q̄`.
    pub fn to_q(&self, p: &DiffPoly) -> Result<DiffPoly> {
        substitute(p, &self.substitution, &self.q_ring)
    }

    pub fn q_parse(&self, s: &str) -> Result<DiffPoly> {
        parse(&self.q_ring, s)
    }

    /// `E_(n) = i q^(n) q^(−1)`.
    pub fn e_n(&self, n: usize) -> DiffPoly {
        let i = GaussianRational::i();
        let q = DiffPoly::jet(&self.q_ring, "q", n).expect("q in ring");
        let inv = self.q_parse("q^-1").expect("q invertible");
        (&q * &inv).scale(&i)
    }

    pub fn e_calculus_check(&self) -> Result<Vec<EIdentity>> {
        let e_ef = DiffPoly::var(&self.ef_ring, "E")?;
        let lhs = |k: usize| self.to_q(&e_ef.nth_derivative(k));
        let e = self.e_n(1);
        let (e2, e3, e4) = (self.e_n(2), self.e_n(3), self.e_n(4));
        let c = |re: i64, im: i64| {
            GaussianRational::from_int(re) + GaussianRational::i() * GaussianRational::from_int(im)
        };
        let i = c(0, 1);
        let ee = &e * &e;
        let rhs1 = &e2 + &ee.scale(&i);
        let rhs2 = &(&e3 + &(&e2 * &e).scale(&c(0, 3))) + &(&ee * &e).scale(&c(-2, 0));
        let rhs3 = &(&(&(&e4 + &(&e3 * &e).scale(&c(0, 4))) + &(&ee * &e2).scale(&c(-12, 0)))
            + &(&ee * &ee).scale(&c(0, -6)))
            + &(&e2 * &e2).scale(&c(0, 3));
        Ok(vec![
            EIdentity {
                name: "E'",
                lhs: lhs(1)?,
                rhs: rhs1,
            },
            EIdentity {
                name: "E''",
                lhs: lhs(2)?,
                rhs: rhs2,
            },
            EIdentity {
                name: "E'''",
                lhs: lhs(3)?,
                rhs: rhs3,
            },
        ])
    }

    /// The constant `c` with `A_3 = c·(q'''/q + 6σqq̄q'/q)` after substitution,
    /// or `None` if the two are not proportional.
    pub fn a3_prefactor(&self) -> Result<Option<GaussianRational>> {
        let a3 = self.to_q(&self.soliton_table(3)?.a[3])?;
        let base = &self.q_parse("q''' q^-1")?
            + &self.q_parse("6 q qbar q' q^-1")?.scale(&self.sigma_gr());
        Ok(proportionality(&a3, &base))
    }

    /// Formal conjugation: `q ↔ q̄`, conjugated coefficients, imaginary
    /// constants negated.
    pub fn conjugate(&self, p: &DiffPoly) -> Result<DiffPoly> {
        let mut map = SubstMap::new();
        map.insert("q".into(), DiffPoly::var(&self.q_ring, "qbar")?);
        map.insert("qbar".into(), DiffPoly::var(&self.q_ring, "q")?);
        for c in CONSTANTS {
            if Reality::of(c) == Some(Reality::Imaginary) {
                map.insert((*c).into(), -DiffPoly::var(&self.q_ring, c)?);
            }
        }
        Ok(substitute(p, &map, &self.q_ring)?.conj_coeffs())
    }

    /// Conditions A and B of the `n`-soliton (`n ≤ 2`), each integrated once
    /// and reduced to the named equation.
    pub fn reduce_conditions(&self, n: usize) -> Result<Vec<ReducedCondition>> {
        let cfg = case(n).ok_or_else(|| {
            Error::Precondition(format!("reductions are defined for n in 0..=2, got {n}"))
        })?;
        let der = self.soliton_table(n)?;
        let cs = conditions(&der, &self.operator)?;
        let ext = self.ef_ring.extended(
            &CONSTANTS
                .iter()
                .map(|c| VarSpec::constant(c))
                .collect::<Vec<_>>(),
        )?;
        let up = |p: &DiffPoly| crate::diffring::embed(p, &ext);

        // A: −4A_(n+1) = −4c
        let i_a = integrate_exact(cs.s(1))?;
        let c_val = parse(&ext, cfg.a_value)?;
        let a_eq = &up(&i_a)? + &c_val.scale(&GaussianRational::from_int(4));
        let a_expr = anchor(
            &strip_content(&self.to_q(&a_eq)?),
            &self.q_parse(cfg.a_anchor)?,
        )?;

        let top = JetVar::new(self.q_ring.index("q").expect("q"), n + 1);
        let lead = a_expr
            .coefficient_of(top, 1)
            .as_scalar()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| {
                Error::Structural("condition A is not solvable for its top jet".into())
            })?;
        let top_poly = DiffPoly::jet(&self.q_ring, "q", n + 1)?;
        let repl = (&a_expr - &top_poly.scale(&lead)).scale(&-lead.inv().expect("nonzero"));
        let conj_top = JetVar::new(self.q_ring.index("qbar").expect("qbar"), n + 1);
        let rules = vec![
            RewriteRule::new(top, repl.clone())?,
            RewriteRule::new(conj_top, self.conjugate(&repl)?)?,
        ];

        // B: residual with A_(n+1) frozen to c, integrated once
        let e = DiffPoly::var(&ext, "E")?;
        let a_next = up(&der.coeff(n as i64 + 1))?;
        let frozen = &up(cs.s(0))?
            - &e.bracket(&(&a_next - &c_val))
                .scale(&GaussianRational::from_int(2));
        let i_b = integrate_exact(&frozen)?;
        let p = reduce_modulo(&self.to_q(&i_b)?, &rules)?;
        let (re, im, sp) = cfg.b_alpha;
        let alpha = (GaussianRational::from_int(re)
            + GaussianRational::i() * GaussianRational::from_int(im))
            * self.sigma_gr().pow(sp);
        let b_raw = &p - &DiffPoly::var(&self.q_ring, cfg.b_symbol)?.scale(&alpha);
        let b_expr = anchor(&strip_content(&b_raw), &self.q_parse(cfg.b_anchor)?)?;

        Ok(vec![
            ReducedCondition {
                name: cfg.a_name.into(),
                expression: a_expr,
                constant_symbol: cfg.a_symbol.into(),
                rules: rules.clone(),
            },
            ReducedCondition {
                name: cfg.b_name.into(),
                expression: b_expr,
                constant_symbol: cfg.b_symbol.into(),
                rules,
            },
        ])
    }
}

/// Divides out the common monomial factor (clears `q^(−1)` denominators).
fn strip_content(p: &DiffPoly) -> DiffPoly {
    let c = p.monomial_content();
    if c.is_one() {
        p.clone()
    } else {
        p.mul_monomial(&c.pow(-1))
    }
}

/// Scales `p` so that the monomial of the single-term `anchor` carries the
/// anchor's coefficient.
fn anchor(p: &DiffPoly, anchor: &DiffPoly) -> Result<DiffPoly> {
    let (m, want) = anchor
        .terms()
        .next()
        .ok_or_else(|| Error::Structural("empty anchor".into()))?;
    let have = p.coeff(m);
    if have.is_zero() {
        return Err(Error::Structural(format!("anchor term absent from {p}")));
    }
    Ok(p.scale(&(want.clone() / have)))
}

/// `c` with `p = c·base`, if any.
pub(crate) fn proportionality(p: &DiffPoly, base: &DiffPoly) -> Option<GaussianRational> {
    let (m, b) = base.terms().next()?;
    let c = p.coeff(m) / b.clone();
    (base.scale(&c) == *p).then_some(c)
}
