use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Jets `0..=max_order` of each base variable, keyed by name.
pub type JetMap = BTreeMap<String, Vec<Complex64>>;

/// A concrete function family with analytic jets.
pub trait JetProvider: Send + Sync {
    fn name(&self) -> &str;
    fn params(&self) -> BTreeMap<String, f64>;
    fn max_order(&self) -> usize;
    fn base_jets(&self, x: f64) -> JetMap;
    /// Values for constant ring variables such as `kappa`.
    fn constants(&self) -> BTreeMap<String, Complex64> {
        BTreeMap::new()
    }
    /// `(conjugate, source)`: the first variable is fed the conjugated jets
    /// of the second.
    fn conjugate_pairs(&self) -> Vec<(String, String)> {
        Vec::new()
    }
}

/// Everything needed to evaluate an expression at one point.
#[derive(Clone, Debug, Default)]
pub struct Env {
    pub jets: JetMap,
    pub constants: BTreeMap<String, Complex64>,
}

impl Env {
    pub fn at(p: &dyn JetProvider, x: f64) -> Self {
        let mut jets = p.base_jets(x);
        for (conj, src) in p.conjugate_pairs() {
            let v: Vec<_> = jets[&src].iter().map(|z| z.conj()).collect();
            jets.insert(conj, v);
        }
        Self {
            jets,
            constants: p.constants(),
        }
    }
}

const DEFAULT_ORDER: usize = 12;

/// `amp · sech(rate·x)^power` with jets from the polynomial recurrence in
/// `s = sech`, `t = tanh`: `s' = −rate·s·t`, `t' = rate·s²`.
#[derive(Clone, Debug)]
struct SechPower {
    rate: f64,
    amp: f64,
    // polys[n] holds q^(n)/amp as {(i, j): c} for c·rate^n·s^i·t^j
    polys: Vec<BTreeMap<(u32, u32), f64>>,
}

impl SechPower {
    fn new(amp: f64, rate: f64, power: u32, max_order: usize) -> Self {
        let mut polys = vec![BTreeMap::from([((power, 0), 1.0)])];
        for _ in 0..max_order {
            let mut next = BTreeMap::new();
            for (&(i, j), &c) in polys.last().expect("nonempty") {
                if i > 0 {
                    *next.entry((i, j + 1)).or_insert(0.0) -= c * i as f64;
                }
                if j > 0 {
                    *next.entry((i + 2, j - 1)).or_insert(0.0) += c * j as f64;
                }
            }
            next.retain(|_, c| *c != 0.0);
            polys.push(next);
        }
        Self { rate, amp, polys }
    }

    fn jets(&self, x: f64) -> Vec<Complex64> {
        let y = self.rate * x;
        // sech via exp(-|y|) keeps relative precision in the tails
        let e = (-2.0 * y.abs()).exp();
        let s = 2.0 * (-y.abs()).exp() / (1.0 + e);
        let t = y.tanh();
        self.polys
            .iter()
            .enumerate()
            .map(|(n, p)| {
                let v: f64 = p
                    .iter()
                    .map(|(&(i, j), &c)| c * s.powi(i as i32) * t.powi(j as i32))
                    .sum();
                Complex64::new(self.amp * self.rate.powi(n as i32) * v, 0.0)
            })
            .collect()
    }
}

/// `q = 2κ² sech²(κx)` over the ring `{kappa, q}`.
#[derive(Clone, Debug)]
pub struct KdvSoliton {
    pub kappa: f64,
    sech: SechPower,
}

impl KdvSoliton {
    pub fn new(kappa: f64) -> Result<Self> {
        if !(kappa > 0.0 && kappa.is_finite()) {
            return Err(Error::Precondition(format!(
                "kappa must be positive, got {kappa}"
            )));
        }
        Ok(Self {
            kappa,
            sech: SechPower::new(2.0 * kappa * kappa, kappa, 2, DEFAULT_ORDER),
        })
    }
}

impl JetProvider for KdvSoliton {
    fn name(&self) -> &str {
        "kdv_soliton"
    }
    fn params(&self) -> BTreeMap<String, f64> {
        BTreeMap::from([("kappa".into(), self.kappa)])
    }
    fn max_order(&self) -> usize {
        DEFAULT_ORDER
    }
    fn base_jets(&self, x: f64) -> JetMap {
        BTreeMap::from([("q".into(), self.sech.jets(x))])
    }
    fn constants(&self) -> BTreeMap<String, Complex64> {
        BTreeMap::from([("kappa".into(), Complex64::new(self.kappa, 0.0))])
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NlsSolution {
    /// `q = C e^(−ikx)`.
    PlaneWave { c: f64, k: f64 },
    /// `q = a sech(ax)`, `a = √(2ω)`; focusing only.
    Bright { omega: f64 },
}

#[derive(Clone, Debug)]
pub struct NlsProvider {
    pub solution: NlsSolution,
    pub sigma: i8,
    sech: Option<SechPower>,
}

impl NlsProvider {
    pub fn new(solution: NlsSolution, sigma: i8) -> Result<Self> {
        if sigma != 1 && sigma != -1 {
            return Err(Error::Precondition(format!(
                "sigma must be ±1, got {sigma}"
            )));
        }
        let sech = match solution {
            NlsSolution::PlaneWave { c, k } => {
                if !(c.is_finite() && k.is_finite()) || c == 0.0 {
                    return Err(Error::Precondition(
                        "plane wave needs finite C ≠ 0 and k".into(),
                    ));
                }
                None
            }
            NlsSolution::Bright { omega } => {
                if sigma != 1 {
                    return Err(Error::Precondition(
                        "bright soliton requires sigma = +1".into(),
                    ));
                }
                if !(omega > 0.0 && omega.is_finite()) {
                    return Err(Error::Precondition(format!(
                        "omega must be positive, got {omega}"
                    )));
                }
                let a = (2.0 * omega).sqrt();
                Some(SechPower::new(a, a, 1, DEFAULT_ORDER))
            }
        };
        Ok(Self {
            solution,
            sigma,
            sech,
        })
    }
}

impl JetProvider for NlsProvider {
    fn name(&self) -> &str {
        match self.solution {
            NlsSolution::PlaneWave { .. } => "plane_wave",
            NlsSolution::Bright { .. } => "bright",
        }
    }
    fn params(&self) -> BTreeMap<String, f64> {
        let mut m = BTreeMap::from([("sigma".to_string(), self.sigma as f64)]);
        match self.solution {
            NlsSolution::PlaneWave { c, k } => {
                m.insert("C".into(), c);
                m.insert("k".into(), k);
            }
            NlsSolution::Bright { omega } => {
                m.insert("omega".into(), omega);
            }
        }
        m
    }
    fn max_order(&self) -> usize {
        DEFAULT_ORDER
    }
    fn base_jets(&self, x: f64) -> JetMap {
        let q = match (self.solution, &self.sech) {
            (NlsSolution::PlaneWave { c, k }, _) => {
                let base = Complex64::new(0.0, -k * x).exp() * c;
                let mut out = Vec::with_capacity(DEFAULT_ORDER + 1);
                let mut v = base;
                for _ in 0..=DEFAULT_ORDER {
                    out.push(v);
                    v *= Complex64::new(0.0, -k);
                }
                out
            }
            (NlsSolution::Bright { .. }, Some(s)) => s.jets(x),
            (NlsSolution::Bright { .. }, None) => unreachable!("bright provider has sech jets"),
        };
        BTreeMap::from([("q".into(), q)])
    }
    fn constants(&self) -> BTreeMap<String, Complex64> {
        match self.solution {
            NlsSolution::PlaneWave { k, .. } => {
                BTreeMap::from([("k".into(), Complex64::new(k, 0.0))])
            }
            NlsSolution::Bright { omega } => {
                BTreeMap::from([("omega".into(), Complex64::new(omega, 0.0))])
            }
        }
    }
    fn conjugate_pairs(&self) -> Vec<(String, String)> {
        vec![("qbar".into(), "q".into())]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_consistent(p: &dyn JetProvider, var: &str, xs: &[f64]) {
        let h = 1e-4;
        for &x in xs {
            let a = &p.base_jets(x + h)[var];
            let b = &p.base_jets(x - h)[var];
            let c = &p.base_jets(x)[var];
            for k in 0..6 {
                let fd = (a[k] - b[k]) / (2.0 * h);
                let scale = 1.0 + c[k + 1].norm() + c[k + 3].norm();
                assert!(
                    (fd - c[k + 1]).norm() <= 1e-6 * scale,
                    "{} k={k} x={x}",
                    p.name()
                );
            }
        }
    }

    #[test]
    fn kdv_values() {
        let p = KdvSoliton::new(1.0).unwrap();
        let j = &p.base_jets(0.0)["q"];
        assert!((j[0].re - 2.0).abs() < 1e-15);
        assert!(j[1].norm() < 1e-15);
        // q'' = 2κ⁴(4s²t² − 2s⁴)·... at 0: −4κ⁴
        assert!((j[2].re + 4.0).abs() < 1e-12);
        fd_consistent(&p, "q", &[-2.0, -0.3, 0.0, 0.7, 3.0]);
        fd_consistent(&KdvSoliton::new(2.0).unwrap(), "q", &[-1.0, 0.2]);
        assert!(KdvSoliton::new(0.0).is_err());
    }

    #[test]
    fn nls_providers() {
        let pw = NlsProvider::new(NlsSolution::PlaneWave { c: 1.3, k: 0.7 }, -1).unwrap();
        fd_consistent(&pw, "q", &[-1.0, 0.0, 2.5]);
        let env = Env::at(&pw, 0.4);
        let q = env.jets["q"][0];
        assert!((env.jets["qbar"][0] - q.conj()).norm() < 1e-15);
        assert!(((q * q.conj()).re - 1.69).abs() < 1e-12);
        let br = NlsProvider::new(NlsSolution::Bright { omega: 0.8 }, 1).unwrap();
        fd_consistent(&br, "q", &[-1.5, 0.0, 0.3]);
        for x in [-3.0, 0.0, 0.9] {
            let j = &br.base_jets(x)["q"];
            let r = 0.5 * j[2] + j[0] * j[0] * j[0] - 0.8 * j[0];
            assert!(r.norm() < 1e-10);
        }
        assert!(NlsProvider::new(NlsSolution::Bright { omega: 0.8 }, -1).is_err());
        assert!(NlsProvider::new(NlsSolution::Bright { omega: -1.0 }, 1).is_err());
    }
}
