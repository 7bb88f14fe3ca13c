use soliton_core::diffring::{parse, Ring, VarSpec};
use soliton_core::models::{KdvModel, NlsModel};
use soliton_core::spectral::OperatorSpec;
use soliton_core::GaussianRational;

use crate::{Common, Failure, Model};

pub enum Preset {
    Kdv(KdvModel),
    Nls(NlsModel),
    Custom,
}

pub struct Setup {
    pub preset: Preset,
    pub operator: OperatorSpec,
    pub n: usize,
    pub a0: GaussianRational,
}

pub fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

pub fn sigma(s: i64) -> Result<i8, Failure> {
    match s {
        1 => Ok(1),
        -1 => Ok(-1),
        _ => Err(usage(format!("--sigma must be 1 or -1, got {s}"))),
    }
}

pub fn n(n: i64) -> Result<usize, Failure> {
    usize::try_from(n).map_err(|_| usage(format!("--n must be non-negative, got {n}")))
}

impl Setup {
    pub fn new(c: &Common) -> Result<Self, Failure> {
        let n = n(c.n)?;
        let (preset, operator, default_a0) = match c.model {
            Model::Kdv => {
                let m = KdvModel::new();
                let op = m.operator.clone();
                (Preset::Kdv(m), op, KdvModel::a0(n))
            }
            Model::Nls => {
                let m = NlsModel::new(sigma(c.sigma)?)?;
                let op = m.operator.clone();
                (Preset::Nls(m), op, GaussianRational::from_int(2))
            }
            Model::Custom => {
                let text = c
                    .operator
                    .as_deref()
                    .ok_or_else(|| usage("--model custom needs --operator"))?;
                if c.vars.is_empty() {
                    return Err(usage("--model custom needs --vars"));
                }
                let ring = Ring::new(c.vars.iter().map(|v| VarSpec::jet(v)).collect())?;
                let op = OperatorSpec::parse(&ring, text)?;
                let a0 = -(GaussianRational::from_int(2) * op.l0().clone());
                (Preset::Custom, op, a0)
            }
        };
        let a0 = match &c.a0 {
            None => default_a0,
            Some(s) => parse(operator.ring(), s)?
                .as_scalar()
                .filter(|v| *v != GaussianRational::from_int(0))
                .ok_or_else(|| usage(format!("--a0 must be a nonzero constant, got '{s}'")))?,
        };
        Ok(Self {
            preset,
            operator,
            n,
            a0,
        })
    }
}
