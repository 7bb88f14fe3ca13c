use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde_json::{json, Value};
use soliton_core::curve::hamiltonian;
use soliton_core::diffring::{parse, DiffPoly, Ring, VarSpec};
use soliton_core::format::json as cj;
use soliton_core::golden::{self, Status};
use soliton_core::models::{KdvModel, NlsModel};
use soliton_core::numeric::{
    abel_sum_check, constancy_check, curve_membership, curve_points, AbelOptions, Grid,
    JetProvider, KdvSoliton, NlsProvider, NlsSolution, VerifyReport,
};
use soliton_core::spectral::LambdaPoly;

use crate::setup::{sigma, usage};
use crate::{Failure, Model};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Constancy,
    Curve,
    Abel,
    /// Compare computed objects with the fixture directory.
    Golden,
    /// constancy, curve and abel.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Solution {
    #[value(alias = "plane_wave")]
    PlaneWave,
    Bright,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "kdv")]
    pub model: Model,
    #[arg(long, value_enum, default_value = "all")]
    pub check: Check,
    #[arg(long, default_value_t = 1.0)]
    pub kappa: f64,
    /// Shift applied to every root before the curve check.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub perturb: f64,
    #[arg(long, value_enum, default_value = "plane-wave")]
    pub solution: Solution,
    #[arg(long = "C", default_value_t = 1.0, allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long, default_value_t = 0.7, allow_negative_numbers = true)]
    pub k: f64,
    #[arg(long, default_value_t = 0.5)]
    pub omega: f64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub sigma: i64,
    #[arg(long, default_value_t = 1)]
    pub mu: usize,
    /// Overrides every default tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 1001)]
    pub grid_points: usize,
    /// Include per-point values in the JSON.
    #[arg(long)]
    pub details: bool,
    /// Directory for one CSV file of per-point values per report.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

fn kdv_reports(a: &VerifyArgs) -> Result<Vec<VerifyReport>, Failure> {
    if !a.kappa.is_finite() || a.kappa <= 0.0 {
        return Err(usage(format!("--kappa must be positive, got {}", a.kappa)));
    }
    if a.mu != 1 {
        return Err(usage(
            "the KdV suite uses the 1-soliton psi_1, so --mu must be 1",
        ));
    }
    let ring = Ring::new(vec![VarSpec::constant("kappa"), VarSpec::jet("q")])?;
    let op = KdvModel::new().operator.embed(&ring)?;
    let psi = LambdaPoly::parse(&ring, "2 lambda + q - 2 kappa^2")?;
    let h = hamiltonian(&op, &psi)?;
    let p = KdvSoliton::new(a.kappa)?;
    let grid = Grid::symmetric(a.kappa, a.grid_points);
    let mut out = Vec::new();
    if matches!(a.check, Check::Constancy | Check::All) {
        let law = parse(&ring, "q'' + 3 q^2 - 4 kappa^2 q")?;
        out.push(constancy_check(
            "F1 - 4 kappa^2 F0",
            &law,
            &p,
            &grid,
            a.tol.unwrap_or(1e-10),
        )?);
        for (k, coeff) in h.ascending().iter().enumerate().rev() {
            let name = format!("H(psi_1) lambda^{k}");
            out.push(constancy_check(
                &name,
                coeff,
                &p,
                &grid,
                a.tol.unwrap_or(1e-9),
            )?);
        }
    }
    if matches!(a.check, Check::Curve | Check::All) {
        let pts = curve_points(&psi, &p, &grid, a.perturb)?;
        out.push(curve_membership(
            &pts,
            &h,
            &p,
            &grid,
            a.tol.unwrap_or(1e-8),
        )?);
    }
    if matches!(a.check, Check::Abel | Check::All) {
        let opts = AbelOptions {
            mu: a.mu,
            tol: a.tol.unwrap_or(1e-8),
            ..Default::default()
        };
        out.push(abel_sum_check(&psi, &p, &grid, &opts)?);
    }
    Ok(out)
}

fn nls_reports(a: &VerifyArgs) -> Result<Vec<VerifyReport>, Failure> {
    if matches!(a.check, Check::Curve | Check::Abel) {
        return Err(usage("only constancy checks are available for --model nls"));
    }
    let sigma = sigma(a.sigma)?;
    let m = NlsModel::new(sigma)?;
    let solution = match a.solution {
        Solution::PlaneWave => NlsSolution::PlaneWave { c: a.c, k: a.k },
        Solution::Bright => NlsSolution::Bright { omega: a.omega },
    };
    let p = NlsProvider::new(solution, sigma)?;
    let ef = |s: &str| -> Result<DiffPoly, Failure> { Ok(m.to_q(&parse(&m.ef_ring, s)?)?) };
    let density = |name: &str| -> Result<DiffPoly, Failure> {
        // the jet part of a reduced density; its constant is what is measured
        for n in 1..=2 {
            for rc in m.reduce_conditions(n)? {
                if rc.name == name {
                    let sym = DiffPoly::var(&m.q_ring, &rc.constant_symbol)?;
                    let c = rc.expression.coefficient_of(sym.jets()[0], 1);
                    return Ok(&rc.expression - &(&c * &sym));
                }
            }
        }
        Err(usage(format!("no reduced condition '{name}'")))
    };
    let mut exprs: Vec<(&str, DiffPoly)> = Vec::new();
    if a.solution == Solution::PlaneWave {
        exprs.push(("E", ef("E")?));
        exprs.push(("F", ef("F")?));
    }
    exprs.push(("A_2", ef("3/4 E^2 + F")?));
    exprs.push(("phase-flux density", density("phase-flux")?));
    exprs.push(("third density", density("third-density")?));
    let grid = Grid::symmetric(1.0, a.grid_points);
    let tol = a.tol.unwrap_or(1e-8);
    exprs
        .iter()
        .map(|(name, e)| Ok(constancy_check(name, e, &p, &grid, tol)?))
        .collect()
}

fn golden_report() -> Result<(Value, bool), Failure> {
    let dir = golden::default_dir();
    let mut ok = true;
    let mut items = Vec::new();
    for g in golden::load_dir(&dir)? {
        let matches = golden::compute(&g.id)? == g.value;
        let expected = g.status != Status::Defect;
        ok &= matches == expected;
        items.push(json!({"id": g.id, "status": format!("{:?}", g.status).to_lowercase(), "match": matches}));
    }
    Ok((
        json!({"dir": dir.display().to_string(), "fixtures": items, "pass": ok}),
        ok,
    ))
}

pub fn run(a: &VerifyArgs) -> Result<String, Failure> {
    if a.grid_points < 5 {
        return Err(usage("--grid-points must be at least 5"));
    }
    if let Some(t) = a.tol {
        if !t.is_finite() || t <= 0.0 {
            return Err(usage(format!("--tol must be positive, got {t}")));
        }
    }
    if a.check == Check::Golden {
        let (v, ok) = golden_report()?;
        let text = cj::to_string(&v);
        return if ok {
            Ok(text)
        } else {
            Err(Failure::ChecksFailed(text))
        };
    }
    let reports = match a.model {
        Model::Kdv => kdv_reports(a)?,
        Model::Nls => nls_reports(a)?,
        Model::Custom => return Err(usage("verify needs --model kdv or nls")),
    };
    let p: Box<dyn JetProvider> = match a.model {
        Model::Kdv => Box::new(KdvSoliton::new(a.kappa)?),
        _ => Box::new(NlsProvider::new(
            match a.solution {
                Solution::PlaneWave => NlsSolution::PlaneWave { c: a.c, k: a.k },
                Solution::Bright => NlsSolution::Bright { omega: a.omega },
            },
            sigma(a.sigma)?,
        )?),
    };
    if let Some(dir) = &a.csv {
        std::fs::create_dir_all(dir)
            .map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
        for (i, r) in reports.iter().enumerate() {
            let path = dir.join(format!("{i:02}.csv"));
            std::fs::write(&path, r.to_csv())
                .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
        }
    }
    let pass = reports.iter().all(|r| r.pass);
    let v = json!({
        "provider": p.name(),
        "params": p.params(),
        "reports": reports.iter().map(|r| r.to_json(a.details)).collect::<Vec<_>>(),
        "pass": pass,
    });
    let text = cj::to_string(&v);
    if pass {
        Ok(text)
    } else {
        Err(Failure::ChecksFailed(text))
    }
}
