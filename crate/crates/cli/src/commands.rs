use serde_json::{json, Value};
use soliton_core::curve::curve_data;
use soliton_core::diffring::DiffPoly;
use soliton_core::format::{json as cj, latex};
use soliton_core::models::{KdvModel, NlsModel, ReducedCondition};
use soliton_core::spectral::{
    conditions as conds, conditions_alternative, derive_soliton, ConditionSet, ConstantsPolicy,
    LambdaPoly, SolitonDerivation,
};

use crate::setup::{usage, Preset, Setup};
use crate::{Common, ExportArgs, Failure, Format};

fn poly(p: &DiffPoly, f: Format) -> String {
    match f {
        Format::Latex => latex::diffpoly(p),
        _ => p.to_string(),
    }
}

fn lam(p: &LambdaPoly, f: Format) -> String {
    match f {
        Format::Latex => latex::lambda_poly(p),
        _ => p.to_string(),
    }
}

fn derive_from(s: &Setup) -> Result<SolitonDerivation, Failure> {
    Ok(derive_soliton(
        &s.operator,
        s.n,
        s.a0.clone(),
        &ConstantsPolicy::Zero,
    )?)
}

fn condition_lines(out: &mut String, label: &str, cs: &ConditionSet, n: usize, f: Format) {
    let d = cs.residuals.len();
    for (i, r) in cs.residuals.iter().enumerate() {
        let s = d - 1 - i;
        match f {
            Format::Latex => {
                out.push_str(&format!("\\mathcal{{A}}_{{{n},{s}}} = {}\n", poly(r, f)))
            }
            _ => out.push_str(&format!("{label} s={s}: {}\n", poly(r, f))),
        }
    }
}

fn conditions_json(cs: &ConditionSet) -> Value {
    let d = cs.residuals.len();
    cs.residuals
        .iter()
        .enumerate()
        .map(|(i, r)| json!({"s": d - 1 - i, "residual": cj::diffpoly(r)}))
        .collect()
}

fn model_name(s: &Setup) -> &'static str {
    match s.preset {
        Preset::Kdv(_) => "kdv",
        Preset::Nls(_) => "nls",
        Preset::Custom => "custom",
    }
}

pub fn derive(c: &Common) -> Result<String, Failure> {
    let s = Setup::new(c)?;
    let der = derive_from(&s)?;
    let cs = conds(&der, &s.operator)?;
    let alt = conditions_alternative(&der, &s.operator)?;
    let n = s.n;
    let f = c.format;
    if f == Format::Json {
        let v = json!({
            "model": model_name(&s),
            "n": n,
            "operator": cj::lambda_poly(s.operator.poly()),
            "a0": cj::gaussian(&s.a0),
            "phi": cj::lambda_poly(&der.phi()),
            "coefficients": der.a.iter().map(cj::diffpoly).collect::<Vec<_>>(),
            "extended": der.extended.iter().map(cj::diffpoly).collect::<Vec<_>>(),
            "conditions": conditions_json(&cs),
            "conditions_alternative": conditions_json(&alt),
            "forms_agree": cs == alt,
        });
        return Ok(cj::to_string(&v));
    }
    let mut out = String::new();
    let phi = lam(&der.phi(), f);
    match f {
        Format::Latex => out.push_str(&format!("\\phi_{{{n}}} = {phi}\n")),
        _ => out.push_str(&format!("phi_{n} = {phi}\n")),
    }
    let all = der.a.iter().chain(der.extended.iter());
    for (k, a) in all.enumerate() {
        match f {
            Format::Latex => out.push_str(&format!("A_{{{k}}} = {}\n", poly(a, f))),
            _ => out.push_str(&format!("A_{k} = {}\n", poly(a, f))),
        }
    }
    condition_lines(&mut out, "condition", &cs, n, f);
    if f == Format::Text {
        condition_lines(&mut out, "alternative", &alt, n, f);
        out.push_str(&format!("forms agree: {}\n", cs == alt));
    }
    Ok(out)
}

pub fn conditions(c: &Common) -> Result<String, Failure> {
    let s = Setup::new(c)?;
    let der = derive_from(&s)?;
    let cs = conds(&der, &s.operator)?;
    let alt = conditions_alternative(&der, &s.operator)?;
    if c.format == Format::Json {
        let v = json!({
            "n": s.n,
            "conditions": conditions_json(&cs),
            "conditions_alternative": conditions_json(&alt),
            "forms_agree": cs == alt,
        });
        return Ok(cj::to_string(&v));
    }
    let mut out = String::new();
    condition_lines(&mut out, "condition", &cs, s.n, c.format);
    if c.format == Format::Text {
        condition_lines(&mut out, "alternative", &alt, s.n, c.format);
        out.push_str(&format!("forms agree: {}\n", cs == alt));
    }
    Ok(out)
}

pub fn curve(c: &Common) -> Result<String, Failure> {
    let s = Setup::new(c)?;
    let der = derive_from(&s)?;
    let data = curve_data(&s.operator, &der)?;
    let n = s.n;
    match c.format {
        Format::Json => {
            let v = json!({
                "n": n,
                "d": data.d,
                "h": cj::lambda_poly(&data.h),
                "degree": data.degree,
                "genus": data.genus,
                "leading": cj::gaussian(&data.leading),
                "gap_ok": data.gap_ok,
            });
            Ok(cj::to_string(&v))
        }
        Format::Latex => Ok(format!(
            "\\mathcal{{H}}_{{{n}}}(\\lambda) = {}\n% degree {}, genus {}, leading {}\n",
            latex::lambda_poly(&data.h),
            data.degree,
            data.genus,
            latex::scalar(&data.leading)
        )),
        Format::Text => {
            let mut out = format!("H_{n} = {}\n", data.h);
            out.push_str(&format!("degree: {}\ngenus: {}\n", data.degree, data.genus));
            out.push_str(&format!("leading: {}\ngap: ok\n", data.leading));
            for (k, coeff) in data.h.ascending().iter().enumerate().rev() {
                if !coeff.is_zero() {
                    out.push_str(&format!("lambda^{k}: {coeff}\n"));
                }
            }
            Ok(out)
        }
    }
}

fn reduced_json(rc: &ReducedCondition) -> Result<Value, Failure> {
    Ok(json!({
        "name": rc.name,
        "expression": cj::diffpoly(&rc.expression),
        "constant_symbol": rc.constant_symbol,
        "invariant_holds": rc.invariant_holds()?,
    }))
}

pub fn hierarchy(c: &Common) -> Result<String, Failure> {
    let s = Setup::new(c)?;
    let list = match &s.preset {
        Preset::Kdv(m) => vec![m.reduced_density(s.n)?],
        Preset::Nls(m) => {
            if s.n > 2 {
                return Err(usage(format!(
                    "nls hierarchy is available for n in 0..=2, got {}",
                    s.n
                )));
            }
            m.reduce_conditions(s.n)?
        }
        Preset::Custom => return Err(usage("hierarchy needs --model kdv or nls")),
    };
    if c.format == Format::Json {
        let items = list
            .iter()
            .map(reduced_json)
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(cj::to_string(&json!({"n": s.n, "conditions": items})));
    }
    let mut out = String::new();
    for rc in &list {
        let held = rc.invariant_holds()?;
        match c.format {
            Format::Latex => out.push_str(&format!(
                "% {} (constant {})\n{} = 0\n",
                rc.name,
                latex::symbol(&rc.constant_symbol),
                latex::diffpoly(&rc.expression)
            )),
            _ => out.push_str(&format!(
                "{}: {} = 0  [constant {}; conserved: {held}]\n",
                rc.name, rc.expression, rc.constant_symbol
            )),
        }
    }
    Ok(out)
}

pub fn export(x: &ExportArgs) -> Result<String, Failure> {
    let kdv = KdvModel::new();
    let mut kdv_phi = Vec::new();
    let mut kdv_h = Vec::new();
    for n in 0..=x.max_n {
        let der = kdv.derive(n)?;
        let data = curve_data(&kdv.operator, &der)?;
        kdv_phi.push(cj::lambda_poly(&der.phi()));
        kdv_h.push(cj::lambda_poly(&data.h));
    }
    let densities: Vec<Value> = kdv.densities(x.max_n)?.iter().map(cj::diffpoly).collect();
    let mut nls = serde_json::Map::new();
    for sigma in [1i8, -1] {
        let m = NlsModel::new(sigma)?;
        let mut phis = Vec::new();
        for n in 0..=x.max_n + 1 {
            phis.push(cj::lambda_poly(&m.soliton_table(n)?.phi()));
        }
        let mut red = Vec::new();
        for n in 0..=2 {
            for rc in m.reduce_conditions(n)? {
                red.push(reduced_json(&rc)?);
            }
        }
        nls.insert(
            format!("sigma={sigma}"),
            json!({"solitons": phis, "reductions": red}),
        );
    }
    let v = json!({
        "kdv": {"densities": densities, "solitons": kdv_phi, "curves": kdv_h},
        "nls": Value::Object(nls),
    });
    let text = cj::to_string(&v);
    match &x.out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}
