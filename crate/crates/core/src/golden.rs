//! Golden fixtures: text transcriptions of reference expressions, their
//! canonical JSON form, and the computation each id is checked against.

use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::curve::hamiltonian;
use crate::diffring::{parse, DiffPoly, Ring, RingRef};
use crate::error::{Error, Result};
use crate::format::json;
use crate::gaussian::GaussianRational;
use crate::models::{KdvModel, NlsModel};
use crate::spectral::LambdaPoly;

pub const ENV_VAR: &str = "SOLITON_FIXTURES";

/// `$SOLITON_FIXTURES`, else the repository's `fixtures/v1`.
pub fn default_dir() -> PathBuf {
    std::env::var_os(ENV_VAR)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/v1"))
}

/// Rings by fixture name: `kdv` = {q}, `ef` = {E, F}, `nls` = the NLS
/// reduction ring.
pub fn ring(name: &str) -> Result<RingRef> {
    match name {
        "kdv" => Ok(KdvModel::new().ring),
        "ef" => Ok(Ring::jets(&["E", "F"])),
        "nls" => Ok(NlsModel::new(1)?.q_ring),
        _ => Err(Error::InvalidRing(format!("unknown fixture ring '{name}'"))),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GoldenValue {
    Poly(DiffPoly),
    Lambda(LambdaPoly),
}

impl GoldenValue {
    fn to_json(&self) -> Value {
        match self {
            Self::Poly(p) => json::diffpoly(p),
            Self::Lambda(p) => json::lambda_poly(p),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Self::Poly(_) => "poly",
            Self::Lambda(_) => "lambda",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Printed,
    Oracle,
    /// Transcribed faithfully but known to disagree with the computation.
    Defect,
}

impl Status {
    fn parse(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(Self::Printed),
            "oracle" => Ok(Self::Oracle),
            "defect" => Ok(Self::Defect),
            _ => Err(Error::Json(format!("unknown status '{s}'"))),
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Self::Printed => "printed",
            Self::Oracle => "oracle",
            Self::Defect => "defect",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Golden {
    pub id: String,
    pub ring: String,
    pub status: Status,
    pub text: String,
    pub value: GoldenValue,
}

impl Golden {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "ring": self.ring,
            "kind": self.value.kind(),
            "status": self.status.as_str(),
            "text": self.text,
            "value": self.value.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let s = |k: &str| -> Result<String> {
            v.get(k)
                .and_then(Value::as_str)
                .map(str::to_string)
                .ok_or_else(|| Error::Json(format!("fixture lacks '{k}'")))
        };
        let ring_name = s("ring")?;
        let r = ring(&ring_name)?;
        let raw = v
            .get("value")
            .ok_or_else(|| Error::Json("fixture lacks 'value'".into()))?;
        let value = match s("kind")?.as_str() {
            "poly" => GoldenValue::Poly(json::diffpoly_from(&r, raw)?),
            "lambda" => GoldenValue::Lambda(json::lambda_poly_from(&r, raw)?),
            k => return Err(Error::Json(format!("unknown kind '{k}'"))),
        };
        Ok(Self {
            id: s("id")?,
            ring: ring_name,
            status: Status::parse(&s("status")?)?,
            text: s("text")?,
            value,
        })
    }
}

/// Lines `id | ring | kind | status | text`; `#` starts a comment.
pub fn parse_transcriptions(src: &str) -> Result<Vec<Golden>> {
    let mut out = Vec::new();
    for line in src.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.splitn(5, '|').map(str::trim).collect();
        let [id, ring_name, kind, status, text] = f[..] else {
            return Err(Error::Json(format!("malformed transcription line: {line}")));
        };
        let r = ring(ring_name)?;
        let value = match kind {
            "poly" => GoldenValue::Poly(parse(&r, text)?),
            "lambda" => GoldenValue::Lambda(LambdaPoly::parse(&r, text)?),
            _ => return Err(Error::Json(format!("unknown kind '{kind}'"))),
        };
        out.push(Golden {
            id: id.into(),
            ring: ring_name.into(),
            status: Status::parse(status)?,
            text: text.into(),
            value,
        });
    }
    Ok(out)
}

/// Every `*.json` fixture in `dir`, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<Golden>> {
    let rd = std::fs::read_dir(dir)
        .map_err(|e| Error::Json(format!("cannot read {}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = rd
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Json(format!("cannot read {}: {e}", p.display())))?;
            let v: Value = serde_json::from_str(&text)
                .map_err(|e| Error::Json(format!("{}: {e}", p.display())))?;
            Golden::from_json(&v)
        })
        .collect()
}

fn kdv_h2_part(k: usize) -> Result<DiffPoly> {
    let m = KdvModel::new();
    let h = hamiltonian(&m.operator, &m.derive(2)?.phi())?;
    let scale = [1, 4, 8][k];
    Ok(h.coeff(k).scale(&GaussianRational::from_frac(1, scale)))
}

fn num(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::Json(format!("bad index in fixture id: '{s}'")))
}

/// The computed value a fixture id is compared against.
pub fn compute(id: &str) -> Result<GoldenValue> {
    let kdv = KdvModel::new();
    let unknown = || Error::Json(format!("no computation for fixture '{id}'"));
    if let Some(rest) = id.strip_prefix("kdv.") {
        return match rest {
            "H2.F2" => Ok(GoldenValue::Poly(kdv_h2_part(2)?)),
            "H2.K2" => Ok(GoldenValue::Poly(kdv_h2_part(1)?)),
            "H2.L2" => Ok(GoldenValue::Poly(kdv_h2_part(0)?)),
            _ if rest.starts_with("phi") => {
                Ok(GoldenValue::Lambda(kdv.derive(num(&rest[3..])?)?.phi()))
            }
            _ if rest.starts_with('H') => {
                let der = kdv.derive(num(&rest[1..])?)?;
                Ok(GoldenValue::Lambda(hamiltonian(&kdv.operator, &der.phi())?))
            }
            _ if rest.starts_with('F') => {
                let n = num(&rest[1..])?;
                Ok(GoldenValue::Poly(kdv.densities(n)?.swap_remove(n)))
            }
            _ => Err(unknown()),
        };
    }
    if let Some(rest) = id.strip_prefix("nls.phi") {
        let m = NlsModel::new(1)?;
        return Ok(GoldenValue::Lambda(m.soliton_table(num(rest)?)?.phi()));
    }
    let (sigma, rest) = if let Some(r) = id.strip_prefix("nls+1.") {
        (1, r)
    } else if let Some(r) = id.strip_prefix("nls-1.") {
        (-1, r)
    } else {
        return Err(unknown());
    };
    let m = NlsModel::new(sigma)?;
    if rest == "A2" {
        return Ok(GoldenValue::Poly(m.to_q(&m.soliton_table(2)?.a[2])?));
    }
    for n in 0..=2 {
        for rc in m.reduce_conditions(n)? {
            if rc.name == rest {
                return Ok(GoldenValue::Poly(rc.expression));
            }
        }
    }
    Err(unknown())
}
