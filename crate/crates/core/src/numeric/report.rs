use num_complex::Complex64;
use serde_json::{json, Value};

use crate::format::round_sig;

/// Uniform grid `start..=end` with `points` nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl Grid {
    pub fn new(start: f64, end: f64, points: usize) -> Self {
        Self { start, end, points }
    }

    /// `[−10/κ, 10/κ]`.
    pub fn symmetric(kappa: f64, points: usize) -> Self {
        Self::new(-10.0 / kappa, 10.0 / kappa, points)
    }

    pub fn xs(&self) -> Vec<f64> {
        match self.points {
            0 => Vec::new(),
            1 => vec![self.start],
            n => {
                let step = (self.end - self.start) / (n - 1) as f64;
                (0..n).map(|i| self.start + step * i as f64).collect()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointDetail {
    pub x: f64,
    pub value: Complex64,
    pub deviation: f64,
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub check: String,
    pub grid: Grid,
    /// Mean value for constancy checks, expected value otherwise.
    pub reference: Complex64,
    pub max_abs_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub details: Vec<PointDetail>,
}

impl VerifyReport {
    /// Flagged points are excluded from the maximum.
    pub fn new(
        check: impl Into<String>,
        grid: Grid,
        reference: Complex64,
        tolerance: f64,
        details: Vec<PointDetail>,
    ) -> Self {
        let max_abs_deviation = details
            .iter()
            .filter(|d| !d.flagged)
            .map(|d| d.deviation)
            .fold(
                0.0,
                |a: f64, b| if b.is_nan() { f64::NAN } else { a.max(b) },
            );
        Self {
            check: check.into(),
            grid,
            reference,
            pass: max_abs_deviation <= tolerance,
            max_abs_deviation,
            tolerance,
            details,
        }
    }

    pub fn flagged(&self) -> Vec<usize> {
        self.details
            .iter()
            .enumerate()
            .filter(|(_, d)| d.flagged)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn to_json(&self, with_details: bool) -> Value {
        let mut v = json!({
            "check": self.check,
            "grid": {
                "start": round_sig(self.grid.start),
                "end": round_sig(self.grid.end),
                "points": self.grid.points,
            },
            "reference": complex_json(self.reference),
            "max_abs_deviation": round_sig(self.max_abs_deviation),
            "tolerance": round_sig(self.tolerance),
            "pass": self.pass,
            "flagged": self.flagged(),
        });
        if with_details {
            v["details"] = self
                .details
                .iter()
                .map(|d| {
                    json!({
                        "x": round_sig(d.x),
                        "value": complex_json(d.value),
                        "deviation": round_sig(d.deviation),
                        "flagged": d.flagged,
                    })
                })
                .collect();
        }
        v
    }

    /// `x,re,im,deviation,flagged` per grid point.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,re,im,deviation,flagged\n");
        for d in &self.details {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                round_sig(d.x),
                round_sig(d.value.re),
                round_sig(d.value.im),
                round_sig(d.deviation),
                d.flagged
            ));
        }
        out
    }
}

pub(crate) fn complex_json(z: Complex64) -> Value {
    json!({ "re": round_sig(z.re), "im": round_sig(z.im) })
}
