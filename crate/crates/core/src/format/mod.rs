//! Canonical JSON and LaTeX renderings.

pub mod json;
pub mod latex;

/// Rounds to 12 significant digits so printed floats are byte-stable.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}
