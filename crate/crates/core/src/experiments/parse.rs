//! Small textual formats shared by the CLI and config files.

use crate::error::{Error, Result};

/// Longest list a range may expand to.
pub const MAX_RANGE_LEN: usize = 1_000_000;

fn number(s: &str, what: &str) -> Result<f64> {
    let v: f64 = s.trim().parse().map_err(|_| Error::Parse(format!("{what}: cannot parse {s:?}")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("{what} must be finite, got {s:?}")));
    }
    Ok(v)
}

/// Expands `a:b:step` to `a, a + step, …` up to `b` (inclusive, with a
/// relative slack of `1e-9 · step` so decimal steps land on `b`).
pub fn parse_range(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, step] = parts.as_slice() else {
        return Err(Error::Parse(format!("expected a:b:step, got {text:?}")));
    };
    let (a, b, step) = (number(a, "range start")?, number(b, "range end")?, number(step, "range step")?);
    if !(step > 0.0) {
        return Err(Error::Parse(format!("range step must be positive, got {step}")));
    }
    if b < a {
        return Err(Error::Parse(format!("range end {b} is below start {a}")));
    }
    let span = (b - a) / step;
    if !(span < MAX_RANGE_LEN as f64) {
        return Err(Error::Parse(format!("range {text:?} has more than {MAX_RANGE_LEN} points")));
    }
    let count = (span + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| a + i as f64 * step).collect())
}

/// Parses comma-separated coordinates, e.g. `0.5,-1,2e-3`.
pub fn parse_point_csv(text: &str) -> Result<Vec<f64>> {
    if text.trim().is_empty() {
        return Err(Error::Parse("empty point".into()));
    }
    text.split(',').map(|s| number(s, "coordinate")).collect()
}
