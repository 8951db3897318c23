//! One sweep result per grid point, with a fixed CSV layout and a JSON mirror.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::montecarlo::Estimate;

/// Bumped whenever the CSV column set or meaning changes.
pub const SCHEMA_VERSION: u32 = 1;

/// Grid coordinates, estimate, diagnostics and analytic bounds of one row.
///
/// Optional fields are empty CSV cells and JSON `null`s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub schema_version: u32,
    pub model: String,
    pub quantity: String,
    pub n: usize,
    pub beta: f64,
    pub sigma: Option<f64>,
    pub n_points: u64,
    pub ln_n_points: f64,
    pub eps: Option<f64>,
    pub r: Option<f64>,
    pub delta: Option<f64>,
    pub t: Option<f64>,
    pub s: Option<f64>,
    pub x_norm: Option<f64>,
    pub measure: Option<String>,
    pub regime: Option<String>,
    pub mode: Option<String>,
    pub mean: f64,
    pub std_err: f64,
    pub n_outer: usize,
    pub n_inner: usize,
    pub seed: u64,
    pub n_tail_r: Option<f64>,
    pub n_tail_s_minus_n_ln_n: Option<f64>,
    pub ln_n_crit_below: Option<f64>,
    pub ln_n_crit_above: Option<f64>,
    pub predicted_side: String,
    pub bound_kind: Option<String>,
    pub bound_lower: Option<f64>,
    pub bound_upper: Option<f64>,
    /// Radius attaining the lower envelope, when it is a grid optimum.
    pub bound_lower_arg: Option<f64>,
    /// Radius attaining the upper envelope, when it is a grid optimum.
    pub bound_upper_arg: Option<f64>,
    pub exp_bound_lower: Option<f64>,
    pub exp_bound_upper: Option<f64>,
    /// Closed form or limit value; never used for violation flags.
    pub reference: Option<f64>,
    pub reference_kind: Option<String>,
    /// Estimate outside the bounds by more than 3 se plus one-sample resolution.
    pub violation: bool,
}

/// Violations are flagged beyond this many standard errors plus the
/// resolution of one sample (so a zero-variance estimate is not flagged for
/// missing a bound by less than it can resolve).
pub const VIOLATION_SIGMAS: f64 = 3.0;

impl SweepRow {
    /// A row with the estimate filled in and every optional field empty.
    pub fn new(model: &str, quantity: &str, n: usize, beta: f64, n_points: u64, est: &Estimate) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            model: model.to_string(),
            quantity: quantity.to_string(),
            n,
            beta,
            sigma: None,
            n_points,
            ln_n_points: (n_points as f64).ln(),
            eps: None,
            r: None,
            delta: None,
            t: None,
            s: None,
            x_norm: None,
            measure: None,
            regime: None,
            mode: None,
            mean: est.mean,
            std_err: est.std_err,
            n_outer: est.n_outer,
            n_inner: est.n_inner,
            seed: est.seed,
            n_tail_r: None,
            n_tail_s_minus_n_ln_n: None,
            ln_n_crit_below: None,
            ln_n_crit_above: None,
            predicted_side: "none".to_string(),
            bound_kind: None,
            bound_lower: None,
            bound_upper: None,
            bound_lower_arg: None,
            bound_upper_arg: None,
            exp_bound_lower: None,
            exp_bound_upper: None,
            reference: None,
            reference_kind: None,
            violation: false,
        }
    }

    /// Records the critical counts and derives the predicted side of `ln N`.
    pub fn set_critical(&mut self, below: Option<f64>, above: Option<f64>) {
        self.ln_n_crit_below = below;
        self.ln_n_crit_above = above;
        let l = self.ln_n_points;
        self.predicted_side = match (below, above) {
            (Some(b), _) if l < b => "below",
            (_, Some(a)) if l > a => "above",
            (Some(_), Some(_)) => "window",
            _ => "none",
        }
        .to_string();
    }

    /// Records an analytic bound and recomputes the violation flag.
    pub fn set_bounds(&mut self, kind: &str, lower: Option<f64>, upper: Option<f64>) {
        self.bound_kind = Some(kind.to_string());
        self.bound_lower = lower;
        self.bound_upper = upper;
        let resolution = 1.0 / (self.n_outer.max(1) * self.n_inner.max(1)) as f64;
        let slack = VIOLATION_SIGMAS * self.std_err + resolution;
        self.violation =
            lower.is_some_and(|lo| self.mean < lo - slack) || upper.is_some_and(|up| self.mean > up + slack);
    }
}

/// 17 significant digits; `{:e}` output parses back to the same bits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

fn fmt_opt_str(v: &Option<String>) -> String {
    v.clone().unwrap_or_default()
}

fn parse_num<T: std::str::FromStr>(field: &str, s: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::Parse(format!("column {field}: cannot parse {s:?}")))
}

fn parse_opt(field: &str, s: &str) -> Result<Option<f64>> {
    if s.is_empty() {
        Ok(None)
    } else {
        parse_num(field, s).map(Some)
    }
}

fn parse_opt_str(s: &str) -> Option<String> {
    (!s.is_empty()).then(|| s.to_string())
}

fn parse_bool(field: &str, s: &str) -> Result<bool> {
    match s {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(Error::Parse(format!("column {field}: expected true or false, got {s:?}"))),
    }
}

/// Lists every column once: (name, kind) in header order.
macro_rules! columns {
    ($m:ident) => {
        $m! {
            schema_version: num,
            model: text,
            quantity: text,
            n: num,
            beta: float,
            sigma: opt,
            n_points: num,
            ln_n_points: float,
            eps: opt,
            r: opt,
            delta: opt,
            t: opt,
            s: opt,
            x_norm: opt,
            measure: opt_text,
            regime: opt_text,
            mode: opt_text,
            mean: float,
            std_err: float,
            n_outer: num,
            n_inner: num,
            seed: num,
            n_tail_r: opt,
            n_tail_s_minus_n_ln_n: opt,
            ln_n_crit_below: opt,
            ln_n_crit_above: opt,
            predicted_side: text,
            bound_kind: opt_text,
            bound_lower: opt,
            bound_upper: opt,
            bound_lower_arg: opt,
            bound_upper_arg: opt,
            exp_bound_lower: opt,
            exp_bound_upper: opt,
            reference: opt,
            reference_kind: opt_text,
            violation: flag,
        }
    };
}

macro_rules! header_impl {
    ($($name:ident : $kind:ident),* $(,)?) => {
        /// The fixed CSV header.
        pub const HEADER: &[&str] = &[$(stringify!($name)),*];
    };
}
columns!(header_impl);

macro_rules! fmt_field {
    ($row:ident, $name:ident, num) => {
        $row.$name.to_string()
    };
    ($row:ident, $name:ident, float) => {
        fmt_f64($row.$name)
    };
    ($row:ident, $name:ident, opt) => {
        fmt_opt($row.$name)
    };
    ($row:ident, $name:ident, text) => {
        $row.$name.clone()
    };
    ($row:ident, $name:ident, opt_text) => {
        fmt_opt_str(&$row.$name)
    };
    ($row:ident, $name:ident, flag) => {
        $row.$name.to_string()
    };
}

macro_rules! parse_field {
    ($s:expr, $name:ident, num) => {
        parse_num(stringify!($name), $s)?
    };
    ($s:expr, $name:ident, float) => {
        parse_num(stringify!($name), $s)?
    };
    ($s:expr, $name:ident, opt) => {
        parse_opt(stringify!($name), $s)?
    };
    ($s:expr, $name:ident, text) => {
        $s.to_string()
    };
    ($s:expr, $name:ident, opt_text) => {
        parse_opt_str($s)
    };
    ($s:expr, $name:ident, flag) => {
        parse_bool(stringify!($name), $s)?
    };
}

macro_rules! record_impl {
    ($($name:ident : $kind:ident),* $(,)?) => {
        impl SweepRow {
            /// CSV cells in [`HEADER`] order.
            pub fn to_record(&self) -> Vec<String> {
                vec![$(fmt_field!(self, $name, $kind)),*]
            }

            /// Inverse of [`SweepRow::to_record`].
            pub fn from_record(cells: &[&str]) -> Result<Self> {
                if cells.len() != HEADER.len() {
                    return Err(Error::Parse(format!("expected {} columns, got {}", HEADER.len(), cells.len())));
                }
                let mut it = cells.iter();
                Ok(Self {
                    $($name: parse_field!(it.next().expect("length checked"), $name, $kind),)*
                })
            }
        }
    };
}
columns!(record_impl);

/// Writes the header and `rows`.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for row in rows {
        w.write_record(row.to_record())?;
    }
    w.flush()?;
    Ok(())
}

/// Reads rows written by [`write_csv`]; the header must match exactly.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = r.headers()?.clone();
    if header.iter().ne(HEADER.iter().copied()) {
        return Err(Error::Parse("CSV header does not match this schema version".into()));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let cells: Vec<&str> = rec.iter().collect();
        rows.push(SweepRow::from_record(&cells)?);
    }
    Ok(rows)
}

/// One JSON array of row objects with the CSV field names.
pub fn write_json<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    serde_json::to_writer_pretty(out, rows).map_err(|e| Error::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_row() -> SweepRow {
        let est = Estimate { mean: 0.123_456_789_012_345_67, std_err: 1e-3, n_outer: 10, n_inner: 20, seed: 7 };
        let mut row = SweepRow::new("beta_hull", "volume_ratio", 4, -0.25, 100, &est);
        row.sigma = Some(f64::MIN_POSITIVE);
        row.measure = Some("gaussian_std, quoted".into());
        row.set_critical(Some(3.0), Some(8.0));
        row.set_bounds("union_envelope", Some(0.0), Some(0.2));
        row
    }

    #[test]
    fn header_matches_record_width() {
        assert_eq!(HEADER.len(), sample_row().to_record().len());
        assert_eq!(HEADER[0], "schema_version");
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let rows = vec![sample_row(), sample_row()];
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        assert_eq!(read_csv(buf.as_slice()).unwrap(), rows);
    }

    #[test]
    fn predicted_side_and_violation() {
        let mut row = sample_row();
        assert_eq!(row.predicted_side, "window");
        row.set_critical(Some(5.0), None);
        assert_eq!(row.predicted_side, "below");
        row.set_critical(None, Some(1.0));
        assert_eq!(row.predicted_side, "above");
        row.set_bounds("x", None, Some(0.1));
        assert!(row.violation);
        row.set_bounds("x", None, Some(0.121));
        assert!(!row.violation);
        // A zero-variance estimate of 1 is consistent with a bound just below 1.
        row.mean = 1.0;
        row.std_err = 0.0;
        row.set_bounds("x", None, Some(1.0 - 1e-15));
        assert!(!row.violation);
        row.set_bounds("x", None, Some(0.9));
        assert!(row.violation);
    }

    #[test]
    fn rejects_bad_rows() {
        let mut cells = sample_row().to_record();
        cells[3] = "four".into();
        let refs: Vec<&str> = cells.iter().map(String::as_str).collect();
        assert!(matches!(SweepRow::from_record(&refs), Err(Error::Parse(_))));
        assert!(SweepRow::from_record(&refs[..5]).is_err());
    }
}
