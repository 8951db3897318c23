//! Exhaustive check of every analytic sandwich and asymptotic formula
//! against quadrature.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::dist::{classify_regime, ftilde_asymptotic_ln, laplace_tail_ln, BetaLaw, BetaPrimeLaw, TailRegime};
use crate::error::{Error, Result};
use crate::specfun::{gamma_ratio_half, integrate, wendel_bounds, QuadratureSpec, Upper};

use super::row::{fmt_f64, SCHEMA_VERSION};

/// Relative slack granted to quadrature values in sandwich checks.
pub const QUAD_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WendelGrid {
    /// Points `x_max^{i/count}` for `i = 1..=count`.
    pub count: usize,
    pub x_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FBoundGrid {
    pub n: Vec<usize>,
    pub beta: Vec<f64>,
    pub d: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FTildeBoundGrid {
    pub n: Vec<usize>,
    /// `β = (n+1)/2 + offset`.
    pub beta_offset: Vec<f64>,
    pub d: Vec<f64>,
}

/// One `(a, b)` point of the beta-prime tail asymptotics; `tol` makes it a hard check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AsymptoticCase {
    pub a: f64,
    pub b: f64,
    #[serde(default)]
    pub tol: Option<f64>,
}

/// `∫_a^∞ (1+t²)^{-λ} dt` against its Laplace approximation at `a = 1/√2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaplaceCase {
    pub lambda: f64,
    #[serde(default)]
    pub tol: Option<f64>,
}

/// Audit grid; absent sections are skipped.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AuditGrid {
    pub wendel: Option<WendelGrid>,
    pub f_bounds: Option<FBoundGrid>,
    pub ftilde_bounds: Option<FTildeBoundGrid>,
    pub asymptotic: Vec<AsymptoticCase>,
    pub laplace: Vec<LaplaceCase>,
}

impl AuditGrid {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }
}

fn steps(a: f64, b: f64, step: f64) -> Vec<f64> {
    let count = ((b - a) / step + 1e-9).floor() as usize + 1;
    (0..count).map(|i| a + i as f64 * step).collect()
}

/// The built-in grid.
pub fn default_audit_grid() -> AuditGrid {
    let mut asymptotic = Vec::new();
    for b in [1e2, 1e3, 1e4, 1e5, 1e6] {
        for a in [0.0, 1.0, 3.0] {
            asymptotic.push(AsymptoticCase { a, b, tol: (b == 1e5).then_some(0.05) });
        }
    }
    for b in [5.0f64, 50.0, 500.0, 5000.0] {
        let tol = (b == 50.0 || b == 500.0).then_some(0.05);
        asymptotic.push(AsymptoticCase { a: (100.0 * b).sqrt(), b, tol });
    }
    AuditGrid {
        wendel: Some(WendelGrid { count: 1000, x_max: 1e6 }),
        f_bounds: Some(FBoundGrid {
            n: (1..=20).collect(),
            beta: vec![-0.5, 0.0, 1.0, 5.0, 20.0, 100.0],
            d: steps(0.05, 0.95, 0.05),
        }),
        ftilde_bounds: Some(FTildeBoundGrid {
            n: (1..=10).collect(),
            beta_offset: vec![0.5, 1.0, 2.0, 5.0, 10.0, 20.0],
            d: steps(1.1, 5.0, 0.1),
        }),
        asymptotic,
        laplace: [1e2, 1e3, 1e4]
            .into_iter()
            .map(|lambda| LaplaceCase { lambda, tol: (lambda == 1e4).then_some(0.01) })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AuditOutcome {
    Pass,
    Violation,
    /// The grid point violates the check's precondition.
    Rejected,
    /// Reported without a pass/fail criterion.
    Info,
}

impl AuditOutcome {
    fn as_str(&self) -> &'static str {
        match self {
            AuditOutcome::Pass => "pass",
            AuditOutcome::Violation => "violation",
            AuditOutcome::Rejected => "rejected",
            AuditOutcome::Info => "info",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditRow {
    pub check: String,
    pub n: Option<usize>,
    pub beta: Option<f64>,
    /// The evaluation point: `x`, `d`, `a` or `λ` depending on the check.
    pub arg: f64,
    /// Second parameter where relevant (`b` for asymptotics).
    pub param: Option<f64>,
    pub value: Option<f64>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub rel_err: Option<f64>,
    pub outcome: AuditOutcome,
    pub note: String,
}

impl AuditRow {
    fn new(check: &str, n: Option<usize>, beta: Option<f64>, arg: f64) -> Self {
        Self {
            check: check.into(),
            n,
            beta,
            arg,
            param: None,
            value: None,
            lower: None,
            upper: None,
            rel_err: None,
            outcome: AuditOutcome::Info,
            note: String::new(),
        }
    }

    fn rejected(mut self, e: Error) -> Self {
        self.outcome = AuditOutcome::Rejected;
        self.note = e.to_string();
        self
    }

    fn sandwich(mut self, value: f64, lower: f64, upper: f64, strict: bool) -> Self {
        self.value = Some(value);
        self.lower = Some(lower);
        self.upper = Some(upper);
        let ok = if strict {
            lower < value && value < upper
        } else {
            lower * (1.0 - QUAD_SLACK) <= value && value <= upper * (1.0 + QUAD_SLACK)
        };
        self.outcome = if ok { AuditOutcome::Pass } else { AuditOutcome::Violation };
        self
    }
}

/// Maximum relative error of the asymptotic rows in one `b` decade.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecadeSummary {
    pub check: String,
    /// `⌊log10 b⌋`.
    pub decade: i32,
    pub max_rel_err: f64,
    pub rows: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub rows: Vec<AuditRow>,
    pub decades: Vec<DecadeSummary>,
}

impl AuditReport {
    fn count(&self, o: AuditOutcome) -> usize {
        self.rows.iter().filter(|r| r.outcome == o).count()
    }

    pub fn violations(&self) -> usize {
        self.count(AuditOutcome::Violation)
    }

    pub fn rejected(&self) -> usize {
        self.count(AuditOutcome::Rejected)
    }

    pub fn passed(&self) -> usize {
        self.count(AuditOutcome::Pass)
    }

    pub fn is_clean(&self) -> bool {
        self.violations() == 0
    }

    /// Rows of one check.
    pub fn rows_of<'a>(&'a self, check: &'a str) -> impl Iterator<Item = &'a AuditRow> + 'a {
        self.rows.iter().filter(move |r| r.check == check)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "schema_version",
            "check",
            "n",
            "beta",
            "arg",
            "param",
            "value",
            "lower",
            "upper",
            "rel_err",
            "outcome",
            "note",
        ])?;
        let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
        for r in &self.rows {
            w.write_record([
                SCHEMA_VERSION.to_string(),
                r.check.clone(),
                r.n.map(|n| n.to_string()).unwrap_or_default(),
                opt(r.beta),
                fmt_f64(r.arg),
                opt(r.param),
                opt(r.value),
                opt(r.lower),
                opt(r.upper),
                opt(r.rel_err),
                r.outcome.as_str().to_string(),
                r.note.clone(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Human-readable totals and the per-decade asymptotic errors.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "rows {} pass {} violation {} rejected {} info {}\n",
            self.rows.len(),
            self.passed(),
            self.violations(),
            self.rejected(),
            self.count(AuditOutcome::Info)
        );
        for d in &self.decades {
            s += &format!(
                "{} b~1e{}: max relative error {:.3e} over {} rows\n",
                d.check, d.decade, d.max_rel_err, d.rows
            );
        }
        s
    }
}

fn audit_wendel(g: &WendelGrid, rows: &mut Vec<AuditRow>) {
    for i in 1..=g.count {
        let x = g.x_max.powf(i as f64 / g.count as f64);
        let row = AuditRow::new("wendel", None, None, x);
        rows.push(match (gamma_ratio_half(x), wendel_bounds(x)) {
            (Ok(v), Ok(b)) => row.sandwich(v, b.lower, b.upper, true),
            (Err(e), _) | (_, Err(e)) => row.rejected(e),
        });
    }
}

fn audit_f(g: &FBoundGrid, rows: &mut Vec<AuditRow>) {
    for &n in &g.n {
        for &beta in &g.beta {
            let law = BetaLaw::new(n, beta);
            for &d in &g.d {
                let row = AuditRow::new("f_bounds", Some(n), Some(beta), d);
                let res = law.clone().and_then(|l| Ok((l.tail(d)?, l.tail_bounds(d)?)));
                rows.push(match res {
                    Ok((v, b)) => row.sandwich(v, b.lower, b.upper, false),
                    Err(e) => row.rejected(e),
                });
            }
        }
    }
}

fn audit_ftilde(g: &FTildeBoundGrid, rows: &mut Vec<AuditRow>) {
    for &n in &g.n {
        for &off in &g.beta_offset {
            let beta = (n as f64 + 1.0) / 2.0 + off;
            let law = BetaPrimeLaw::new(n, beta, 1.0);
            for &d in &g.d {
                let row = AuditRow::new("ftilde_bounds", Some(n), Some(beta), d);
                let res = law.clone().and_then(|l| Ok((l.tail(d)?, l.tail_bounds_sigma1(d)?)));
                rows.push(match res {
                    Ok((v, b)) => row.sandwich(v, b.lower, b.upper, false),
                    Err(e) => row.rejected(e),
                });
            }
        }
    }
}

fn graded(mut row: AuditRow, rel_err: f64, tol: Option<f64>) -> AuditRow {
    row.rel_err = Some(rel_err);
    row.outcome = match tol {
        Some(t) if rel_err <= t => AuditOutcome::Pass,
        Some(_) => AuditOutcome::Violation,
        None => AuditOutcome::Info,
    };
    if let Some(t) = tol {
        row.note = format!("tolerance {t}");
    }
    row
}

fn audit_asymptotic(cases: &[AsymptoticCase], rows: &mut Vec<AuditRow>) {
    for c in cases {
        // n = 1, σ = 1 gives b = β and a = d √(2b).
        let mut row = AuditRow::new("tail_asymptotic", Some(1), Some(c.b), c.a);
        row.param = Some(c.b);
        let res = (|| -> Result<(f64, f64, TailRegime)> {
            let law = BetaPrimeLaw::new(1, c.b, 1.0)?;
            let d = c.a / (2.0 * c.b).sqrt();
            let reg = classify_regime(&law, d)?;
            Ok((law.log_tail(d)?, ftilde_asymptotic_ln(&reg)?, reg.regime))
        })();
        rows.push(match res {
            Ok((quad, approx, regime)) => {
                row.value = Some(quad.exp());
                row.note = format!("{regime:?}");
                let note = row.note.clone();
                let mut r = graded(row, ((approx - quad).exp() - 1.0).abs(), c.tol);
                r.note = if r.note.is_empty() { note } else { format!("{note}; {}", r.note) };
                r.check = match regime {
                    TailRegime::GaussianTail => "tail_asymptotic_gaussian".into(),
                    _ => "tail_asymptotic_polynomial".into(),
                };
                r
            }
            Err(e) => row.rejected(e),
        });
    }
}

fn audit_laplace(cases: &[LaplaceCase], rows: &mut Vec<AuditRow>) {
    let a = 0.5f64.sqrt();
    let h = |t: f64| (t * t).ln_1p();
    let hp = 2.0 * a / (1.0 + a * a);
    let spec = QuadratureSpec::new(1e-300, 1e-12, 60).expect("valid spec");
    for c in cases {
        let mut row = AuditRow::new("laplace", None, None, c.lambda);
        row.param = Some(a);
        let lam = c.lambda;
        let res = (|| -> Result<(f64, f64)> {
            let approx = laplace_tail_ln(h, hp, a, lam)?;
            // Scaled by e^{λ h(a)} so the integrand starts at 1.
            let j = integrate(|t: f64| (-lam * (h(t) - h(a))).exp(), a, Upper::Infinity, &spec)?;
            Ok((-lam * h(a) + j.ln(), approx))
        })();
        rows.push(match res {
            Ok((quad, approx)) => {
                row.value = Some(quad.exp());
                graded(row, ((approx - quad).exp() - 1.0).abs(), c.tol)
            }
            Err(e) => row.rejected(e),
        });
    }
}

fn decade_table(rows: &[AuditRow]) -> Vec<DecadeSummary> {
    let mut out: Vec<DecadeSummary> = Vec::new();
    for r in rows.iter().filter(|r| r.check.starts_with("tail_asymptotic")) {
        let (Some(b), Some(err)) = (r.param, r.rel_err) else { continue };
        let decade = b.log10().floor() as i32;
        match out.iter_mut().find(|d| d.check == r.check && d.decade == decade) {
            Some(d) => {
                d.max_rel_err = d.max_rel_err.max(err);
                d.rows += 1;
            }
            None => out.push(DecadeSummary { check: r.check.clone(), decade, max_rel_err: err, rows: 1 }),
        }
    }
    out
}

/// Runs every section of `grid`.
pub fn run_bounds_audit(grid: &AuditGrid) -> AuditReport {
    let mut rows = Vec::new();
    if let Some(g) = &grid.wendel {
        audit_wendel(g, &mut rows);
    }
    if let Some(g) = &grid.f_bounds {
        audit_f(g, &mut rows);
    }
    if let Some(g) = &grid.ftilde_bounds {
        audit_ftilde(g, &mut rows);
    }
    audit_asymptotic(&grid.asymptotic, &mut rows);
    audit_laplace(&grid.laplace, &mut rows);
    let decades = decade_table(&rows);
    AuditReport { rows, decades }
}
