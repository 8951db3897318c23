//! Declarative sweep configuration (TOML).

use serde::{Deserialize, Serialize};

use crate::dist::BetaPrimeRegime;
use crate::error::{Error, Result};
use crate::montecarlo::{McConfig, MeasureSpec};

/// Default hull-size cap.
pub const DEFAULT_MAX_POINTS: u64 = 200_000;
/// Default dimension cap.
pub const DEFAULT_MAX_DIM: usize = 20;
/// `ε` used for diagnostics when the grid lists none.
pub const DEFAULT_EPS: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepModel {
    BetaHull,
    BetaPrimeHull,
    DualBeta,
    DualBetaPrime,
    FixedDim,
}

impl SweepModel {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepModel::BetaHull => "beta_hull",
            SweepModel::BetaPrimeHull => "beta_prime_hull",
            SweepModel::DualBeta => "dual_beta",
            SweepModel::DualBetaPrime => "dual_beta_prime",
            SweepModel::FixedDim => "fixed_dim",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Caps {
    pub max_points: u64,
    pub max_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self { max_points: DEFAULT_MAX_POINTS, max_dim: DEFAULT_MAX_DIM }
    }
}

/// Grid axes. Each model reads the axes it needs; see the README for the table.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSpec {
    pub n: Vec<usize>,
    /// Absolute shape parameters.
    pub beta: Vec<f64>,
    /// `β = n/2 + c` for each listed `c`.
    pub beta_excess: Vec<f64>,
    /// `β = n/2 + c ln n` for each listed `c`.
    pub beta_excess_log: Vec<f64>,
    pub sigma: Vec<f64>,
    /// Use `σ = √(2β)` (the Gaussian limit) instead of `sigma`.
    pub sigma_sq_two_beta: bool,
    #[serde(rename = "N")]
    pub n_points: Vec<u64>,
    /// `N = round(exp(ln_N))`.
    #[serde(rename = "ln_N")]
    pub ln_n_points: Vec<f64>,
    /// `ln N = c · n`.
    #[serde(rename = "ln_N_per_n")]
    pub ln_n_per_dim: Vec<f64>,
    /// `N = ⌈3 n ln n⌉`.
    pub three_n_log_n: bool,
    pub eps: Vec<f64>,
    #[serde(rename = "R")]
    pub r: Vec<f64>,
    pub delta: Vec<f64>,
    pub r_inner: Option<f64>,
    pub r_outer: Option<f64>,
    pub measure: Vec<MeasureSpec>,
    /// `[t, s]` annuli for the dual models.
    pub annulus: Vec<[f64; 2]>,
    /// Norms of single query points for the dual closed-form check.
    pub x_norm: Vec<f64>,
    /// Expected beta-prime regime; grid points classified otherwise are rejected.
    pub regime: Option<BetaPrimeRegime>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub model: SweepModel,
    #[serde(default)]
    pub output_path: Option<String>,
    #[serde(default)]
    pub mc: McConfig,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub caps: Caps,
}

fn cfg_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}

impl SweepConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// `ε` values for diagnostics.
    pub fn eps_values(&self) -> Vec<f64> {
        if self.grid.eps.is_empty() {
            vec![DEFAULT_EPS]
        } else {
            self.grid.eps.clone()
        }
    }

    /// Shape parameters for dimension `n`.
    pub fn betas_for(&self, n: usize) -> Result<Vec<f64>> {
        let g = &self.grid;
        let given = [!g.beta.is_empty(), !g.beta_excess.is_empty(), !g.beta_excess_log.is_empty()];
        if given.iter().filter(|&&b| b).count() != 1 {
            return cfg_err("grid must give exactly one of beta, beta_excess, beta_excess_log");
        }
        let half = n as f64 / 2.0;
        Ok(if !g.beta.is_empty() {
            g.beta.clone()
        } else if !g.beta_excess.is_empty() {
            g.beta_excess.iter().map(|c| half + c).collect()
        } else {
            g.beta_excess_log.iter().map(|c| half + c * (n as f64).ln()).collect()
        })
    }

    /// Scales for shape `beta`.
    pub fn sigmas_for(&self, beta: f64) -> Result<Vec<f64>> {
        if self.grid.sigma_sq_two_beta {
            if !self.grid.sigma.is_empty() {
                return cfg_err("give either sigma or sigma_sq_two_beta, not both");
            }
            return Ok(vec![(2.0 * beta).sqrt()]);
        }
        if self.grid.sigma.is_empty() {
            return Ok(vec![1.0]);
        }
        Ok(self.grid.sigma.clone())
    }

    /// Point counts for dimension `n`, ascending and deduplicated.
    pub fn counts_for(&self, n: usize) -> Result<Vec<u64>> {
        let g = &self.grid;
        let mut out: Vec<u64> = g.n_points.clone();
        for &l in &g.ln_n_points {
            out.push(count_from_ln(l)?);
        }
        for &c in &g.ln_n_per_dim {
            out.push(count_from_ln(c * n as f64)?);
        }
        if g.three_n_log_n {
            out.push((3.0 * n as f64 * (n as f64).ln()).ceil().max(1.0) as u64);
        }
        if out.is_empty() {
            return cfg_err("grid must give point counts via N, ln_N, ln_N_per_n or three_n_log_n");
        }
        if out.contains(&0) {
            return cfg_err("point counts must be positive");
        }
        out.sort_unstable();
        out.dedup();
        for &c in &out {
            if c > self.caps.max_points {
                return Err(Error::CapExceeded {
                    what: "hull size",
                    value: c as f64,
                    cap: self.caps.max_points as f64,
                });
            }
        }
        Ok(out)
    }

    /// Checks every grid point against the model's domain; returns warnings.
    pub fn validate(&self) -> Result<Vec<String>> {
        self.mc.validate()?;
        let mut warnings = Vec::new();
        if self.caps.max_points > DEFAULT_MAX_POINTS {
            warnings.push(format!(
                "hull-size cap raised to {} (default {DEFAULT_MAX_POINTS}); LP membership may be slow",
                self.caps.max_points
            ));
        }
        if self.caps.max_dim > DEFAULT_MAX_DIM {
            warnings.push(format!("dimension cap raised to {} (default {DEFAULT_MAX_DIM})", self.caps.max_dim));
        }
        if self.grid.n.is_empty() {
            return cfg_err("grid.n must list at least one dimension");
        }
        for &n in &self.grid.n {
            if n == 0 {
                return cfg_err("dimensions must be >= 1");
            }
            if n > self.caps.max_dim {
                return Err(Error::CapExceeded { what: "dimension", value: n as f64, cap: self.caps.max_dim as f64 });
            }
        }
        for &e in &self.eps_values() {
            if !(0.0..1.0).contains(&e) {
                return cfg_err(format!("eps must lie in [0, 1), got {e}"));
            }
        }
        // Model-specific checks are the runners' own preconditions, run without sampling.
        super::sweeps::plan(self)?;
        Ok(warnings)
    }
}

/// `N = round(e^l)`, rejecting values beyond `u64`.
pub fn count_from_ln(l: f64) -> Result<u64> {
    if !l.is_finite() || l < 0.0 {
        return cfg_err(format!("ln N must be finite and nonnegative, got {l}"));
    }
    let v = l.exp().round();
    if v >= u64::MAX as f64 {
        return Err(Error::CapExceeded { what: "hull size", value: v, cap: u64::MAX as f64 });
    }
    Ok(v.max(1.0) as u64)
}
