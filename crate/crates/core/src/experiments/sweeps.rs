//! Sweep runners. Each grid point is validated before any sampling starts;
//! rows carry deterministic seeds derived from their coordinates.

use crate::dist::{
    classify_beta_prime_theorem, critical_log_count, dual_annulus_bounds, dual_point_prob, exp_bounds,
    inclusion_prob_lower_bound, product_criterion, volume_lower_envelope, volume_upper_envelope, BetaLaw, BetaPrimeLaw,
    Law, Side, ThresholdModel,
};
use crate::error::{Error, Result};
use crate::montecarlo::{
    estimate_content_curve, estimate_dual_content, estimate_fixed_dim, estimate_volume_ratio_curve, DualRegion,
    McConfig, MeasureSpec, OffsetMode, VertexLaw, VolumeMethod,
};
use crate::sampler::splitmix64;

use super::config::{Caps, SweepConfig, SweepModel};
use super::row::SweepRow;

/// Largest dimension accepted by the beta-hull sweep (LP membership cost).
pub const BETA_SWEEP_MAX_DIM: usize = 10;
/// `β − n/2 → ∞` for the beta-prime dual is read as `β − n/2 ≥` this.
pub const DUAL_BETA_PRIME_MIN_EXCESS: f64 = 10.0;

/// Seed of one grid point: a hash of its coordinates and the master seed.
pub fn row_seed(master: u64, coords: &[u64]) -> u64 {
    coords.iter().fold(splitmix64(master), |h, &c| splitmix64(h ^ c))
}

fn seeded(mc: &McConfig, coords: &[u64]) -> McConfig {
    McConfig { seed: row_seed(mc.seed, coords), ..*mc }
}

/// Radii for the volume envelopes.
pub fn envelope_grid() -> Vec<f64> {
    (1..1000).map(|i| i as f64 / 1000.0).collect()
}

fn critical_pair(model: &ThresholdModel, eps: f64) -> (Option<f64>, Option<f64>) {
    (critical_log_count(model, eps, Side::Below).ok(), critical_log_count(model, eps, Side::Above).ok())
}

fn to_usize(counts: &[u64]) -> Vec<usize> {
    counts.iter().map(|&c| c as usize).collect()
}

/// A validated unit of work.
enum Job {
    FixedDim { law: BetaLaw, delta: f64, n_points: u64, r_inner: f64, r_outer: f64 },
    BetaHull { law: BetaLaw, counts: Vec<u64> },
    BetaPrimeHull { law: BetaPrimeLaw, regime: String, counts: Vec<u64>, measures: Vec<MeasureSpec> },
    DualBeta { law: BetaLaw, counts: Vec<u64>, radii: Vec<f64> },
    DualBetaPrime { law: BetaPrimeLaw, counts: Vec<u64>, measures: Vec<MeasureSpec> },
}

fn fixed_dim_jobs(n: usize, delta: f64, betas: &[f64], r_inner: f64, r_outer: f64, caps: &Caps) -> Result<Vec<Job>> {
    if !(delta > 1.0) {
        return Err(Error::Config(format!("fixed-dimension sweep requires δ > 1, got {delta}")));
    }
    let critical = ((delta - 1.0) / delta).sqrt();
    if !(0.0 < r_inner && r_inner < critical && critical < r_outer && r_outer < 1.0) {
        return Err(Error::Config(format!(
            "R_inner < √((δ−1)/δ) < R_outer < 1 required: R_inner = {r_inner}, √((δ−1)/δ) = {critical}, R_outer = {r_outer}"
        )));
    }
    if betas.is_empty() {
        return Err(Error::Config("fixed-dimension sweep needs at least one β".into()));
    }
    betas
        .iter()
        .map(|&beta| {
            let law = BetaLaw::new(n, beta)?;
            let count = delta.powf(beta).ceil();
            if !(count <= caps.max_points as f64) {
                return Err(Error::CapExceeded { what: "hull size", value: count, cap: caps.max_points as f64 });
            }
            Ok(Job::FixedDim { law, delta, n_points: count.max(1.0) as u64, r_inner, r_outer })
        })
        .collect()
}

fn plan_jobs(cfg: &SweepConfig) -> Result<Vec<Job>> {
    let g = &cfg.grid;
    let mut jobs = Vec::new();
    match cfg.model {
        SweepModel::FixedDim => {
            let (Some(ri), Some(ro)) = (g.r_inner, g.r_outer) else {
                return Err(Error::Config("fixed_dim needs grid.r_inner and grid.r_outer".into()));
            };
            if g.delta.is_empty() {
                return Err(Error::Config("fixed_dim needs grid.delta".into()));
            }
            for &n in &g.n {
                for &delta in &g.delta {
                    jobs.extend(fixed_dim_jobs(n, delta, &cfg.betas_for(n)?, ri, ro, &cfg.caps)?);
                }
            }
        }
        SweepModel::BetaHull => {
            for &n in &g.n {
                if n > BETA_SWEEP_MAX_DIM {
                    return Err(Error::Config(format!(
                        "beta_hull sweeps need n <= {BETA_SWEEP_MAX_DIM} for LP tractability, got {n}"
                    )));
                }
                let counts = cfg.counts_for(n)?;
                for beta in cfg.betas_for(n)? {
                    jobs.push(Job::BetaHull { law: BetaLaw::new(n, beta)?, counts: counts.clone() });
                }
            }
        }
        SweepModel::BetaPrimeHull => {
            let measures = if g.measure.is_empty() {
                vec![MeasureSpec::GaussianStd, MeasureSpec::UniformBallIsotropic]
            } else {
                g.measure.clone()
            };
            for &n in &g.n {
                let counts = cfg.counts_for(n)?;
                for beta in cfg.betas_for(n)? {
                    for sigma in cfg.sigmas_for(beta)? {
                        let law = BetaPrimeLaw::new(n, beta, sigma)?;
                        let regime = classify_beta_prime_theorem(n, beta, sigma)?;
                        if let Some(expected) = g.regime {
                            if expected != regime {
                                return Err(Error::RegimeViolation(format!(
                                    "grid point n = {n}, β = {beta}, σ = {sigma} is in regime {regime:?}, \
                                     config expects {expected:?}"
                                )));
                            }
                        }
                        jobs.push(Job::BetaPrimeHull {
                            law,
                            regime: format!("{regime:?}").to_lowercase(),
                            counts: counts.clone(),
                            measures: measures.clone(),
                        });
                    }
                }
            }
        }
        SweepModel::DualBeta => {
            if g.r.is_empty() && g.annulus.is_empty() && g.x_norm.is_empty() {
                return Err(Error::Config("dual_beta needs grid.R, grid.annulus or grid.x_norm".into()));
            }
            for &r in &g.r {
                if !(r > 0.0 && r < 1.0) {
                    return Err(Error::Config(format!("R ∈ (0, 1) required, got {r}")));
                }
            }
            check_annuli(&g.annulus)?;
            for &n in &g.n {
                let counts = cfg.counts_for(n)?;
                for beta in cfg.betas_for(n)? {
                    jobs.push(Job::DualBeta {
                        law: BetaLaw::new(n, beta)?,
                        counts: counts.clone(),
                        radii: g.r.clone(),
                    });
                }
            }
        }
        SweepModel::DualBetaPrime => {
            if g.sigma_sq_two_beta || g.sigma.iter().any(|&s| s != 1.0) {
                return Err(Error::Config("dual_beta_prime uses σ = 1 normals".into()));
            }
            check_annuli(&g.annulus)?;
            let measures = if g.measure.is_empty() { vec![MeasureSpec::GaussianStd] } else { g.measure.clone() };
            for &n in &g.n {
                let counts = cfg.counts_for(n)?;
                for beta in cfg.betas_for(n)? {
                    let law = BetaPrimeLaw::new(n, beta, 1.0)?;
                    let excess = beta - n as f64 / 2.0;
                    if excess < DUAL_BETA_PRIME_MIN_EXCESS {
                        return Err(Error::RegimeViolation(format!(
                            "β − n/2 → ∞ required (proxy β − n/2 ≥ {DUAL_BETA_PRIME_MIN_EXCESS}): \
                             n = {n}, β = {beta}, β − n/2 = {excess}"
                        )));
                    }
                    jobs.push(Job::DualBetaPrime { law, counts: counts.clone(), measures: measures.clone() });
                }
            }
        }
    }
    Ok(jobs)
}

fn check_annuli(annuli: &[[f64; 2]]) -> Result<()> {
    for &[t, s] in annuli {
        if !(0.0 <= t && t < s) {
            return Err(Error::Config(format!("annulus requires 0 <= t < s, got [{t}, {s}]")));
        }
    }
    Ok(())
}

/// Validates every grid point of `cfg` without sampling.
pub(crate) fn plan(cfg: &SweepConfig) -> Result<()> {
    plan_jobs(cfg).map(|_| ())
}

fn model_tag(m: SweepModel) -> u64 {
    m as u64 + 1
}

/// P(‖X‖ ≤ R) for the beta law: `‖X‖²` is Beta(n/2, β+1).
fn beta_radius_cdf(law: &BetaLaw, r: f64) -> f64 {
    if r >= 1.0 {
        return 1.0;
    }
    statrs::function::beta::beta_reg(law.dim() as f64 / 2.0, law.beta() + 1.0, r * r)
}

fn run_job(job: &Job, cfg: &SweepConfig, rows: &mut Vec<SweepRow>) -> Result<()> {
    let model = cfg.model.as_str();
    let tag = model_tag(cfg.model);
    let eps_list = cfg.eps_values();
    match job {
        Job::FixedDim { law, delta, n_points, r_inner, r_outer } => {
            let (n, beta) = (law.dim(), law.beta());
            let mc = seeded(&cfg.mc, &[tag, n as u64, beta.to_bits(), delta.to_bits()]);
            let est = estimate_fixed_dim(law, *n_points as usize, *r_inner, *r_outer, &mc)?;
            let mode = format!("{:?}", est.inclusion_mode).to_lowercase();
            let crit = critical_log_count(&ThresholdModel::FixedDim { delta: *delta, beta }, 0.0, Side::Below)?;

            let mut vol = SweepRow::new(model, "volume_ratio", n, beta, *n_points, &est.volume_ratio);
            vol.delta = Some(*delta);
            vol.reference = Some(((delta - 1.0) / delta).powf(n as f64 / 2.0));
            vol.reference_kind = Some("fixed_dim_limit".into());
            vol.ln_n_crit_below = Some(crit);
            vol.mode = Some(mode.clone());

            let mut inc = SweepRow::new(model, "inner_inclusion", n, beta, *n_points, &est.inner_inclusion);
            inc.delta = Some(*delta);
            inc.r = Some(*r_inner);
            inc.mode = Some(mode);
            if *n_points > n as u64 {
                let lb = inclusion_prob_lower_bound(&Law::Beta(*law), *n_points, *r_inner)?;
                inc.set_bounds("inclusion_lower", Some(lb), None);
            }

            let mut out = SweepRow::new(model, "outer_containment", n, beta, *n_points, &est.outer_containment);
            out.delta = Some(*delta);
            out.r = Some(*r_outer);
            out.reference = Some((*n_points as f64 * beta_radius_cdf(law, *r_outer).ln()).exp());
            out.reference_kind = Some("closed_form".into());
            rows.extend([vol, inc, out]);
        }
        Job::BetaHull { law, counts } => {
            let (n, beta) = (law.dim(), law.beta());
            let mc = seeded(&cfg.mc, &[tag, n as u64, beta.to_bits()]);
            let ests = estimate_volume_ratio_curve(law, &to_usize(counts), VolumeMethod::Membership, &mc)?;
            let grid = envelope_grid();
            let as_law = Law::Beta(*law);
            for (&count, est) in counts.iter().zip(&ests) {
                let ln_n = (count as f64).ln();
                let (up, up_r) = volume_upper_envelope(law, ln_n, &grid)?;
                let (lo, lo_r) = volume_lower_envelope(law, count, &grid)?;
                for &eps in &eps_list {
                    let mut row = SweepRow::new(model, "volume_ratio", n, beta, count, est);
                    row.eps = Some(eps);
                    row.mode = Some("membership".into());
                    let d = product_criterion(&as_law, ln_n, eps)?;
                    row.n_tail_r = Some(d.n_tail_r);
                    row.n_tail_s_minus_n_ln_n = Some(d.n_tail_s_minus_n_ln_n);
                    let (b, a) = critical_pair(&ThresholdModel::Beta { n, beta }, eps);
                    row.set_critical(b, a);
                    row.set_bounds("hull_volume_sandwich", Some(lo), Some(up));
                    row.bound_lower_arg = Some(lo_r);
                    row.bound_upper_arg = Some(up_r);
                    rows.push(row);
                }
            }
        }
        Job::BetaPrimeHull { law, regime, counts, measures } => {
            let (n, beta, sigma) = (law.dim(), law.beta(), law.sigma());
            let vl = VertexLaw::BetaPrime(*law);
            let as_law = Law::BetaPrime(*law);
            for &m in measures {
                let mc = seeded(&cfg.mc, &[tag, n as u64, beta.to_bits(), sigma.to_bits(), m as u64]);
                let ests = estimate_content_curve(&vl, &to_usize(counts), m, &mc)?;
                for (&count, est) in counts.iter().zip(&ests) {
                    let ln_n = (count as f64).ln();
                    for &eps in &eps_list {
                        let mut row = SweepRow::new(model, "content", n, beta, count, est);
                        row.sigma = Some(sigma);
                        row.eps = Some(eps);
                        row.measure = Some(m.name().into());
                        row.regime = Some(regime.clone());
                        let d = product_criterion(&as_law, ln_n, eps)?;
                        row.n_tail_r = Some(d.n_tail_r);
                        row.n_tail_s_minus_n_ln_n = Some(d.n_tail_s_minus_n_ln_n);
                        let (b, a) = critical_pair(&ThresholdModel::BetaPrime { n, beta, sigma }, eps);
                        row.set_critical(b, a);
                        rows.push(row);
                    }
                }
            }
        }
        Job::DualBeta { law, counts, radii } => {
            let (n, beta) = (law.dim(), law.beta());
            let vl = VertexLaw::Beta(*law);
            let as_law = Law::Beta(*law);
            for &count in counts {
                for &r in radii {
                    let mc = seeded(&cfg.mc, &[tag, n as u64, beta.to_bits(), count, 1, r.to_bits()]);
                    let region = DualRegion::ScaledBall { s: 1.0 / r };
                    let est = estimate_dual_content(&vl, count as usize, OffsetMode::One, &region, &mc)?;
                    let sandwich = dual_annulus_bounds(&as_law, count, 0.0, 1.0 / r, 1.0)?;
                    let f = as_law.tail(r)?;
                    let exp_b = exp_bounds(count as f64, f).ok();
                    for &eps in &eps_list {
                        let mut row = SweepRow::new(model, "ball_content", n, beta, count, &est);
                        row.eps = Some(eps);
                        row.r = Some(r);
                        let (b, a) = critical_pair(&ThresholdModel::DualBeta { n, beta, r }, eps);
                        row.set_critical(b, a);
                        row.set_bounds("annulus_sandwich", Some(sandwich.lower), Some(sandwich.upper));
                        row.exp_bound_lower = exp_b.map(|e| e.lower);
                        row.exp_bound_upper = exp_b.map(|e| e.upper);
                        rows.push(row);
                    }
                }
                dual_extras(cfg, &vl, OffsetMode::One, count, &[tag, n as u64, beta.to_bits()], rows)?;
            }
        }
        Job::DualBetaPrime { law, counts, measures } => {
            let (n, beta) = (law.dim(), law.beta());
            let vl = VertexLaw::BetaPrime(*law);
            for &count in counts {
                for &m in measures {
                    let mc = seeded(&cfg.mc, &[tag, n as u64, beta.to_bits(), count, 1, m as u64]);
                    let region = DualRegion::Measure { measure: m };
                    let est = estimate_dual_content(&vl, count as usize, OffsetMode::DimN, &region, &mc)?;
                    for &eps in &eps_list {
                        let mut row = SweepRow::new(model, "measure_content", n, beta, count, &est);
                        row.sigma = Some(1.0);
                        row.eps = Some(eps);
                        row.measure = Some(m.name().into());
                        let (b, a) = critical_pair(&ThresholdModel::DualBetaPrime { n, beta }, eps);
                        row.set_critical(b, a);
                        rows.push(row);
                    }
                }
                dual_extras(cfg, &vl, OffsetMode::DimN, count, &[tag, n as u64, beta.to_bits()], rows)?;
            }
        }
    }
    Ok(())
}

/// Annulus and single-point rows shared by both dual models.
fn dual_extras(
    cfg: &SweepConfig,
    vl: &VertexLaw,
    offset: OffsetMode,
    count: u64,
    coords: &[u64],
    rows: &mut Vec<SweepRow>,
) -> Result<()> {
    let (law, sigma): (Law, Option<f64>) = match vl {
        VertexLaw::Beta(l) => ((*l).into(), None),
        VertexLaw::BetaPrime(l) => ((*l).into(), Some(l.sigma())),
        VertexLaw::Gaussian { .. } => unreachable!("dual sweeps use beta or beta-prime normals"),
    };
    let (n, beta) = (law.dim(), law.beta());
    let a = offset.value(n);
    let model = cfg.model.as_str();
    for &[t, s] in &cfg.grid.annulus {
        let mut c = coords.to_vec();
        c.extend([count, 2, t.to_bits(), s.to_bits()]);
        let est =
            estimate_dual_content(vl, count as usize, offset, &DualRegion::Annulus { t, s }, &seeded(&cfg.mc, &c))?;
        let b = dual_annulus_bounds(&law, count, t, s, a)?;
        let mut row = SweepRow::new(model, "annulus_content", n, beta, count, &est);
        row.sigma = sigma;
        row.t = Some(t);
        row.s = Some(s);
        row.set_bounds("annulus_sandwich", Some(b.lower), Some(b.upper));
        rows.push(row);
    }
    for &x_norm in &cfg.grid.x_norm {
        let mut c = coords.to_vec();
        c.extend([count, 3, x_norm.to_bits()]);
        let mut x = vec![0.0; n];
        x[0] = x_norm;
        let est = estimate_dual_content(vl, count as usize, offset, &DualRegion::Point { x }, &seeded(&cfg.mc, &c))?;
        let mut row = SweepRow::new(model, "point_membership", n, beta, count, &est);
        row.sigma = sigma;
        row.x_norm = Some(x_norm);
        row.reference = Some(dual_point_prob(&law, count, x_norm, a)?);
        row.reference_kind = Some("closed_form".into());
        rows.push(row);
    }
    Ok(())
}

/// Runs any sweep; rows come out in grid order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for job in plan_jobs(cfg)? {
        run_job(&job, cfg, &mut rows)?;
    }
    Ok(rows)
}

fn expect_model(cfg: &SweepConfig, allowed: &[SweepModel]) -> Result<()> {
    if allowed.contains(&cfg.model) {
        Ok(())
    } else {
        Err(Error::Config(format!("this runner does not handle model {}", cfg.model.as_str())))
    }
}

/// Volume ratio, inner inclusion and outer containment for `N = ⌈δ^β⌉`.
pub fn run_fixed_dim_threshold(
    n: usize,
    delta: f64,
    betas: &[f64],
    r_inner: f64,
    r_outer: f64,
    mc: &McConfig,
    caps: &Caps,
) -> Result<Vec<SweepRow>> {
    mc.validate()?;
    let cfg =
        SweepConfig { model: SweepModel::FixedDim, output_path: None, mc: *mc, grid: Default::default(), caps: *caps };
    let mut rows = Vec::new();
    for job in fixed_dim_jobs(n, delta, betas, r_inner, r_outer, caps)? {
        run_job(&job, &cfg, &mut rows)?;
    }
    Ok(rows)
}

/// Beta-hull volume ratios with the hull-volume sandwich on every row.
pub fn run_beta_threshold_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    expect_model(cfg, &[SweepModel::BetaHull])?;
    run_sweep(cfg)
}

/// Beta-prime contents, each grid point tagged with its theorem regime.
pub fn run_beta_prime_regimes(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    expect_model(cfg, &[SweepModel::BetaPrimeHull])?;
    run_sweep(cfg)
}

/// Dual (halfspace-intersection) contents with the annulus sandwich.
pub fn run_dual_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    expect_model(cfg, &[SweepModel::DualBeta, SweepModel::DualBetaPrime])?;
    run_sweep(cfg)
}

/// The default grid of the beta-hull threshold sweep.
pub fn default_beta_threshold_config() -> SweepConfig {
    SweepConfig::from_toml_str(DEFAULT_BETA_THRESHOLD_TOML).expect("built-in config parses")
}

/// Same text as `configs/beta_threshold.toml`.
pub const DEFAULT_BETA_THRESHOLD_TOML: &str = r#"model = "beta_hull"
output_path = "beta_threshold.csv"

[mc]
n_outer = 200
n_inner = 500
seed = 20240601

[grid]
n = [2, 4, 6, 8]
beta = [0.0, 1.0]
N = [16, 64, 256, 1024, 4096]
eps = [0.3]
"#;

#[cfg(test)]
mod tests {
    use super::*;

    fn small_mc() -> McConfig {
        McConfig::new(20, 50, 3).unwrap()
    }

    #[test]
    fn fixed_dim_preconditions() {
        let caps = Caps::default();
        assert!(run_fixed_dim_threshold(2, 2.0, &[3.0], 0.75, 0.8, &small_mc(), &caps).is_err());
        assert!(run_fixed_dim_threshold(2, 2.0, &[3.0], 0.6, 1.0, &small_mc(), &caps).is_err());
        let e = run_fixed_dim_threshold(2, 2.0, &[18.0], 0.6, 0.8, &small_mc(), &caps).unwrap_err();
        assert!(matches!(e, Error::CapExceeded { .. }));
    }

    #[test]
    fn fixed_dim_rows() {
        let rows = run_fixed_dim_threshold(2, 2.0, &[4.0, 6.0], 0.6, 0.8, &small_mc(), &Caps::default()).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0].n_points, 16);
        assert_eq!(rows[3].n_points, 64);
        assert!(rows[3].mean > rows[0].mean);
        assert_eq!(rows[0].reference, Some(0.5));
        assert!(rows.iter().all(|r| !r.violation));
    }

    #[test]
    fn default_config_validates() {
        let cfg = default_beta_threshold_config();
        assert!(cfg.validate().unwrap().is_empty());
        assert_eq!(cfg.counts_for(2).unwrap(), vec![16, 64, 256, 1024, 4096]);
    }

    #[test]
    fn beta_sweep_rows_and_reproducibility() {
        let mut cfg = default_beta_threshold_config();
        cfg.grid.n = vec![3];
        cfg.grid.beta = vec![0.0];
        cfg.grid.n_points = vec![10, 40];
        cfg.mc = small_mc();
        let a = run_beta_threshold_sweep(&cfg).unwrap();
        assert_eq!(a.len(), 2);
        assert!(a[0].mean <= a[1].mean);
        assert!(a.iter().all(|r| !r.violation && r.bound_upper.unwrap() >= r.bound_lower.unwrap()));
        assert_eq!(a, run_beta_threshold_sweep(&cfg).unwrap());
        assert!(run_dual_sweep(&cfg).is_err());
    }

    #[test]
    fn beta_prime_regime_mismatch_is_rejected() {
        let text = r#"
model = "beta_prime_hull"
[grid]
n = [8]
beta_excess_log = [50.0]
sigma = [1000.0]
three_n_log_n = true
regime = "b"
"#;
        let cfg = SweepConfig::from_toml_str(text).unwrap();
        match cfg.validate() {
            Err(Error::RegimeViolation(msg)) => assert!(msg.contains("expects B"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let too_small = text.replace("50.0", "1.0").replace("regime = \"b\"\n", "");
        match SweepConfig::from_toml_str(&too_small).unwrap().validate() {
            Err(Error::RegimeViolation(msg)) => assert!(msg.contains("β − n/2 ≫ log n"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dual_beta_prime_needs_excess() {
        let text = r#"
model = "dual_beta_prime"
[grid]
n = [4]
beta = [8.0]
N = [10]
"#;
        let e = SweepConfig::from_toml_str(text).unwrap().validate().unwrap_err();
        assert!(matches!(e, Error::RegimeViolation(_)));
    }

    #[test]
    fn dual_rows_have_bounds() {
        let text = r#"
model = "dual_beta"
[mc]
n_outer = 30
n_inner = 40
seed = 1
[grid]
n = [3]
beta = [0.0]
N = [5]
R = [0.5]
annulus = [[0.5, 1.5]]
x_norm = [1.2]
"#;
        let cfg = SweepConfig::from_toml_str(text).unwrap();
        let rows = run_dual_sweep(&cfg).unwrap();
        let kinds: Vec<&str> = rows.iter().map(|r| r.quantity.as_str()).collect();
        assert_eq!(kinds, ["ball_content", "annulus_content", "point_membership"]);
        assert!(rows[0].bound_lower.unwrap() <= rows[0].bound_upper.unwrap());
        assert!(rows[2].reference.unwrap() > 0.0);
    }

    #[test]
    fn seeds_depend_on_coordinates() {
        assert_ne!(row_seed(1, &[1, 2]), row_seed(1, &[2, 1]));
        assert_ne!(row_seed(1, &[1]), row_seed(2, &[1]));
    }
}
