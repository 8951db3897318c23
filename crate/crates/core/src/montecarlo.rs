//! Seeded Monte Carlo estimators with replica-level standard errors.
//!
//! Every estimator draws `n_outer` independent polytopes ("replicas") and,
//! where a content is averaged, `n_inner` query points per replica. The
//! standard error is the sample standard deviation of the replica means
//! over `√n_outer`. Replica `r` draws from substreams of `(seed, r)`, so
//! results do not depend on how replicas are scheduled across threads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::{BetaLaw, BetaPrimeLaw, Law};
use crate::error::{domain, Result};
use crate::geometry::{
    ball_in_hull_2d, contains_halfspace_poly, hull_area_2d, hull_in_ball, interval_hull_1d, support_unchecked,
    HalfspacePolytope, HullMembership, PointCloudPolytope,
};
use crate::sampler::{
    sample_beta_point_into, sample_beta_prime_point_into, sample_gaussian_into, sample_uniform_ball_into,
    sample_unit_sphere_into, RngStream,
};
use crate::stats::mean_and_std_err;

/// Directions tested per replica by the direction-sampled inclusion check.
pub const DIRECTION_SAMPLES: usize = 256;

/// Replica counts and master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct McConfig {
    pub n_outer: usize,
    pub n_inner: usize,
    pub seed: u64,
}

impl Default for McConfig {
    fn default() -> Self {
        Self { n_outer: 200, n_inner: 500, seed: 0 }
    }
}

impl McConfig {
    pub fn new(n_outer: usize, n_inner: usize, seed: u64) -> Result<Self> {
        let cfg = Self { n_outer, n_inner, seed };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_outer == 0 || self.n_inner == 0 {
            return domain(format!(
                "Monte Carlo sizes must be positive, got outer = {}, inner = {}",
                self.n_outer, self.n_inner
            ));
        }
        Ok(())
    }
}

/// Mean and standard error of a Monte Carlo quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_err: f64,
    pub n_outer: usize,
    pub n_inner: usize,
    pub seed: u64,
}

impl Estimate {
    pub fn from_replicas(values: &[f64], n_inner: usize, seed: u64) -> Self {
        let (mean, std_err) = mean_and_std_err(values);
        Self { mean, std_err, n_outer: values.len(), n_inner, seed }
    }

    /// Whether `|mean - value| ≤ k · std_err`.
    pub fn within(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.std_err
    }

    /// Whether two independent estimates agree within `k` joint standard errors.
    pub fn agrees_with(&self, other: &Estimate, k: f64) -> bool {
        (self.mean - other.mean).abs() <= k * self.std_err.hypot(other.std_err)
    }
}

/// Distribution of polytope vertices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum VertexLaw {
    Beta(BetaLaw),
    BetaPrime(BetaPrimeLaw),
    Gaussian { n: usize },
}

impl From<BetaLaw> for VertexLaw {
    fn from(l: BetaLaw) -> Self {
        VertexLaw::Beta(l)
    }
}

impl From<BetaPrimeLaw> for VertexLaw {
    fn from(l: BetaPrimeLaw) -> Self {
        VertexLaw::BetaPrime(l)
    }
}

impl From<Law> for VertexLaw {
    fn from(l: Law) -> Self {
        match l {
            Law::Beta(b) => VertexLaw::Beta(b),
            Law::BetaPrime(b) => VertexLaw::BetaPrime(b),
        }
    }
}

impl VertexLaw {
    pub fn dim(&self) -> usize {
        match self {
            VertexLaw::Beta(l) => l.dim(),
            VertexLaw::BetaPrime(l) => l.dim(),
            VertexLaw::Gaussian { n } => *n,
        }
    }

    pub fn sample_into(&self, rng: &mut RngStream, out: &mut [f64]) {
        match self {
            VertexLaw::Beta(l) => sample_beta_point_into(l, rng, out),
            VertexLaw::BetaPrime(l) => sample_beta_prime_point_into(l, rng, out),
            VertexLaw::Gaussian { .. } => sample_gaussian_into(rng, out),
        }
    }

    /// `count` independent vertices as a polytope.
    pub fn sample_cloud(&self, count: usize, rng: &mut RngStream) -> Result<PointCloudPolytope> {
        let n = self.dim();
        if n == 0 {
            return domain("vertex law dimension must be >= 1");
        }
        let mut coords = vec![0.0; count * n];
        for chunk in coords.chunks_exact_mut(n) {
            self.sample_into(rng, chunk);
        }
        PointCloudPolytope::new(n, coords)
    }
}

/// Reference measure for contents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureSpec {
    /// Standard Gaussian.
    GaussianStd,
    /// Uniform on the ball of radius `√(n+2)`, which has identity covariance.
    UniformBallIsotropic,
    /// Uniform on the unit ball: normalized volume.
    UniformBallUnit,
}

impl MeasureSpec {
    /// The snake-case name used in configs and CSV.
    pub fn name(&self) -> &'static str {
        match self {
            MeasureSpec::GaussianStd => "gaussian_std",
            MeasureSpec::UniformBallIsotropic => "uniform_ball_isotropic",
            MeasureSpec::UniformBallUnit => "uniform_ball_unit",
        }
    }

    pub fn sample_into(&self, rng: &mut RngStream, out: &mut [f64]) {
        match self {
            MeasureSpec::GaussianStd => sample_gaussian_into(rng, out),
            MeasureSpec::UniformBallIsotropic => sample_uniform_ball_into((out.len() as f64 + 2.0).sqrt(), rng, out),
            MeasureSpec::UniformBallUnit => sample_uniform_ball_into(1.0, rng, out),
        }
    }
}

/// Streams of replica `r`: vertices draw from child 0, queries from child 1.
fn replica_streams(seed: u64, stream: u64, r: usize) -> (RngStream, RngStream) {
    let base = RngStream::new(seed, stream).child(r as u64);
    (base.child(0), base.child(1))
}

/// Runs `f` on every replica (in parallel) and reduces each output column
/// to an [`Estimate`]. Output order is the replica order.
fn run_replicas<F>(cfg: &McConfig, stream: u64, n_inner: usize, columns: usize, f: F) -> Result<Vec<Estimate>>
where
    F: Fn(&mut RngStream, &mut RngStream) -> Result<Vec<f64>> + Sync,
{
    cfg.validate()?;
    let rows: Vec<Vec<f64>> = (0..cfg.n_outer)
        .into_par_iter()
        .map(|r| {
            let (mut v, mut q) = replica_streams(cfg.seed, stream, r);
            f(&mut v, &mut q)
        })
        .collect::<Result<_>>()?;
    Ok((0..columns)
        .map(|c| {
            let col: Vec<f64> = rows.iter().map(|row| row[c]).collect();
            Estimate::from_replicas(&col, n_inner, cfg.seed)
        })
        .collect())
}

fn check_counts(counts: &[usize]) -> Result<usize> {
    if counts.is_empty() || counts.contains(&0) {
        return domain("point counts must be a nonempty list of positive integers");
    }
    Ok(*counts.iter().max().expect("nonempty"))
}

/// How a replica's volume is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VolumeMethod {
    /// Fraction of uniform unit-ball queries inside the hull (any dimension).
    Membership,
    /// Exact length (n = 1) or area (n = 2).
    Exact,
}

/// Fraction of `n_inner` queries from `measure` that land in each prefix hull.
fn content_fractions(
    cloud: &PointCloudPolytope,
    counts: &[usize],
    measure: MeasureSpec,
    n_inner: usize,
    q: &mut RngStream,
) -> Result<Vec<f64>> {
    let n = cloud.dim();
    let prefixes: Vec<PointCloudPolytope> = counts.iter().map(|&k| cloud.prefix(k)).collect::<Result<_>>()?;
    let mut oracles: Vec<HullMembership> = prefixes.iter().map(HullMembership::new).collect();
    // Sort prefixes by size: once a query is in a smaller hull it is in every larger one.
    let mut order: Vec<usize> = (0..counts.len()).collect();
    order.sort_by_key(|&i| counts[i]);
    let mut hits = vec![0usize; counts.len()];
    let mut x = vec![0.0; n];
    for _ in 0..n_inner {
        measure.sample_into(q, &mut x);
        let mut inside = false;
        for &i in &order {
            if inside || oracles[i].contains(&x)? {
                inside = true;
                hits[i] += 1;
            }
        }
    }
    Ok(hits.iter().map(|&h| h as f64 / n_inner as f64).collect())
}

/// `E V_n(P_N) / κ_n` for each `N` in `counts`, on coupled replicas (each
/// smaller polytope uses a prefix of the same vertex sequence, and all share
/// the query points), so the estimates are nondecreasing in `N`.
pub fn estimate_volume_ratio_curve(
    law: &BetaLaw,
    counts: &[usize],
    method: VolumeMethod,
    cfg: &McConfig,
) -> Result<Vec<Estimate>> {
    let max_n = check_counts(counts)?;
    let n = law.dim();
    if method == VolumeMethod::Exact && n > 2 {
        return domain(format!("exact volume is available for n <= 2, got n = {n}"));
    }
    let vl = VertexLaw::Beta(*law);
    let inner = if method == VolumeMethod::Exact { 1 } else { cfg.n_inner };
    run_replicas(cfg, 0, inner, counts.len(), |v, q| {
        let cloud = vl.sample_cloud(max_n, v)?;
        match method {
            VolumeMethod::Membership => content_fractions(&cloud, counts, MeasureSpec::UniformBallUnit, cfg.n_inner, q),
            VolumeMethod::Exact => counts.iter().map(|&k| exact_volume_ratio(&cloud.prefix(k)?)).collect(),
        }
    })
}

fn exact_volume_ratio(p: &PointCloudPolytope) -> Result<f64> {
    match p.dim() {
        1 => {
            let (lo, hi) = interval_hull_1d(p)?;
            Ok((hi - lo) / 2.0)
        }
        2 => Ok(hull_area_2d(p)? / std::f64::consts::PI),
        n => domain(format!("exact volume is available for n <= 2, got n = {n}")),
    }
}

/// `E V_n(P_N) / κ_n` by hull membership of uniform unit-ball queries.
pub fn estimate_volume_ratio(law: &BetaLaw, n_points: usize, cfg: &McConfig) -> Result<Estimate> {
    Ok(estimate_volume_ratio_curve(law, &[n_points], VolumeMethod::Membership, cfg)?[0])
}

/// `E μ(P_N)` for each `N` in `counts`, coupled as in [`estimate_volume_ratio_curve`].
pub fn estimate_content_curve(
    law: &VertexLaw,
    counts: &[usize],
    measure: MeasureSpec,
    cfg: &McConfig,
) -> Result<Vec<Estimate>> {
    let max_n = check_counts(counts)?;
    run_replicas(cfg, 0, cfg.n_inner, counts.len(), |v, q| {
        let cloud = law.sample_cloud(max_n, v)?;
        content_fractions(&cloud, counts, measure, cfg.n_inner, q)
    })
}

/// `E μ(P_N)` for vertices from `law`.
pub fn estimate_measure_content(
    law: &VertexLaw,
    n_points: usize,
    measure: MeasureSpec,
    cfg: &McConfig,
) -> Result<Estimate> {
    Ok(estimate_content_curve(law, &[n_points], measure, cfg)?[0])
}

/// `P(x ∈ P_N)`: one membership indicator per replica.
pub fn estimate_point_membership(law: &VertexLaw, n_points: usize, x: &[f64], cfg: &McConfig) -> Result<Estimate> {
    check_counts(&[n_points])?;
    if x.len() != law.dim() {
        return domain(format!("point has dimension {}, law {}", x.len(), law.dim()));
    }
    if let VertexLaw::Beta(_) = law {
        if x.iter().map(|v| v * v).sum::<f64>() > 1.0 {
            return domain("membership point for the beta law must lie in the unit ball");
        }
    }
    Ok(run_replicas(cfg, 0, 1, 1, |v, _| {
        let cloud = law.sample_cloud(n_points, v)?;
        Ok(vec![HullMembership::new(&cloud).contains(x)? as u8 as f64])
    })?[0])
}

/// How ball inclusion `R B ⊆ P` is decided per replica.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InclusionMode {
    /// Exact edge-distance test; planar polytopes only.
    Exact2D,
    /// `R θ ∈ P` for [`DIRECTION_SAMPLES`] random directions: a necessary
    /// condition, so the frequency overestimates the inclusion probability.
    DirectionSampled,
}

/// An inclusion-probability estimate tagged with the mode that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InclusionEstimate {
    pub mode: InclusionMode,
    pub estimate: Estimate,
}

fn ball_included(cloud: &PointCloudPolytope, r: f64, mode: InclusionMode, q: &mut RngStream) -> Result<bool> {
    match mode {
        InclusionMode::Exact2D => match cloud.dim() {
            2 => ball_in_hull_2d(cloud, r),
            1 => {
                let (lo, hi) = interval_hull_1d(cloud)?;
                Ok(lo <= -r && hi >= r)
            }
            n => domain(format!("exact inclusion needs n <= 2, got n = {n}")),
        },
        InclusionMode::DirectionSampled => {
            let n = cloud.dim();
            let mut m = HullMembership::new(cloud);
            let mut theta = vec![0.0; n];
            for _ in 0..DIRECTION_SAMPLES {
                sample_unit_sphere_into(q, &mut theta);
                theta.iter_mut().for_each(|t| *t *= r);
                if !m.contains(&theta)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// `P(R B ⊆ P_N)`.
pub fn estimate_inclusion_prob(
    law: &VertexLaw,
    n_points: usize,
    r: f64,
    mode: InclusionMode,
    cfg: &McConfig,
) -> Result<InclusionEstimate> {
    check_counts(&[n_points])?;
    if !(r > 0.0) {
        return domain(format!("inclusion radius must be positive, got {r}"));
    }
    if mode == InclusionMode::Exact2D && law.dim() > 2 {
        return domain(format!("exact inclusion needs n <= 2, got n = {}", law.dim()));
    }
    let inner = if mode == InclusionMode::Exact2D { 1 } else { DIRECTION_SAMPLES };
    let est = run_replicas(cfg, 0, inner, 1, |v, q| {
        let cloud = law.sample_cloud(n_points, v)?;
        Ok(vec![ball_included(&cloud, r, mode, q)? as u8 as f64])
    })?[0];
    Ok(InclusionEstimate { mode, estimate: est })
}

/// `E V_1(P_N) / V_1(B)`, estimated as the mean of `h_P(θ)` over random directions.
pub fn estimate_mean_width_ratio(law: &BetaLaw, n_points: usize, cfg: &McConfig) -> Result<Estimate> {
    mean_width_on_stream(law, n_points, cfg, 0)
}

fn mean_width_on_stream(law: &BetaLaw, n_points: usize, cfg: &McConfig, stream: u64) -> Result<Estimate> {
    check_counts(&[n_points])?;
    let vl = VertexLaw::Beta(*law);
    let n = law.dim();
    Ok(run_replicas(cfg, stream, cfg.n_inner, 1, |v, q| {
        let cloud = vl.sample_cloud(n_points, v)?;
        let mut theta = vec![0.0; n];
        let mut s = 0.0;
        for _ in 0..cfg.n_inner {
            sample_unit_sphere_into(q, &mut theta);
            s += support_unchecked(&cloud, &theta);
        }
        Ok(vec![s / cfg.n_inner as f64])
    })?[0])
}

/// Mean area of the projection onto a random 2-plane, over `π`.
fn projected_area_on_stream(law: &BetaLaw, n_points: usize, cfg: &McConfig, stream: u64) -> Result<Estimate> {
    check_counts(&[n_points])?;
    let vl = VertexLaw::Beta(*law);
    let n = law.dim();
    Ok(run_replicas(cfg, stream, cfg.n_inner, 1, |v, q| {
        let cloud = vl.sample_cloud(n_points, v)?;
        let mut u = vec![0.0; n];
        let mut w = vec![0.0; n];
        let mut s = 0.0;
        for _ in 0..cfg.n_inner {
            // Orthonormal pair by Gram–Schmidt on a uniform direction and a Gaussian vector.
            sample_unit_sphere_into(q, &mut u);
            loop {
                sample_gaussian_into(q, &mut w);
                let c: f64 = u.iter().zip(&w).map(|(a, b)| a * b).sum();
                w.iter_mut().zip(&u).for_each(|(b, a)| *b -= c * a);
                let nw = w.iter().map(|b| b * b).sum::<f64>().sqrt();
                if nw > 1e-12 {
                    w.iter_mut().for_each(|b| *b /= nw);
                    break;
                }
            }
            let proj: Vec<f64> = cloud
                .points()
                .flat_map(|p| {
                    let a: f64 = p.iter().zip(&u).map(|(x, y)| x * y).sum();
                    let b: f64 = p.iter().zip(&w).map(|(x, y)| x * y).sum();
                    [a, b]
                })
                .collect();
            s += hull_area_2d(&PointCloudPolytope::new(2, proj)?)?;
        }
        Ok(vec![s / cfg.n_inner as f64 / std::f64::consts::PI])
    })?[0])
}

/// Both sides of `E V_k(P^β_{N,n}) / V_k(B^n) = E V_k(P^{β+(n-k)/2}_{N,k}) / V_k(B^k)`
/// for `k ∈ {1, 2}`, from independent streams.
///
/// The left side uses mean width (`k = 1`) or random planar projections
/// (`k = 2`); the right side uses exact length or area in dimension `k`.
pub fn estimate_intrinsic_identity(
    n: usize,
    k: usize,
    beta: f64,
    n_points: usize,
    cfg: &McConfig,
) -> Result<(Estimate, Estimate)> {
    if !(k == 1 || k == 2) || k > n {
        return domain(format!("intrinsic identity supports k in {{1, 2}} with k <= n, got k = {k}, n = {n}"));
    }
    let law = BetaLaw::new(n, beta)?;
    let lhs = if k == 1 {
        mean_width_on_stream(&law, n_points, cfg, 0)?
    } else if n == 2 {
        estimate_volume_ratio_on_stream(&law, n_points, cfg, 0)?
    } else {
        projected_area_on_stream(&law, n_points, cfg, 0)?
    };
    let low = BetaLaw::new(k, beta + (n - k) as f64 / 2.0)?;
    let rhs = estimate_volume_ratio_on_stream(&low, n_points, cfg, 1)?;
    Ok((lhs, rhs))
}

fn estimate_volume_ratio_on_stream(law: &BetaLaw, n_points: usize, cfg: &McConfig, stream: u64) -> Result<Estimate> {
    let vl = VertexLaw::Beta(*law);
    Ok(run_replicas(cfg, stream, 1, 1, |v, _| Ok(vec![exact_volume_ratio(&vl.sample_cloud(n_points, v)?)?]))?[0])
}

/// Offset of the dual polytope `{x : ⟨X_i, x⟩ ≤ a}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OffsetMode {
    /// `a = 1`, used with beta normals.
    One,
    /// `a = n`, used with beta-prime normals.
    DimN,
}

impl OffsetMode {
    pub fn value(&self, n: usize) -> f64 {
        match self {
            OffsetMode::One => 1.0,
            OffsetMode::DimN => n as f64,
        }
    }
}

/// Where dual-content queries come from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "region", rename_all = "snake_case")]
pub enum DualRegion {
    /// Uniform in `s B`.
    ScaledBall { s: f64 },
    /// Uniform in `s B \ t B`.
    Annulus { t: f64, s: f64 },
    /// Drawn from a reference measure.
    Measure { measure: MeasureSpec },
    /// A single fixed point: the replica value is the membership indicator.
    Point { x: Vec<f64> },
}

/// `E` of the normalized content of `{x : ⟨X_i, x⟩ ≤ a}` over `region`.
pub fn estimate_dual_content(
    law: &VertexLaw,
    n_points: usize,
    offset: OffsetMode,
    region: &DualRegion,
    cfg: &McConfig,
) -> Result<Estimate> {
    check_counts(&[n_points])?;
    let n = law.dim();
    let a = offset.value(n);
    match region {
        DualRegion::ScaledBall { s } if !(*s > 0.0) => return domain(format!("ball scale must be positive, got {s}")),
        DualRegion::Annulus { t, s } if !(0.0 <= *t && t < s) => {
            return domain(format!("annulus requires 0 <= t < s, got t = {t}, s = {s}"))
        }
        DualRegion::Point { x } if x.len() != n => return domain(format!("point has dimension {}, law {n}", x.len())),
        _ => {}
    }
    let inner = if let DualRegion::Point { .. } = region { 1 } else { cfg.n_inner };
    Ok(run_replicas(cfg, 0, inner, 1, |v, q| {
        let h = HalfspacePolytope::new(law.sample_cloud(n_points, v)?, a)?;
        if let DualRegion::Point { x } = region {
            return Ok(vec![contains_halfspace_poly(&h, x)? as u8 as f64]);
        }
        let mut x = vec![0.0; n];
        let mut hits = 0usize;
        for _ in 0..cfg.n_inner {
            match region {
                DualRegion::ScaledBall { s } => sample_uniform_ball_into(*s, q, &mut x),
                DualRegion::Annulus { t, s } => {
                    sample_unit_sphere_into(q, &mut x);
                    let nf = n as f64;
                    let (tn, sn) = (t.powf(nf), s.powf(nf));
                    let r = (tn + q.unit() * (sn - tn)).powf(1.0 / nf);
                    x.iter_mut().for_each(|c| *c *= r);
                }
                DualRegion::Measure { measure } => measure.sample_into(q, &mut x),
                DualRegion::Point { .. } => unreachable!("handled above"),
            }
            hits += contains_halfspace_poly(&h, &x)? as usize;
        }
        Ok(vec![hits as f64 / cfg.n_inner as f64])
    })?[0])
}

/// Per-replica quantities of the fixed-dimension experiment, on shared replicas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedDimEstimates {
    pub volume_ratio: Estimate,
    /// `P(R_inner B ⊆ P)`.
    pub inner_inclusion: Estimate,
    /// `P(P ⊆ R_outer B)`.
    pub outer_containment: Estimate,
    pub inclusion_mode: InclusionMode,
}

/// Volume ratio, inner-ball inclusion and outer-ball containment of `P_N`.
///
/// Exact in dimensions 1 and 2; otherwise membership volume and
/// direction-sampled inclusion.
pub fn estimate_fixed_dim(
    law: &BetaLaw,
    n_points: usize,
    r_inner: f64,
    r_outer: f64,
    cfg: &McConfig,
) -> Result<FixedDimEstimates> {
    check_counts(&[n_points])?;
    if !(r_inner > 0.0 && r_outer > 0.0) {
        return domain("radii must be positive");
    }
    let exact = law.dim() <= 2;
    let mode = if exact { InclusionMode::Exact2D } else { InclusionMode::DirectionSampled };
    let vl = VertexLaw::Beta(*law);
    let inner = if exact { 1 } else { cfg.n_inner };
    let est = run_replicas(cfg, 0, inner, 3, |v, q| {
        let cloud = vl.sample_cloud(n_points, v)?;
        let vol = if exact {
            exact_volume_ratio(&cloud)?
        } else {
            content_fractions(&cloud, &[n_points], MeasureSpec::UniformBallUnit, cfg.n_inner, q)?[0]
        };
        let inc = ball_included(&cloud, r_inner, mode, q)? as u8 as f64;
        let out = hull_in_ball(&cloud, r_outer) as u8 as f64;
        Ok(vec![vol, inc, out])
    })?;
    Ok(FixedDimEstimates {
        volume_ratio: est[0],
        inner_inclusion: est[1],
        outer_containment: est[2],
        inclusion_mode: mode,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(outer: usize, inner: usize, seed: u64) -> McConfig {
        McConfig::new(outer, inner, seed).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(McConfig::new(0, 5, 1).is_err());
        assert!(McConfig::new(5, 0, 1).is_err());
    }

    #[test]
    fn one_dimensional_volume() {
        let law = BetaLaw::new(1, 0.0).unwrap();
        let c = cfg(4000, 1, 3);
        let e = estimate_volume_ratio_curve(&law, &[2, 10], VolumeMethod::Exact, &c).unwrap();
        assert!(e[0].within(1.0 / 3.0, 4.0), "{:?}", e[0]);
        assert!(e[1].within(9.0 / 11.0, 4.0), "{:?}", e[1]);
        let m = estimate_volume_ratio(&law, 2, &cfg(400, 200, 4)).unwrap();
        assert!(m.within(1.0 / 3.0, 4.0), "{m:?}");
    }

    #[test]
    fn deterministic_and_coupled() {
        let law = BetaLaw::new(3, 0.5).unwrap();
        let c = cfg(20, 50, 9);
        let a = estimate_volume_ratio_curve(&law, &[5, 20, 80], VolumeMethod::Membership, &c).unwrap();
        let b = estimate_volume_ratio_curve(&law, &[5, 20, 80], VolumeMethod::Membership, &c).unwrap();
        assert_eq!(a, b);
        assert!(a[0].mean <= a[1].mean && a[1].mean <= a[2].mean);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let c3 =
            pool.install(|| estimate_volume_ratio_curve(&law, &[5, 20, 80], VolumeMethod::Membership, &c).unwrap());
        assert_eq!(a, c3);
    }

    #[test]
    fn membership_examples() {
        let law: VertexLaw = BetaLaw::new(1, 0.0).unwrap().into();
        let e = estimate_point_membership(&law, 2, &[0.5], &cfg(4000, 1, 5)).unwrap();
        assert!(e.within(0.375, 4.0), "{e:?}");
        let l3 = BetaLaw::new(3, 5.0).unwrap();
        let far = estimate_point_membership(&l3.into(), 10, &[0.99, 0.0, 0.0], &cfg(500, 1, 6)).unwrap();
        let bound = 10.0 * l3.tail(0.99).unwrap();
        assert!(far.mean <= bound + 3.0 * far.std_err);
        let center = estimate_point_membership(&l3.into(), 200, &[0.0; 3], &cfg(100, 1, 7)).unwrap();
        assert_eq!(center.mean, 1.0);
    }

    #[test]
    fn single_point_has_no_content() {
        let law: VertexLaw = BetaPrimeLaw::new(2, 3.0, 1.0).unwrap().into();
        let e = estimate_measure_content(&law, 1, MeasureSpec::GaussianStd, &cfg(20, 50, 1)).unwrap();
        assert_eq!(e.mean, 0.0);
    }

    #[test]
    fn mean_width_examples() {
        let law = BetaLaw::new(1, 0.0).unwrap();
        let e = estimate_mean_width_ratio(&law, 2, &cfg(2000, 4, 8)).unwrap();
        assert!(e.within(1.0 / 3.0, 4.0), "{e:?}");
        let l3 = BetaLaw::new(3, 0.0).unwrap();
        let z = estimate_mean_width_ratio(&l3, 1, &cfg(500, 8, 9)).unwrap();
        assert!(z.within(0.0, 4.0), "{z:?}");
    }

    #[test]
    fn intrinsic_identity_k2() {
        let (lhs, rhs) = estimate_intrinsic_identity(3, 2, 0.0, 20, &cfg(300, 20, 10)).unwrap();
        assert!(lhs.agrees_with(&rhs, 4.0), "{lhs:?} {rhs:?}");
        assert!(estimate_intrinsic_identity(3, 3, 0.0, 20, &cfg(3, 3, 1)).is_err());
    }

    #[test]
    fn dual_examples() {
        let law: VertexLaw = BetaLaw::new(1, 0.0).unwrap().into();
        let e = estimate_dual_content(&law, 2, OffsetMode::One, &DualRegion::Point { x: vec![2.0] }, &cfg(4000, 1, 11))
            .unwrap();
        assert!(e.within(0.5625, 4.0), "{e:?}");
        let inside =
            estimate_dual_content(&law, 50, OffsetMode::One, &DualRegion::ScaledBall { s: 1.0 }, &cfg(10, 10, 1))
                .unwrap();
        assert_eq!(inside.mean, 1.0);
        assert!(estimate_dual_content(
            &law,
            2,
            OffsetMode::One,
            &DualRegion::Annulus { t: 2.0, s: 1.0 },
            &cfg(1, 1, 1)
        )
        .is_err());
    }

    #[test]
    fn inclusion_modes() {
        let law: VertexLaw = BetaLaw::new(2, 0.0).unwrap().into();
        let e = estimate_inclusion_prob(&law, 3, 0.9, InclusionMode::Exact2D, &cfg(200, 1, 12)).unwrap();
        assert_eq!(e.estimate.mean, 0.0);
        let l3: VertexLaw = BetaLaw::new(3, 0.0).unwrap().into();
        assert!(estimate_inclusion_prob(&l3, 10, 0.5, InclusionMode::Exact2D, &cfg(2, 1, 1)).is_err());
        // Direction sampling can only overestimate the exact planar frequency.
        let c = cfg(100, 1, 13);
        let ex = estimate_inclusion_prob(&law, 60, 0.6, InclusionMode::Exact2D, &c).unwrap();
        let ds = estimate_inclusion_prob(&law, 60, 0.6, InclusionMode::DirectionSampled, &c).unwrap();
        assert!(ds.estimate.mean >= ex.estimate.mean);
    }
}
