//! Seeded random streams and exact samplers for both laws.
//!
//! Points are drawn by radial decomposition: a uniform direction times a
//! radius whose square (or scaled square) is a ratio of Gamma variates.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dist::{BetaLaw, BetaPrimeLaw};
use crate::error::{domain, Result};

/// A reproducible random stream keyed by `(seed, stream_id)`.
///
/// Backed by ChaCha8, whose 64-bit stream selector gives independent
/// substreams without jumping.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

pub(crate) fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self { seed, stream_id, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// A derived stream, fully determined by `(seed, stream_id, index)` and
    /// independent of how much of `self` has been consumed.
    pub fn child(&self, index: u64) -> RngStream {
        RngStream::new(splitmix64(self.seed ^ splitmix64(self.stream_id)), index)
    }

    /// Uniform on `(0, 1]`, safe to take the logarithm of.
    pub fn open_unit(&mut self) -> f64 {
        1.0 - self.rng.random::<f64>()
    }

    pub fn unit(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// `ln G` for `G ~ Gamma(shape, 1)`, by Marsaglia–Tsang squeeze/rejection.
///
/// Shapes below 1 are boosted: `G(a) = G(a + 1) · U^{1/a}`, which in log
/// space never underflows however small `a` is.
pub fn sample_ln_gamma(shape: f64, rng: &mut RngStream) -> Result<f64> {
    if !(shape > 0.0) || !shape.is_finite() {
        return domain(format!("gamma shape must be positive and finite, got {shape}"));
    }
    if shape < 1.0 {
        let boosted = ln_gamma_mt(shape + 1.0, rng);
        return Ok(boosted + rng.open_unit().ln() / shape);
    }
    Ok(ln_gamma_mt(shape, rng))
}

fn ln_gamma_mt(shape: f64, rng: &mut RngStream) -> f64 {
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x = rng.normal();
        let t = 1.0 + c * x;
        if t <= 0.0 {
            continue;
        }
        let v = t * t * t;
        let u = rng.open_unit();
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 {
            return d.ln() + v.ln();
        }
        if u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d.ln() + v.ln();
        }
    }
}

pub fn sample_gamma(shape: f64, rng: &mut RngStream) -> Result<f64> {
    Ok(sample_ln_gamma(shape, rng)?.exp())
}

/// `Beta(a, b)` as `X / (X + Y)` with independent Gamma variates.
pub fn sample_beta_scalar(a: f64, b: f64, rng: &mut RngStream) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return domain(format!("beta parameters must be positive, got ({a}, {b})"));
    }
    let lx = sample_ln_gamma(a, rng)?;
    let ly = sample_ln_gamma(b, rng)?;
    Ok(logistic(lx - ly))
}

/// `1 / (1 + e^{-z})`
fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Fills `out` with a uniform point on the unit sphere `S^{n-1}`.
pub fn sample_unit_sphere_into(rng: &mut RngStream, out: &mut [f64]) {
    if out.len() == 1 {
        out[0] = if rng.next_u32() & 1 == 0 { 1.0 } else { -1.0 };
        return;
    }
    loop {
        let mut s = 0.0;
        for v in out.iter_mut() {
            *v = rng.normal();
            s += *v * *v;
        }
        if s > 0.0 {
            let inv = 1.0 / s.sqrt();
            out.iter_mut().for_each(|v| *v *= inv);
            return;
        }
    }
}

pub fn sample_unit_sphere(n: usize, rng: &mut RngStream) -> Result<Vec<f64>> {
    if n == 0 {
        return domain("sphere dimension must be >= 1");
    }
    let mut x = vec![0.0; n];
    sample_unit_sphere_into(rng, &mut x);
    Ok(x)
}

fn scale_in_place(x: &mut [f64], r: f64) {
    x.iter_mut().for_each(|v| *v *= r);
}

/// Fills `out` (length `n`) with a draw from the beta law:
/// `R² ~ Beta(n/2, β + 1)` times a uniform direction.
pub fn sample_beta_point_into(law: &BetaLaw, rng: &mut RngStream, out: &mut [f64]) {
    debug_assert_eq!(out.len(), law.dim());
    sample_unit_sphere_into(rng, out);
    let lx = sample_ln_gamma(law.dim() as f64 / 2.0, rng).expect("positive shape");
    let ly = sample_ln_gamma(law.beta() + 1.0, rng).expect("positive shape");
    scale_in_place(out, logistic(lx - ly).sqrt());
}

pub fn sample_beta_point(law: &BetaLaw, rng: &mut RngStream) -> Vec<f64> {
    let mut x = vec![0.0; law.dim()];
    sample_beta_point_into(law, rng, &mut x);
    x
}

/// Fills `out` with a draw from the beta-prime law:
/// `(R/σ)² = X / Y`, `X ~ Gamma(n/2)`, `Y ~ Gamma(β - n/2)`.
pub fn sample_beta_prime_point_into(law: &BetaPrimeLaw, rng: &mut RngStream, out: &mut [f64]) {
    debug_assert_eq!(out.len(), law.dim());
    sample_unit_sphere_into(rng, out);
    let n = law.dim() as f64;
    let lx = sample_ln_gamma(n / 2.0, rng).expect("positive shape");
    let ly = sample_ln_gamma(law.beta() - n / 2.0, rng).expect("positive shape");
    scale_in_place(out, law.sigma() * (0.5 * (lx - ly)).exp());
}

pub fn sample_beta_prime_point(law: &BetaPrimeLaw, rng: &mut RngStream) -> Vec<f64> {
    let mut x = vec![0.0; law.dim()];
    sample_beta_prime_point_into(law, rng, &mut x);
    x
}

/// Uniform point in the ball of the given radius.
pub fn sample_uniform_ball_into(radius: f64, rng: &mut RngStream, out: &mut [f64]) {
    sample_unit_sphere_into(rng, out);
    // R ~ U^{1/n}, the β = 0 radial law.
    let r = (rng.open_unit().ln() / out.len() as f64).exp();
    scale_in_place(out, radius * r);
}

pub fn sample_uniform_ball(n: usize, radius: f64, rng: &mut RngStream) -> Result<Vec<f64>> {
    if n == 0 {
        return domain("ball dimension must be >= 1");
    }
    if !(radius >= 0.0) {
        return domain(format!("ball radius must be nonnegative, got {radius}"));
    }
    let mut x = vec![0.0; n];
    sample_uniform_ball_into(radius, rng, &mut x);
    Ok(x)
}

pub fn sample_gaussian_into(rng: &mut RngStream, out: &mut [f64]) {
    out.iter_mut().for_each(|v| *v = rng.normal());
}

pub fn sample_gaussian_point(n: usize, rng: &mut RngStream) -> Result<Vec<f64>> {
    if n == 0 {
        return domain("gaussian dimension must be >= 1");
    }
    let mut x = vec![0.0; n];
    sample_gaussian_into(rng, &mut x);
    Ok(x)
}
