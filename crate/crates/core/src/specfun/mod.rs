//! Special functions, normalising constants and the quadrature engine used
//! as the numerical reference for every tail integral.

mod gamma;
mod quadrature;

pub use gamma::{gamma_ratio_half, ln_choose, log_gamma};
pub(crate) use gamma::{ln_gamma_ratio, log_gamma_unchecked};
pub(crate) use quadrature::integrate_decreasing;
pub use quadrature::{integrate, QuadratureSpec, Upper};

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// A two-sided bound `lower ≤ upper`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub lower: f64,
    pub upper: f64,
}

impl Bounds {
    /// Panics if `lower > upper`.
    pub fn new(lower: f64, upper: f64) -> Self {
        assert!(lower <= upper, "Bounds requires lower <= upper ({lower} > {upper})");
        Self { lower, upper }
    }

    /// Strict containment `lower < value < upper`.
    pub fn contains_strict(&self, value: f64) -> bool {
        self.lower < value && value < self.upper
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }

    /// The bound widened by `margin` on both sides.
    pub fn widen(&self, margin: f64) -> Self {
        Self::new(self.lower - margin, self.upper + margin)
    }
}

/// `(1/√x, 1/√(x-1))`, the two-sided bound on `Γ(x)/Γ(x+1/2)` for `x > 1`.
pub fn wendel_bounds(x: f64) -> Result<Bounds> {
    if !(x > 1.0) {
        return domain(format!("wendel_bounds requires x > 1, got {x}"));
    }
    Ok(Bounds::new(1.0 / x.sqrt(), 1.0 / (x - 1.0).sqrt()))
}

/// `ln κ_n`, the log-volume of the unit ball in `R^n`.
pub fn ball_volume_log(n: usize) -> Result<f64> {
    if n == 0 {
        return domain("ball_volume_log requires n >= 1");
    }
    let half = n as f64 / 2.0;
    Ok(half * PI.ln() - log_gamma_unchecked(half + 1.0))
}

/// `ln c_{n,β}` with `c_{n,β} = π^{-n/2} Γ(β + n/2 + 1) / Γ(β + 1)`.
pub fn beta_norm_const_log(n: usize, beta: f64) -> Result<f64> {
    if n == 0 {
        return domain("beta_norm_const_log requires n >= 1");
    }
    if !(beta > -1.0) || !beta.is_finite() {
        return domain(format!("beta law requires beta > -1, got {beta}"));
    }
    let half = n as f64 / 2.0;
    Ok(-half * PI.ln() + ln_gamma_ratio(beta + half + 1.0, beta + 1.0))
}

/// `α_{n,β} = c_{n,β} / c_{n-1,β} = π^{-1/2} Γ(β + n/2 + 1) / Γ(β + (n+1)/2)`,
/// the normaliser of the one-dimensional marginal.
pub fn marginal_const(n: usize, beta: f64) -> Result<f64> {
    if n == 0 {
        return domain("marginal_const requires n >= 1");
    }
    if !(beta > -1.0) || !beta.is_finite() {
        return domain(format!("beta law requires beta > -1, got {beta}"));
    }
    let nf = n as f64;
    Ok((-0.5 * PI.ln() + ln_gamma_ratio(beta + nf / 2.0 + 1.0, beta + (nf + 1.0) / 2.0)).exp())
}

/// Normalising constants of the beta-prime law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaPrimeConsts {
    /// `ln c̃_{n,β,σ}` with `c̃ = σ^{-n} π^{-n/2} Γ(β) / Γ(β - n/2)`.
    pub log_density_const: f64,
    /// `α̃_{n,β,σ} = σ^{-1} π^{-1/2} Γ(β - (n-1)/2) / Γ(β - n/2)`.
    pub marginal_const: f64,
}

pub fn beta_prime_consts(n: usize, beta: f64, sigma: f64) -> Result<BetaPrimeConsts> {
    if n == 0 {
        return domain("beta_prime_consts requires n >= 1");
    }
    let nf = n as f64;
    if !(beta > nf / 2.0) || !beta.is_finite() {
        return domain(format!("beta-prime law requires beta > n/2 = {}, got {beta}", nf / 2.0));
    }
    if !(sigma > 0.0) || !sigma.is_finite() {
        return domain(format!("beta-prime law requires sigma > 0, got {sigma}"));
    }
    let log_density_const = -nf * sigma.ln() - nf / 2.0 * PI.ln() + ln_gamma_ratio(beta, beta - nf / 2.0);
    let marginal_const = (-sigma.ln() - 0.5 * PI.ln() + ln_gamma_ratio(beta - (nf - 1.0) / 2.0, beta - nf / 2.0)).exp();
    Ok(BetaPrimeConsts { log_density_const, marginal_const })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn wendel_examples() {
        let b = wendel_bounds(2.0).unwrap();
        assert!((b.lower - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((b.upper - 1.0).abs() < 1e-15);
        let b = wendel_bounds(101.0).unwrap();
        assert!((b.lower - 0.099_503_719_020_998_92).abs() < 1e-15);
        assert!((b.upper - 0.1).abs() < 1e-15);
        assert!(wendel_bounds(1.0).is_err());
    }

    #[test]
    fn wendel_contains_ratio_on_grid() {
        let mut x = 1.0 + 1e-6;
        while x <= 1e6 {
            let r = gamma_ratio_half(x).unwrap();
            assert!(wendel_bounds(x).unwrap().contains_strict(r), "x={x}");
            x *= 1.05;
        }
    }

    #[test]
    fn ball_volumes() {
        assert!((ball_volume_log(1).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!((ball_volume_log(2).unwrap() - PI.ln()).abs() < 1e-15);
        assert!((ball_volume_log(3).unwrap() - (4.0 * PI / 3.0).ln()).abs() < 1e-14);
        assert!(ball_volume_log(0).is_err());
    }

    #[test]
    fn beta_norm_examples() {
        assert!((beta_norm_const_log(2, 0.0).unwrap() + PI.ln()).abs() < 1e-14);
        assert!((beta_norm_const_log(1, 0.0).unwrap() - 0.5f64.ln()).abs() < 1e-14);
        assert!(beta_norm_const_log(3, -1.0).is_err());
    }

    // Radial oracle: c · n κ_n ∫_0^1 r^{n-1} (1 - r²)^β dr = 1.
    fn radial_mass(n: usize, beta: f64) -> f64 {
        let c = beta_norm_const_log(n, beta).unwrap().exp();
        let kappa = ball_volume_log(n).unwrap().exp();
        // r = 1 - w^2 handles (1 - r²)^β with β < 0 at r = 1.
        let m = 2.0;
        let integrand = |w: f64| {
            let wm = w.powf(m);
            let r = 1.0 - wm;
            // 1 - r² = wm (2 - wm), kept exact for small w.
            m * w.powf(m - 1.0) * r.powi(n as i32 - 1) * (wm * (2.0 - wm)).powf(beta)
        };
        c * n as f64 * kappa * integrate(integrand, 0.0, 1.0, &quad()).unwrap()
    }

    #[test]
    fn beta_density_normalises() {
        for n in [1, 2, 3, 5, 10] {
            for beta in [-0.4, 0.0, 1.0, 3.5, 20.0] {
                let m = radial_mass(n, beta);
                assert!((m - 1.0).abs() < 1e-8, "n={n} beta={beta}: {m}");
            }
        }
    }

    #[test]
    fn marginal_examples() {
        assert!((marginal_const(1, 0.0).unwrap() - 0.5).abs() < 1e-14);
        assert!((marginal_const(3, 0.0).unwrap() - 0.75).abs() < 1e-14);
        for n in [1, 2, 4, 9] {
            for beta in [-0.3, 0.0, 2.0, 10.0] {
                let k = beta + (n as f64 - 1.0) / 2.0;
                let alpha = marginal_const(n, beta).unwrap();
                // t = 1 - v², symmetric doubled.
                let mass =
                    2.0 * integrate(|v: f64| 2.0 * v * (v * v * (2.0 - v * v)).powf(k), 0.0, 1.0, &quad()).unwrap();
                assert!((alpha * mass - 1.0).abs() < 1e-8, "n={n} beta={beta}");
            }
        }
    }

    #[test]
    fn beta_prime_examples() {
        let c = beta_prime_consts(1, 1.0, 1.0).unwrap();
        assert!((c.log_density_const.exp() - 1.0 / PI).abs() < 1e-14);
        let c = beta_prime_consts(1, 1.5, 1.0).unwrap();
        assert!((c.marginal_const - 0.5).abs() < 1e-14);
        assert!(beta_prime_consts(2, 1.0, 1.0).is_err());
        assert!(beta_prime_consts(2, 3.0, 0.0).is_err());
    }

    #[test]
    fn beta_prime_normalises() {
        for (n, beta, sigma) in [(1, 1.0, 1.0), (2, 3.0, 0.5), (3, 4.0, 2.0), (5, 10.0, 3.0)] {
            let c = beta_prime_consts(n, beta, sigma).unwrap();
            let kappa = ball_volume_log(n).unwrap().exp();
            let radial = integrate(
                |r: f64| r.powi(n as i32 - 1) * (1.0 + r * r / (sigma * sigma)).powf(-beta),
                0.0,
                f64::INFINITY,
                &quad(),
            )
            .unwrap();
            let mass = c.log_density_const.exp() * n as f64 * kappa * radial;
            assert!((mass - 1.0).abs() < 1e-8, "n={n}: {mass}");
            let b = beta - (n as f64 - 1.0) / 2.0;
            let marg =
                integrate(|t: f64| (1.0 + t * t / (sigma * sigma)).powf(-b), 0.0, f64::INFINITY, &quad()).unwrap();
            assert!((2.0 * c.marginal_const * marg - 1.0).abs() < 1e-8, "n={n}");
        }
    }
}
