use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Error, Result};

/// Tolerances for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum bisection depth of any subinterval.
    pub max_depth: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { abs_tol: 1e-12, rel_tol: 1e-10, max_depth: 48 }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_depth: u32) -> Result<Self> {
        let spec = Self { abs_tol, rel_tol, max_depth };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) || self.max_depth < 1 {
            return domain(format!("quadrature tolerances must be positive and max_depth >= 1, got {self:?}"));
        }
        Ok(())
    }
}

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // Largest error first; ties broken by position for determinism.
        self.error.total_cmp(&other.error).then_with(|| other.a.total_cmp(&self.a))
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * res_abs;
        if min_err > scaled {
            scaled = min_err;
        }
    }
    scaled
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut res_g = f_center * WG[3];
    let mut res_k = f_center * WGK[7];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let h = half.abs();
    let value = res_k * half;
    let err = rescale_error((res_k - res_g) * half, res_abs * h, res_asc * h);
    (value, err)
}

/// Upper limit of an integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Upper {
    Finite(f64),
    Infinity,
}

impl From<f64> for Upper {
    fn from(b: f64) -> Self {
        if b == f64::INFINITY {
            Upper::Infinity
        } else {
            Upper::Finite(b)
        }
    }
}

/// Adaptive Gauss-Kronrod integration of `f` over `[a, b]` or `[a, ∞)`.
///
/// The panel with the largest error estimate is bisected until the summed
/// error drops below `max(abs_tol, rel_tol · |result|)`. An infinite upper
/// limit is mapped onto `[0, 1)` through `t = a + u / (1 - u)`.
pub fn integrate<F>(f: F, a: f64, b: impl Into<Upper>, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    spec.validate()?;
    if !a.is_finite() {
        return domain("lower integration limit must be finite");
    }
    match b.into() {
        Upper::Finite(b) => {
            if !b.is_finite() {
                return domain("upper integration limit must be finite or +inf");
            }
            if a == b {
                return Ok(0.0);
            }
            if b < a {
                return integrate_finite(&f, b, a, spec).map(|v| -v);
            }
            integrate_finite(&f, a, b, spec)
        }
        Upper::Infinity => {
            let g = |u: f64| {
                let w = 1.0 - u;
                let v = f(a + u / w) / (w * w);
                if v.is_finite() {
                    v
                } else {
                    0.0
                }
            };
            integrate_finite(&g, 0.0, 1.0, spec)
        }
    }
}

/// Integrates a nonnegative, nonincreasing `f` over `[a, b]` whose mass sits
/// within roughly `scale` of `a`.
///
/// The interval is cut into chunks of geometrically growing width starting
/// at `scale`, so a narrow peak at `a` is never stepped over; chunks stop
/// once the remaining mass is bounded below round-off of the total.
pub(crate) fn integrate_decreasing<F>(f: F, a: f64, b: f64, scale: f64, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(scale > 0.0) {
        return domain(format!("chunk scale must be positive, got {scale}"));
    }
    let mut total = 0.0;
    let mut x0 = a;
    let mut width = scale;
    while x0 < b {
        let x1 = (x0 + width).min(b);
        let chunk_spec = QuadratureSpec { abs_tol: spec.abs_tol.max(1e-17 * total), ..*spec };
        total += integrate(&f, x0, x1, &chunk_spec)?;
        if x1 >= b || f(x1) * (b - x1) <= 1e-17 * total {
            break;
        }
        x0 = x1;
        width *= 4.0;
    }
    Ok(total)
}

fn integrate_finite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    // Deep bisection next to an integrable endpoint singularity can round a
    // node onto the endpoint itself; such a node carries no mass.
    let f = &|x: f64| {
        let v = f(x);
        if !v.is_finite() && (x <= a || x >= b) {
            0.0
        } else {
            v
        }
    };
    let (value, error) = gk15(f, a, b);
    if !value.is_finite() {
        return domain("integrand is not finite on the interval");
    }
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, error, depth: 0 });
    let mut total = value;
    let mut total_err = error;
    loop {
        let tol = spec.abs_tol.max(spec.rel_tol * total.abs());
        if total_err <= tol {
            // Re-sum in position order so the result does not depend on heap layout.
            let mut panels: Vec<Panel> = heap.into_vec();
            panels.sort_by(|p, q| p.a.total_cmp(&q.a));
            return Ok(panels.iter().map(|p| p.value).sum());
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        if worst.depth >= spec.max_depth {
            return Err(Error::Convergence { error: total_err, tolerance: tol });
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = gk15(f, worst.a, mid);
        let (v2, e2) = gk15(f, mid, worst.b);
        if !(v1.is_finite() && v2.is_finite()) {
            return domain("integrand is not finite on the interval");
        }
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1, depth: worst.depth + 1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2, depth: worst.depth + 1 });
        if total_err < 0.0 {
            total_err = heap.iter().map(|p| p.error).sum();
        }
    }
}
