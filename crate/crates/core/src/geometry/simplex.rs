//! Phase-one revised simplex for the hull-membership feasibility problem
//! `Σ λ_j X_j = x, Σ λ_j = 1, λ ≥ 0`.

use crate::error::{Error, Result};

/// Feasibility tolerance on the artificial residual, relative to `1 + |x|_∞`.
pub const TAU_LP: f64 = 1e-9;

const PRICE_TOL: f64 = 1e-12;
const PIVOT_TOL: f64 = 1e-11;
/// Consecutive degenerate pivots after which pricing switches to Bland's rule.
const DEGENERATE_STREAK: usize = 8;
const REFACTOR_EVERY: usize = 64;
/// Columns priced per block before an improving one is accepted.
const PRICE_BLOCK: usize = 256;

/// Dense phase-one solver over the columns `[X_j; 1]` of a flat point array.
pub(crate) struct Phase1<'a> {
    dim: usize,
    points: &'a [f64],
    /// Row signs making the right-hand side nonnegative.
    sign: Vec<f64>,
    /// Basic variable per row: `< N` structural, `N + k` artificial for row `k`.
    basis: Vec<usize>,
    /// Row-major `m × m` inverse of the basis matrix.
    binv: Vec<f64>,
    xb: Vec<f64>,
    rhs: Vec<f64>,
    y: Vec<f64>,
    col: Vec<f64>,
    dir: Vec<f64>,
    ys: Vec<f64>,
}

impl<'a> Phase1<'a> {
    pub(crate) fn new(dim: usize, points: &'a [f64]) -> Self {
        let m = dim + 1;
        Self {
            dim,
            points,
            sign: vec![1.0; m],
            basis: vec![0; m],
            binv: vec![0.0; m * m],
            xb: vec![0.0; m],
            rhs: vec![0.0; m],
            y: vec![0.0; m],
            col: vec![0.0; m],
            dir: vec![0.0; m],
            ys: vec![0.0; dim],
        }
    }

    fn n_points(&self) -> usize {
        self.points.len() / self.dim
    }

    /// `y·A_j` for structural column `j`; positive means improving.
    #[inline]
    fn score(&self, j: usize, ys: &[f64], y_last: f64) -> f64 {
        let p = &self.points[j * self.dim..(j + 1) * self.dim];
        let mut s = y_last;
        for (a, b) in ys.iter().zip(p) {
            s += a * b;
        }
        s
    }

    /// Signed column `j` (structural or artificial) into `self.col`.
    fn load_column(&mut self, j: usize) {
        let n = self.dim;
        let np = self.n_points();
        if j < np {
            let p = &self.points[j * n..(j + 1) * n];
            for ((c, s), v) in self.col.iter_mut().zip(&self.sign).zip(p) {
                *c = s * v;
            }
            self.col[n] = self.sign[n];
        } else {
            self.col.iter_mut().for_each(|v| *v = 0.0);
            self.col[j - np] = 1.0;
        }
    }

    /// Recomputes `B⁻¹` and `x_B` from the current basis by Gauss–Jordan.
    fn refactor(&mut self) -> Result<()> {
        let m = self.dim + 1;
        let mut a = vec![0.0; m * m];
        for (c, &j) in self.basis.clone().iter().enumerate() {
            self.load_column(j);
            for r in 0..m {
                a[r * m + c] = self.col[r];
            }
        }
        let mut inv = vec![0.0; m * m];
        for i in 0..m {
            inv[i * m + i] = 1.0;
        }
        for c in 0..m {
            let piv = (c..m).max_by(|&p, &q| a[p * m + c].abs().total_cmp(&a[q * m + c].abs())).expect("nonempty");
            if a[piv * m + c].abs() < 1e-14 {
                return Err(Error::Degenerate(c));
            }
            if piv != c {
                for k in 0..m {
                    a.swap(piv * m + k, c * m + k);
                    inv.swap(piv * m + k, c * m + k);
                }
            }
            let d = 1.0 / a[c * m + c];
            for k in 0..m {
                a[c * m + k] *= d;
                inv[c * m + k] *= d;
            }
            for r in 0..m {
                if r != c {
                    let f = a[r * m + c];
                    if f != 0.0 {
                        for k in 0..m {
                            a[r * m + k] -= f * a[c * m + k];
                            inv[r * m + k] -= f * inv[c * m + k];
                        }
                    }
                }
            }
        }
        self.binv = inv;
        for r in 0..m {
            self.xb[r] = (0..m).map(|k| self.binv[r * m + k] * self.rhs[k]).sum::<f64>().max(0.0);
        }
        Ok(())
    }

    /// Decides whether `x` lies in the hull of the points (within [`TAU_LP`]).
    pub(crate) fn feasible(&mut self, x: &[f64]) -> Result<bool> {
        let n = self.dim;
        let m = n + 1;
        let np = self.n_points();
        let scale = 1.0 + x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let target = TAU_LP * scale;
        for ((s, r), &v) in self.sign.iter_mut().zip(self.rhs.iter_mut()).zip(x) {
            *s = if v < 0.0 { -1.0 } else { 1.0 };
            *r = v.abs();
        }
        self.sign[n] = 1.0;
        self.rhs[n] = 1.0;
        for r in 0..m {
            self.basis[r] = np + r;
        }
        self.binv.iter_mut().for_each(|v| *v = 0.0);
        for r in 0..m {
            self.binv[r * m + r] = 1.0;
        }
        self.xb.copy_from_slice(&self.rhs);

        let cap = 1000 + 4 * (np + m);
        let mut streak = 0usize;
        let mut cursor = 0usize;
        let mut since_refactor = 0usize;
        for _ in 0..cap {
            let infeas: f64 = (0..m).filter(|&r| self.basis[r] >= np).map(|r| self.xb[r]).sum();
            if infeas <= target {
                return Ok(true);
            }
            // Simplex multipliers y = c_B B⁻¹ with unit cost on artificials.
            self.y.iter_mut().for_each(|v| *v = 0.0);
            for r in 0..m {
                if self.basis[r] >= np {
                    for k in 0..m {
                        self.y[k] += self.binv[r * m + k];
                    }
                }
            }
            // Reduced cost of structural j is -y·A_j; artificials never re-enter.
            let mut ys = std::mem::take(&mut self.ys);
            for ((o, y), s) in ys.iter_mut().zip(&self.y).zip(&self.sign) {
                *o = y * s;
            }
            let y_last = self.y[n];
            let bland = streak >= DEGENERATE_STREAK;
            let mut entering = usize::MAX;
            if bland {
                // Bland: the lowest-index improving column.
                for j in 0..np {
                    if self.score(j, &ys, y_last) > PRICE_TOL {
                        entering = j;
                        break;
                    }
                }
            } else {
                // Partial Dantzig pricing: best column of the first block (scanning
                // cyclically) that holds any improving column.
                let block = PRICE_BLOCK.max(16 * m);
                let mut scanned = 0;
                let mut best = PRICE_TOL;
                while scanned < np && entering == usize::MAX {
                    let len = block.min(np - scanned);
                    for t in 0..len {
                        let j = (cursor + t) % np;
                        let sc = self.score(j, &ys, y_last);
                        if sc > best {
                            best = sc;
                            entering = j;
                        }
                    }
                    cursor = (cursor + len) % np;
                    scanned += len;
                }
            }
            self.ys = ys;
            if entering == usize::MAX {
                return Ok(false);
            }
            self.load_column(entering);
            for r in 0..m {
                self.dir[r] = (0..m).map(|k| self.binv[r * m + k] * self.col[k]).sum();
            }
            // Ratio test; ties go to the smallest basic index.
            let mut leave = usize::MAX;
            let mut ratio = f64::INFINITY;
            for r in 0..m {
                if self.dir[r] > PIVOT_TOL {
                    let t = self.xb[r] / self.dir[r];
                    if leave == usize::MAX || t < ratio - 1e-12 {
                        leave = r;
                        ratio = t;
                    } else if t <= ratio + 1e-12 && self.basis[r] < self.basis[leave] {
                        leave = r;
                        ratio = ratio.min(t);
                    }
                }
            }
            if leave == usize::MAX {
                // Unbounded direction cannot occur for a phase-one problem.
                return Err(Error::Degenerate(entering));
            }
            streak = if ratio <= 1e-15 { streak + 1 } else { 0 };
            let piv = self.dir[leave];
            for r in 0..m {
                if r != leave {
                    self.xb[r] = (self.xb[r] - ratio * self.dir[r]).max(0.0);
                }
            }
            self.xb[leave] = ratio;
            for k in 0..m {
                self.binv[leave * m + k] /= piv;
            }
            for r in 0..m {
                if r != leave {
                    let f = self.dir[r];
                    if f != 0.0 {
                        for k in 0..m {
                            self.binv[r * m + k] -= f * self.binv[leave * m + k];
                        }
                    }
                }
            }
            self.basis[leave] = entering;
            since_refactor += 1;
            if since_refactor >= REFACTOR_EVERY {
                self.refactor()?;
                since_refactor = 0;
            }
        }
        Err(Error::Degenerate(cap))
    }
}
