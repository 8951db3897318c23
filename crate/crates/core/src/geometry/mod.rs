//! Convex-hull membership, planar hull measures, support functions and
//! halfspace polytopes.

mod hull2d;
mod simplex;

pub use hull2d::{convex_hull_2d, origin_edge_distance, point_in_convex_polygon, polygon_area};
pub use simplex::TAU_LP;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use simplex::Phase1;

/// `conv{X_1, …, X_N}` stored as a flat row-major `N × dim` array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointCloudPolytope {
    dim: usize,
    coords: Vec<f64>,
}

impl PointCloudPolytope {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return domain("polytope dimension must be >= 1");
        }
        if coords.is_empty() || !coords.len().is_multiple_of(dim) {
            return domain(format!("expected a nonempty multiple of {dim} coordinates, got {}", coords.len()));
        }
        if coords.iter().any(|v| !v.is_finite()) {
            return domain("polytope coordinates must be finite");
        }
        Ok(Self { dim, coords })
    }

    pub fn from_points(points: &[Vec<f64>]) -> Result<Self> {
        let dim = points.first().map(Vec::len).unwrap_or(0);
        if points.iter().any(|p| p.len() != dim) {
            return domain("all points must share one dimension");
        }
        Self::new(dim, points.concat())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// The first `k` points, as used by coupled estimates in `N`.
    pub fn prefix(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.len() {
            return domain(format!("prefix length {k} out of 1..={}", self.len()));
        }
        Ok(Self { dim: self.dim, coords: self.coords[..k * self.dim].to_vec() })
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return domain(format!("point has dimension {}, polytope {}", x.len(), self.dim));
        }
        Ok(())
    }

    fn planar(&self) -> Result<Vec<[f64; 2]>> {
        if self.dim != 2 {
            return domain(format!("planar operation on a {}-dimensional polytope", self.dim));
        }
        Ok(self.points().map(|p| [p[0], p[1]]).collect())
    }
}

/// `{x : ⟨X_i, x⟩ ≤ offset for all i}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfspacePolytope {
    normals: PointCloudPolytope,
    offset: f64,
}

impl HalfspacePolytope {
    pub fn new(normals: PointCloudPolytope, offset: f64) -> Result<Self> {
        if !(offset > 0.0) || !offset.is_finite() {
            return domain(format!("halfspace offset must be positive, got {offset}"));
        }
        Ok(Self { normals, offset })
    }

    pub fn dim(&self) -> usize {
        self.normals.dim()
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn normals(&self) -> &PointCloudPolytope {
        &self.normals
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| u * v).sum()
}

/// `max_i ⟨X_i, θ⟩`, without checking `θ`.
pub(crate) fn support_unchecked(p: &PointCloudPolytope, theta: &[f64]) -> f64 {
    p.points().map(|q| dot(q, theta)).fold(f64::NEG_INFINITY, f64::max)
}

/// Support function `h_P(θ) = max_i ⟨X_i, θ⟩` for a unit vector `θ`.
pub fn support_function(p: &PointCloudPolytope, theta: &[f64]) -> Result<f64> {
    p.check_dim(theta)?;
    let norm = dot(theta, theta).sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return domain(format!("direction must be a unit vector, has norm {norm}"));
    }
    Ok(support_unchecked(p, theta))
}

/// Cheap separation: `true` when a hyperplane through `θ = x` or
/// `θ = x - centroid` already certifies that `x` is outside.
fn separated(p: &PointCloudPolytope, x: &[f64], centroid: &[f64]) -> bool {
    let slack = simplex::TAU_LP * (1.0 + x.iter().fold(0.0f64, |a, v| a.max(v.abs())));
    let theta: Vec<f64> = x.iter().zip(centroid).map(|(a, c)| a - c).collect();
    for dir in [x, theta.as_slice()] {
        let nd = dot(dir, dir).sqrt();
        if nd == 0.0 {
            continue;
        }
        if dot(x, dir) - support_unchecked(p, dir) > slack * nd {
            return true;
        }
    }
    false
}

/// Hull membership with reusable solver state and a precomputed centroid.
pub struct HullMembership<'a> {
    polytope: &'a PointCloudPolytope,
    centroid: Vec<f64>,
    solver: Phase1<'a>,
}

impl<'a> HullMembership<'a> {
    pub fn new(polytope: &'a PointCloudPolytope) -> Self {
        let n = polytope.dim();
        let mut centroid = vec![0.0; n];
        for q in polytope.points() {
            for k in 0..n {
                centroid[k] += q[k];
            }
        }
        let inv = 1.0 / polytope.len() as f64;
        centroid.iter_mut().for_each(|v| *v *= inv);
        Self { polytope, centroid, solver: Phase1::new(n, polytope.coords()) }
    }

    pub fn contains(&mut self, x: &[f64]) -> Result<bool> {
        self.polytope.check_dim(x)?;
        if x.iter().any(|v| !v.is_finite()) {
            return domain("query point must be finite");
        }
        if separated(self.polytope, x, &self.centroid) {
            return Ok(false);
        }
        self.solver.feasible(x)
    }
}

/// Whether `x ∈ conv{X_i}`, decided by a phase-one simplex (inclusive within [`TAU_LP`]).
pub fn contains_hull(p: &PointCloudPolytope, x: &[f64]) -> Result<bool> {
    HullMembership::new(p).contains(x)
}

/// Whether `max_i ⟨X_i, x⟩ ≤ offset`.
pub fn contains_halfspace_poly(h: &HalfspacePolytope, x: &[f64]) -> Result<bool> {
    h.normals.check_dim(x)?;
    Ok(support_unchecked(&h.normals, x) <= h.offset)
}

/// Exact area of the hull of a planar cloud (0 when collinear).
pub fn hull_area_2d(p: &PointCloudPolytope) -> Result<f64> {
    Ok(polygon_area(&convex_hull_2d(&p.planar()?)))
}

/// `(min, max)` of a one-dimensional cloud.
pub fn interval_hull_1d(p: &PointCloudPolytope) -> Result<(f64, f64)> {
    if p.dim() != 1 {
        return domain(format!("interval hull of a {}-dimensional polytope", p.dim()));
    }
    Ok(p.coords.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v))))
}

/// Whether the disk of radius `r` about the origin lies in the planar hull.
pub fn ball_in_hull_2d(p: &PointCloudPolytope, r: f64) -> Result<bool> {
    if !(r > 0.0) {
        return domain(format!("ball radius must be positive, got {r}"));
    }
    Ok(origin_edge_distance(&convex_hull_2d(&p.planar()?)) >= r)
}

/// Whether every point has norm at most `r`.
pub fn hull_in_ball(p: &PointCloudPolytope, r: f64) -> bool {
    let r2 = r * r;
    p.points().all(|q| dot(q, q) <= r2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::{sample_uniform_ball, sample_unit_sphere, RngStream};
    use proptest::prelude::*;

    fn poly(pts: &[&[f64]]) -> PointCloudPolytope {
        PointCloudPolytope::from_points(&pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn cloud(n: usize, count: usize, seed: u64) -> PointCloudPolytope {
        let mut r = RngStream::new(seed, 0);
        let pts: Vec<Vec<f64>> = (0..count).map(|_| sample_uniform_ball(n, 1.0, &mut r).unwrap()).collect();
        PointCloudPolytope::from_points(&pts).unwrap()
    }

    #[test]
    fn triangle_membership() {
        let t = poly(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]);
        assert!(contains_hull(&t, &[0.25, 0.25]).unwrap());
        assert!(!contains_hull(&t, &[1.0, 1.0]).unwrap());
        assert!(contains_hull(&t, &[0.5, 0.5]).unwrap());
        assert!(contains_hull(&t, &[0.0, 0.0]).unwrap());
        assert!(!contains_hull(&t, &[-1e-6, 0.3]).unwrap());
        assert!(contains_hull(&t, &[1.0]).is_err());
    }

    #[test]
    fn membership_agrees_with_planar_oracle() {
        let p = cloud(2, 40, 1);
        let hull = convex_hull_2d(&p.planar().unwrap());
        let mut r = RngStream::new(2, 0);
        for _ in 0..1000 {
            let x = sample_uniform_ball(2, 1.1, &mut r).unwrap();
            let exact = point_in_convex_polygon(&hull, [x[0], x[1]]);
            assert_eq!(contains_hull(&p, &x).unwrap(), exact, "{x:?}");
        }
    }

    #[test]
    fn membership_in_higher_dimension() {
        // Cross-polytope: x ∈ conv{±e_i} iff |x|_1 ≤ 1.
        let n = 6;
        let mut pts = Vec::new();
        for i in 0..n {
            for s in [1.0, -1.0] {
                let mut v = vec![0.0; n];
                v[i] = s;
                pts.push(v);
            }
        }
        let p = PointCloudPolytope::from_points(&pts).unwrap();
        let mut r = RngStream::new(3, 0);
        for _ in 0..500 {
            let x = sample_uniform_ball(n, 1.2, &mut r).unwrap();
            let l1: f64 = x.iter().map(|v| v.abs()).sum();
            if (l1 - 1.0).abs() > 1e-7 {
                assert_eq!(contains_hull(&p, &x).unwrap(), l1 <= 1.0, "{x:?}");
            }
        }
    }

    #[test]
    fn vertices_belong_to_their_hull() {
        for n in [2, 4, 8] {
            let p = cloud(n, 60, 10 + n as u64);
            let mut m = HullMembership::new(&p);
            for i in 0..p.len() {
                assert!(m.contains(p.point(i)).unwrap());
            }
        }
    }

    #[test]
    fn degenerate_inputs() {
        // Repeated points and a flat cloud in 3D.
        let p = poly(&[&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 0.0]]);
        assert!(contains_hull(&p, &[0.2, 0.2, 0.0]).unwrap());
        assert!(!contains_hull(&p, &[0.2, 0.2, 0.1]).unwrap());
        let single = poly(&[&[0.3, -0.2]]);
        assert!(contains_hull(&single, &[0.3, -0.2]).unwrap());
        assert!(!contains_hull(&single, &[0.3, -0.1]).unwrap());
    }

    #[test]
    fn halfspace_examples() {
        let h = HalfspacePolytope::new(poly(&[&[1.0, 0.0]]), 1.0).unwrap();
        assert!(contains_halfspace_poly(&h, &[0.0, 0.0]).unwrap());
        assert!(!contains_halfspace_poly(&h, &[2.0, 0.0]).unwrap());
        let h1 = HalfspacePolytope::new(poly(&[&[0.5]]), 1.0).unwrap();
        assert!(contains_halfspace_poly(&h1, &[1.9]).unwrap());
        assert!(HalfspacePolytope::new(poly(&[&[0.5]]), 0.0).is_err());
    }

    #[test]
    fn support_examples() {
        let p = poly(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert_eq!(support_function(&p, &[1.0, 0.0]).unwrap(), 1.0);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((support_function(&p, &[s, s]).unwrap() - s).abs() < 1e-15);
        assert!(support_function(&p, &[1.0, 1.0]).is_err());
        let single = poly(&[&[0.3, -0.4]]);
        assert!((support_function(&single, &[0.0, 1.0]).unwrap() + 0.4).abs() < 1e-15);
    }

    #[test]
    fn planar_examples() {
        let sq = poly(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]]);
        assert!((hull_area_2d(&sq).unwrap() - 1.0).abs() < 1e-15);
        let line = poly(&[&[0.0, 0.0], &[1.0, 1.0], &[2.0, 2.0]]);
        assert_eq!(hull_area_2d(&line).unwrap(), 0.0);
        let corners = poly(&[&[1.0, 1.0], &[-1.0, 1.0], &[-1.0, -1.0], &[1.0, -1.0]]);
        assert!(ball_in_hull_2d(&corners, 0.99).unwrap());
        assert!(!ball_in_hull_2d(&corners, 1.01).unwrap());
        let off = poly(&[&[1.0, 1.0], &[2.0, 1.0], &[1.0, 2.0]]);
        assert!(!ball_in_hull_2d(&off, 0.1).unwrap());
        let seg = poly(&[&[-0.2], &[0.7], &[0.1]]);
        assert_eq!(interval_hull_1d(&seg).unwrap(), (-0.2, 0.7));
        assert!(hull_in_ball(&poly(&[&[0.3, 0.3], &[-0.4, 0.1]]), 0.6));
        assert!(!hull_in_ball(&poly(&[&[0.9, 0.0]]), 0.8));
        assert!(!hull_in_ball(&poly(&[&[0.1, 0.0]]), 0.0));
    }

    #[test]
    fn disk_area_against_rejection_oracle() {
        let p = cloud(2, 1000, 21);
        let area = hull_area_2d(&p).unwrap();
        // Rejection oracle: hits of uniform points in [-1,1]² that fall in the hull.
        let hull = convex_hull_2d(&p.planar().unwrap());
        let mut r = RngStream::new(22, 0);
        let m = 200_000;
        let hits =
            (0..m).filter(|_| point_in_convex_polygon(&hull, [2.0 * r.unit() - 1.0, 2.0 * r.unit() - 1.0])).count();
        let q = hits as f64 / m as f64;
        let se = 4.0 * (q * (1.0 - q) / m as f64).sqrt();
        assert!((area - 4.0 * q).abs() < 4.0 * se, "{area} vs {}", 4.0 * q);
    }

    #[test]
    fn ball_inclusion_implies_membership() {
        let p = cloud(2, 200, 31);
        let d = origin_edge_distance(&convex_hull_2d(&p.planar().unwrap()));
        assert!(d > 0.5);
        let r = 0.99 * d;
        assert!(ball_in_hull_2d(&p, r).unwrap());
        let mut rng = RngStream::new(32, 0);
        for _ in 0..1000 {
            let t = sample_unit_sphere(2, &mut rng).unwrap();
            assert!(contains_hull(&p, &[r * t[0], r * t[1]]).unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn area_permutation_and_interior_invariant(seed in 0u64..1000, extra in 1usize..10) {
            let p = cloud(2, 30, seed);
            let a = hull_area_2d(&p).unwrap();
            let mut pts: Vec<Vec<f64>> = p.points().map(|q| q.to_vec()).collect();
            pts.reverse();
            let rev = PointCloudPolytope::from_points(&pts).unwrap();
            prop_assert!((hull_area_2d(&rev).unwrap() - a).abs() < 1e-12);
            // Convex combinations of the first three points are interior.
            for k in 0..extra {
                let w = (k as f64 + 1.0) / (extra as f64 + 2.0);
                let q: Vec<f64> = (0..2).map(|j| w * pts[0][j] + (1.0 - w) * 0.5 * (pts[1][j] + pts[2][j])).collect();
                pts.push(q);
            }
            let more = PointCloudPolytope::from_points(&pts).unwrap();
            prop_assert!((hull_area_2d(&more).unwrap() - a).abs() < 1e-12);
        }

        #[test]
        fn membership_monotone_and_support_dominated(seed in 0u64..1000, n in 2usize..6) {
            let p = cloud(n, 12, seed);
            let bigger = cloud(n, 24, seed);
            // `bigger` extends `p` (same stream, same first 12 points).
            prop_assert_eq!(&bigger.coords()[..p.coords().len()], p.coords());
            let mut r = RngStream::new(seed, 7);
            let theta = sample_unit_sphere(n, &mut r).unwrap();
            let h = support_function(&p, &theta).unwrap();
            for _ in 0..20 {
                let x = sample_uniform_ball(n, 0.8, &mut r).unwrap();
                let inside = contains_hull(&p, &x).unwrap();
                if inside {
                    prop_assert!(contains_hull(&bigger, &x).unwrap());
                    prop_assert!(dot(&x, &theta) <= h + 1e-9);
                }
            }
        }
    }
}
