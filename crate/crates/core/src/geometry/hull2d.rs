//! Exact planar hulls: monotone chain, shoelace area, edge-distance tests.

/// Counter-clockwise hull vertices of planar points, collinear points dropped.
pub fn convex_hull_2d(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts: Vec<[f64; 2]> = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], *p) <= 0.0 {
                hull.pop();
            }
            hull.push(*p);
        }
        hull.pop();
    }
    hull
}

/// `(b - a) × (c - a)`; positive when `a, b, c` turn counter-clockwise.
pub(crate) fn cross(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Shoelace area of a counter-clockwise polygon.
pub fn polygon_area(poly: &[[f64; 2]]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        s += a[0] * b[1] - a[1] * b[0];
    }
    0.5 * s.abs()
}

/// Whether `x` lies in the closed counter-clockwise convex polygon `hull`.
pub fn point_in_convex_polygon(hull: &[[f64; 2]], x: [f64; 2]) -> bool {
    match hull.len() {
        0 => false,
        1 => hull[0] == x,
        2 => {
            let (a, b) = (hull[0], hull[1]);
            cross(a, b, x).abs() <= 1e-12 * (1.0 + norm(a) + norm(b))
                && (x[0] - a[0]) * (x[0] - b[0]) <= 0.0
                && (x[1] - a[1]) * (x[1] - b[1]) <= 0.0
        }
        k => (0..k).all(|i| cross(hull[i], hull[(i + 1) % k], x) >= 0.0),
    }
}

fn norm(a: [f64; 2]) -> f64 {
    a[0].hypot(a[1])
}

/// Smallest distance from the origin to an edge line of a counter-clockwise
/// hull, negative if the origin lies outside; `-inf` for degenerate hulls.
pub fn origin_edge_distance(hull: &[[f64; 2]]) -> f64 {
    let k = hull.len();
    if k < 3 {
        return f64::NEG_INFINITY;
    }
    (0..k)
        .map(|i| {
            let a = hull[i];
            let b = hull[(i + 1) % k];
            cross(a, b, [0.0, 0.0]) / ((b[0] - a[0]).hypot(b[1] - a[1]))
        })
        .fold(f64::INFINITY, f64::min)
}
