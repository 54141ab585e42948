//! Convex hulls of lattice points with exact integer orientation tests.

use serde::Serialize;

use crate::turtle::LatticePoint;
use crate::{Error, Result};

/// Strictly extreme hull vertices in counterclockwise order.
///
/// A hull of collinear points holds its two endpoints; a hull of coincident
/// points holds the single point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ConvexHull {
    vertices: Vec<LatticePoint>,
}

/// Twice the signed area of `o, a, b`; positive for a left turn.
pub fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i128 {
    let (ax, ay) = (a.x as i128 - o.x as i128, a.y as i128 - o.y as i128);
    let (bx, by) = (b.x as i128 - o.x as i128, b.y as i128 - o.y as i128);
    ax * by - ay * bx
}

impl ConvexHull {
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// Exact inside-or-on-boundary test.
    pub fn contains(&self, p: LatticePoint) -> bool {
        match self.vertices.as_slice() {
            [] => false,
            [a] => *a == p,
            [a, b] => {
                cross(*a, *b, p) == 0
                    && p.x >= a.x.min(b.x)
                    && p.x <= a.x.max(b.x)
                    && p.y >= a.y.min(b.y)
                    && p.y <= a.y.max(b.y)
            }
            vs => (0..vs.len()).all(|i| cross(vs[i], vs[(i + 1) % vs.len()], p) >= 0),
        }
    }
}

/// Andrew's monotone chain. Collinear boundary points are dropped.
pub fn convex_hull(points: &[LatticePoint]) -> Result<ConvexHull> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return Ok(ConvexHull { vertices: pts });
    }

    let mut hull: Vec<LatticePoint> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    Ok(ConvexHull { vertices: hull })
}

fn dist(a: LatticePoint, b: LatticePoint) -> f64 {
    ((a.x - b.x) as f64).hypot((a.y - b.y) as f64)
}

fn dist2(a: LatticePoint, b: LatticePoint) -> i128 {
    let dx = (a.x - b.x) as i128;
    let dy = (a.y - b.y) as i128;
    dx * dx + dy * dy
}

/// Euclidean boundary length. A segment hull counts its length twice, the
/// measure of lines meeting a segment; a point hull has perimeter 0.
pub fn perimeter(hull: &ConvexHull) -> f64 {
    let vs = hull.vertices();
    match vs.len() {
        0 | 1 => 0.0,
        2 => 2.0 * dist(vs[0], vs[1]),
        n => (0..n).map(|i| dist(vs[i], vs[(i + 1) % n])).sum(),
    }
}

/// Largest distance between two hull vertices, by rotating calipers.
pub fn diameter(hull: &ConvexHull) -> f64 {
    let vs = hull.vertices();
    let n = vs.len();
    match n {
        0 | 1 => return 0.0,
        2 => return dist(vs[0], vs[1]),
        _ => {}
    }
    let mut best = 0i128;
    let mut j = 1;
    for i in 0..n {
        let ni = (i + 1) % n;
        // Advance the antipodal pointer while it moves away from edge i.
        while cross(vs[i], vs[ni], vs[(j + 1) % n]) > cross(vs[i], vs[ni], vs[j]) {
            j = (j + 1) % n;
        }
        best = best.max(dist2(vs[i], vs[j])).max(dist2(vs[ni], vs[j]));
    }
    (best as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<LatticePoint> {
        v.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn unit_square() {
        let h = convex_hull(&pts(&[(0, 0), (1, 0), (1, 1), (0, 1)])).unwrap();
        assert_eq!(h.vertices().len(), 4);
        assert_eq!(perimeter(&h), 4.0);
        assert!((diameter(&h) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn collinear_and_coincident() {
        let h = convex_hull(&pts(&[(0, 0), (1, 0), (2, 0)])).unwrap();
        assert_eq!(h.vertices(), pts(&[(0, 0), (2, 0)]));
        assert_eq!(perimeter(&h), 4.0);
        assert_eq!(diameter(&h), 2.0);

        let h = convex_hull(&pts(&[(3, 4), (3, 4)])).unwrap();
        assert_eq!(h.vertices(), pts(&[(3, 4)]));
        assert_eq!(perimeter(&h), 0.0);

        let h = convex_hull(&pts(&[(0, 0), (3, 4)])).unwrap();
        assert_eq!(diameter(&h), 5.0);
    }

    #[test]
    fn empty_is_rejected() {
        assert_eq!(convex_hull(&[]), Err(Error::EmptyPointSet));
    }

    #[test]
    fn collinear_boundary_points_are_dropped() {
        let h = convex_hull(&pts(&[(0, 0), (1, 0), (2, 0), (2, 2), (0, 2), (1, 1)])).unwrap();
        assert_eq!(h.vertices(), pts(&[(0, 0), (2, 0), (2, 2), (0, 2)]));
        assert!(h.contains(LatticePoint::new(1, 0)));
        assert!(h.contains(LatticePoint::new(1, 1)));
        assert!(!h.contains(LatticePoint::new(3, 1)));
    }
}
