//! Planar polygons, the subdomain/domain pair, vertex classification and the
//! sector/rectangle/cusp partition.

mod arrangement;
mod domain;
mod partition;

pub use arrangement::{complement, reflect_and_double_rings, trace_faces};
pub use domain::{
    build_domain_pair, classify_vertex, classify_vertices, ClassifiedVertex, DomainPair, EdgeKind, GeometryOptions,
    NoonOrientation, SubEdge, VertexKind, VertexSite, WEDGE_ANGLE_TOL,
};
pub use partition::{cusp_area, partition, PartitionSpec, Piece};

use std::f64::consts::TAU;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from(p: [f64; 2]) -> Self {
        Point { x: p[0], y: p[1] }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Counterclockwise rotation by a right angle.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, o: Point, s: f64) -> Point {
        self + (o - self) * s
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Counterclockwise angle from direction `a` to direction `b`, in `[0, 2π)`.
pub fn ccw_angle(a: Point, b: Point) -> f64 {
    let ang = a.cross(b).atan2(a.dot(b));
    let ang = ang.rem_euclid(TAU);
    if ang >= TAU {
        0.0
    } else {
        ang
    }
}

/// Distance from `p` to the closed segment `[a, b]`.
pub fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let s = ((p - a).dot(d) / len2).clamp(0.0, 1.0);
    p.dist(a + d * s)
}

/// Parameter of the projection of `p` onto the line through `a`, `b`.
pub fn project_param(p: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    (p - a).dot(d) / d.dot(d)
}

/// Whether the open segments `(a, b)` and `(c, d)` cross transversally, each
/// endpoint being at least `eps` away from the other segment's line.
pub fn segments_cross(a: Point, b: Point, c: Point, d: Point, eps: f64) -> bool {
    let side = |p: Point, q: Point, r: Point| {
        let len = (q - p).norm();
        if len == 0.0 {
            0.0
        } else {
            (q - p).cross(r - p) / len
        }
    };
    let (d1, d2) = (side(c, d, a), side(c, d, b));
    let (d3, d4) = (side(a, b, c), side(a, b, d));
    ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) && ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps))
}

/// Distance between the closed segments `[a, b]` and `[c, d]`.
pub fn segment_segment_distance(a: Point, b: Point, c: Point, d: Point) -> f64 {
    if segments_cross(a, b, c, d, 0.0) {
        return 0.0;
    }
    segment_distance(a, c, d)
        .min(segment_distance(b, c, d))
        .min(segment_distance(c, a, b))
        .min(segment_distance(d, a, b))
}

pub fn signed_area(pts: &[Point]) -> f64 {
    let n = pts.len();
    0.5 * (0..n).map(|i| pts[i].cross(pts[(i + 1) % n])).sum::<f64>()
}

/// Crossing-number test; points on the boundary may go either way.
pub fn point_in_ring(p: Point, ring: &[Point]) -> bool {
    let n = ring.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (ring[i], ring[j]);
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

/// A simple polygon with counterclockwise vertices, duplicate and collinear
/// vertices removed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    /// Normalizes and validates `pts`. Clockwise input is reversed.
    pub fn new(pts: &[Point], eps: f64) -> Result<Self> {
        if pts.iter().any(|p| !p.is_finite()) {
            return Err(Error::DegenerateGeometry("non-finite coordinate".into()));
        }
        let mut v: Vec<Point> = Vec::with_capacity(pts.len());
        for &p in pts {
            if v.last().is_none_or(|&q| q.dist(p) > eps) {
                v.push(p);
            }
        }
        while v.len() > 1 && v[0].dist(v[v.len() - 1]) <= eps {
            v.pop();
        }
        // Merge collinear runs; a vertex where the boundary doubles back is a spike.
        let mut changed = true;
        while changed && v.len() >= 3 {
            changed = false;
            let n = v.len();
            for i in 0..n {
                let (a, b, c) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
                if segment_distance(b, a, c) <= eps || (c - a).norm() <= eps {
                    v.remove(i);
                    changed = true;
                    break;
                }
                let off_line = (c - a).cross(b - a).abs() / (c - a).norm();
                if off_line <= eps && (b - a).dot(c - b) < 0.0 {
                    return Err(Error::NotSimple(format!("boundary doubles back at ({}, {})", b.x, b.y)));
                }
            }
        }
        if v.len() < 3 {
            return Err(Error::DegenerateGeometry("polygon needs at least three distinct vertices".into()));
        }
        let mut poly = Polygon { vertices: v };
        poly.check_simple(eps)?;
        let area = signed_area(&poly.vertices);
        if area.abs() <= eps * eps {
            return Err(Error::DegenerateGeometry("polygon has zero area".into()));
        }
        if area < 0.0 {
            poly.vertices.reverse();
        }
        Ok(poly)
    }

    fn check_simple(&self, eps: f64) -> Result<()> {
        let n = self.vertices.len();
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    continue;
                }
                let (a, b) = self.edge(i);
                let (c, d) = self.edge(j);
                if segment_segment_distance(a, b, c, d) <= eps {
                    return Err(Error::NotSimple(format!("edges {i} and {j} intersect")));
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge(&self, i: usize) -> (Point, Point) {
        (self.vertices[i], self.vertices[(i + 1) % self.vertices.len()])
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.dist(b)).sum()
    }

    /// Interior angle at vertex `i`, in `(0, 2π)`.
    pub fn interior_angle(&self, i: usize) -> f64 {
        let n = self.len();
        let p = self.vertices[i];
        ccw_angle(self.vertices[(i + 1) % n] - p, self.vertices[(i + n - 1) % n] - p)
    }

    pub fn contains(&self, p: Point) -> bool {
        point_in_ring(p, &self.vertices)
    }

    pub fn boundary_distance(&self, p: Point) -> f64 {
        self.edges().map(|(a, b)| segment_distance(p, a, b)).fold(f64::INFINITY, f64::min)
    }

    pub fn bbox(&self) -> (Point, Point) {
        bbox(self.vertices.iter().copied())
    }

    /// Axis-aligned rectangle as `(lower-left, upper-right)`, if it is one.
    pub fn as_rectangle(&self, eps: f64) -> Option<(Point, Point)> {
        if self.len() != 4 {
            return None;
        }
        let (lo, hi) = self.bbox();
        let corner = |p: Point| {
            ((p.x - lo.x).abs() <= eps || (p.x - hi.x).abs() <= eps)
                && ((p.y - lo.y).abs() <= eps || (p.y - hi.y).abs() <= eps)
        };
        if self.vertices.iter().all(|&p| corner(p)) {
            Some((lo, hi))
        } else {
            None
        }
    }

    pub fn transformed(&self, f: impl Fn(Point) -> Point) -> Vec<Point> {
        self.vertices.iter().map(|&p| f(p)).collect()
    }
}

pub fn bbox(pts: impl Iterator<Item = Point>) -> (Point, Point) {
    pts.fold(
        (Point::new(f64::INFINITY, f64::INFINITY), Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY)),
        |(lo, hi), p| (Point::new(lo.x.min(p.x), lo.y.min(p.y)), Point::new(hi.x.max(p.x), hi.y.max(p.y))),
    )
}
