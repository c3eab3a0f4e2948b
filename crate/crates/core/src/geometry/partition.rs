use serde::{Deserialize, Serialize};

use super::domain::{DomainPair, EdgeKind, VertexKind};
use super::{ccw_angle, Point};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "piece")]
pub enum Piece {
    /// `B_R(v) ∩ D̃` around the vertex with index `vertex`.
    Sector { vertex: usize, radius: f64, angle: f64, area: f64 },
    /// Strip of height `δ` along the middle part of an edge.
    Rectangle { edge: usize, width: f64, height: f64, kind: EdgeKind, area: f64 },
    /// `{0 < x₁ < R, |x| > R, 0 < x₂ < δ}` at one end of an edge, in
    /// coordinates with the vertex at the origin and the edge along `x₁`.
    Cusp { vertex: usize, edge: usize, radius: f64, delta: f64, kind: EdgeKind, area: f64 },
    /// Everything else; only its area is needed.
    Core { area: f64 },
}

impl Piece {
    pub fn area(&self) -> f64 {
        match self {
            Piece::Sector { area, .. }
            | Piece::Rectangle { area, .. }
            | Piece::Cusp { area, .. }
            | Piece::Core { area } => *area,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionSpec {
    pub r: f64,
    pub delta: f64,
    pub r1: f64,
    /// `+∞` when the subdomain has no interior vertices.
    pub r2: f64,
    pub delta1: f64,
    /// `+∞` when no vertex has a gap bordering the domain.
    pub delta2: f64,
    pub pieces: Vec<Piece>,
}

/// `∫₀^δ (R − √(R² − s²)) ds`.
pub fn cusp_area(r: f64, delta: f64) -> Result<f64> {
    if !(r > 0.0 && delta > 0.0 && delta <= r) {
        return Err(Error::InvalidDims(format!("cusp needs 0 < δ ≤ R, got R = {r}, δ = {delta}")));
    }
    let u = delta / r;
    if u < 1e-2 {
        // Taylor series of the closed form; avoids cancelling O(1) terms.
        let u2 = u * u;
        let u3 = u2 * u;
        return Ok(r * r * u3 * (1.0 / 6.0 + u2 * (1.0 / 40.0 + u2 * (1.0 / 112.0 + u2 * 5.0 / 1152.0))));
    }
    Ok(r * delta - 0.5 * delta * (r * r - delta * delta).max(0.0).sqrt() - 0.5 * r * r * u.min(1.0).asin())
}

pub fn partition(pair: &DomainPair) -> Result<PartitionSpec> {
    let mut all: Vec<Point> = pair.points.clone();
    for &p in pair.outer.vertices() {
        if all.iter().all(|q| q.dist(p) > pair.eps) {
            all.push(p);
        }
    }
    let mut min_pair = f64::INFINITY;
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            min_pair = min_pair.min(all[i].dist(all[j]));
        }
    }
    let r1 = 0.5 * min_pair;
    let r2 = pair
        .vertices
        .iter()
        .filter(|v| matches!(v.kind, VertexKind::Open { .. } | VertexKind::OpenMulti { .. }))
        .map(|v| 0.5 * pair.outer.boundary_distance(v.location))
        .fold(f64::INFINITY, f64::min);
    let r = r1.min(r2);
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::DegenerateGeometry(format!("partition radius R = {r}")));
    }

    let min_sin = |angles: &mut dyn Iterator<Item = f64>| angles.map(|k| (0.5 * k).sin()).fold(f64::INFINITY, f64::min);
    let delta1 = r * min_sin(&mut pair.sites.iter().flat_map(|s| s.wedges.iter().map(|w| w.1 - w.0)));
    let delta2 = r * min_sin(&mut pair.sites.iter().flat_map(|s| s.gaps.iter().copied()));
    let delta = delta1.min(delta2);
    if !(delta > 0.0) {
        return Err(Error::DegenerateGeometry(format!("partition height δ = {delta}")));
    }

    let mut pieces = Vec::new();
    for v in &pair.vertices {
        let angle = v.subdomain_angle;
        pieces.push(Piece::Sector { vertex: v.index, radius: r, angle, area: 0.5 * angle * r * r });
    }
    let cusp = cusp_area(r, delta)?;
    for (i, e) in pair.edges.iter().enumerate() {
        let width = (e.length - 2.0 * r).max(0.0);
        pieces.push(Piece::Rectangle { edge: i, width, height: delta, kind: e.kind, area: width * delta });
        for vertex in [e.start, e.end] {
            pieces.push(Piece::Cusp { vertex, edge: i, radius: r, delta, kind: e.kind, area: cusp });
        }
    }
    let used: f64 = pieces.iter().map(Piece::area).sum();
    let core = pair.area() - used;
    if core < -1e-9 * pair.area() {
        return Err(Error::DegenerateGeometry(format!("partition pieces exceed the area by {}", -core)));
    }
    pieces.push(Piece::Core { area: core.max(0.0) });
    Ok(PartitionSpec { r, delta, r1, r2, delta1, delta2, pieces })
}

impl PartitionSpec {
    /// Indices of the pieces containing `p` (a point of the subdomain).
    pub fn locate(&self, pair: &DomainPair, p: Point) -> Vec<usize> {
        let mut hits = Vec::new();
        let frame = |edge: usize, from: usize| {
            let e = &pair.edges[edge];
            let (a, b) = pair.edge_points(e);
            let u = (b - a) * (1.0 / e.length);
            let n = u.perp();
            let x2 = (p - a).dot(n);
            let x1 = if from == e.start { (p - a).dot(u) } else { (b - p).dot(u) };
            (x1, x2, e.length)
        };
        for (i, piece) in self.pieces.iter().enumerate() {
            let inside = match *piece {
                Piece::Sector { vertex, radius, .. } => {
                    let site = &pair.sites[vertex];
                    let d = p - site.location;
                    d.norm() < radius && {
                        let ang = ccw_angle(site.start_dir, d);
                        site.wedges.iter().any(|w| {
                            let rel = (ang - w.0).rem_euclid(std::f64::consts::TAU);
                            rel < w.1 - w.0
                        })
                    }
                }
                Piece::Rectangle { edge, height, .. } => {
                    let (x1, x2, len) = frame(edge, pair.edges[edge].start);
                    x1 > self.r && x1 < len - self.r && x2 > 0.0 && x2 < height
                }
                Piece::Cusp { vertex, edge, radius, delta, .. } => {
                    let (x1, x2, _) = frame(edge, vertex);
                    x1 > 0.0 && x1 < radius && x2 > 0.0 && x2 < delta && p.dist(pair.points[vertex]) > radius
                }
                Piece::Core { .. } => false,
            };
            if inside {
                hits.push(i);
            }
        }
        if hits.is_empty() && pair.contains(p) {
            hits.push(self.pieces.len() - 1);
        }
        hits
    }
}
