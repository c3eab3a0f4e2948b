//! Face tracing on small planar edge sets: the complement of a subdomain and
//! the union of a subdomain with its mirror image.

use std::f64::consts::TAU;

use super::domain::{DomainPair, EdgeKind};
use super::{ccw_angle, project_param, segment_distance, signed_area, Point};
use crate::error::{Error, Result};

/// Traces the faces of a set of directed edges that bound regions on their
/// left. Pairs of opposite edges cancel first. At each vertex the walk
/// continues along the first outgoing edge clockwise from the way it came
/// in, which keeps components that touch at a point separate.
pub fn trace_faces(half_edges: &[(Point, Point)], eps: f64) -> Vec<Vec<Point>> {
    let mut pts: Vec<Point> = Vec::new();
    let id = |p: Point, pts: &mut Vec<Point>| {
        pts.iter().position(|q| q.dist(p) <= eps).unwrap_or_else(|| {
            pts.push(p);
            pts.len() - 1
        })
    };
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in half_edges {
        let (u, v) = (id(a, &mut pts), id(b, &mut pts));
        if u == v {
            continue;
        }
        if let Some(k) = edges.iter().position(|&e| e == (v, u)) {
            edges.swap_remove(k);
        } else {
            edges.push((u, v));
        }
    }
    let mut used = vec![false; edges.len()];
    let mut faces = Vec::new();
    for first in 0..edges.len() {
        if used[first] {
            continue;
        }
        let mut face = Vec::new();
        let mut cur = first;
        loop {
            used[cur] = true;
            let (u, v) = edges[cur];
            face.push(pts[u]);
            let back = pts[u] - pts[v];
            let next = (0..edges.len())
                .filter(|&k| edges[k].0 == v)
                .min_by(|&a, &b| {
                    let turn = |k: usize| {
                        let t = ccw_angle(pts[edges[k].1] - pts[v], back);
                        if t == 0.0 {
                            TAU
                        } else {
                            t
                        }
                    };
                    turn(a).total_cmp(&turn(b))
                });
            match next {
                Some(k) if k == first => break,
                Some(k) if !used[k] => cur = k,
                _ => break,
            }
        }
        faces.push(face);
    }
    faces
}

/// Components of `D ∖ closure(D̃)`, each counterclockwise.
pub fn complement(pair: &DomainPair) -> Result<Vec<Vec<Point>>> {
    let eps = pair.eps;
    let mut half_edges = Vec::new();
    let neumann: Vec<(Point, Point)> =
        pair.edges.iter().filter(|e| e.kind == EdgeKind::Neumann).map(|e| pair.edge_points(e)).collect();
    for (c, d) in pair.outer.edges() {
        let mut cuts: Vec<(f64, Point)> = pair
            .points
            .iter()
            .filter(|&&q| q.dist(c) > eps && q.dist(d) > eps && segment_distance(q, c, d) <= eps)
            .map(|&q| (project_param(q, c, d), q))
            .collect();
        cuts.sort_by(|x, y| x.0.total_cmp(&y.0));
        let chain: Vec<Point> = std::iter::once(c).chain(cuts.into_iter().map(|x| x.1)).chain(std::iter::once(d)).collect();
        for w in chain.windows(2) {
            let covered = neumann
                .iter()
                .any(|&(a, b)| (a.dist(w[0]) <= eps && b.dist(w[1]) <= eps) || (a.dist(w[1]) <= eps && b.dist(w[0]) <= eps));
            if !covered {
                half_edges.push((w[0], w[1]));
            }
        }
    }
    for e in pair.edges.iter().filter(|e| e.kind == EdgeKind::Open) {
        let (a, b) = pair.edge_points(e);
        half_edges.push((b, a));
    }
    if half_edges.is_empty() {
        return Err(Error::ComplementNotPolygonal("the subdomain fills the domain".into()));
    }
    let faces = trace_faces(&half_edges, eps);
    for f in &faces {
        if f.len() < 3 || signed_area(f) <= 0.0 {
            return Err(Error::ComplementNotPolygonal("complement has a hole or a degenerate face".into()));
        }
    }
    Ok(faces)
}

/// Reflects the rectangle `D` and the subdomain across the line through the
/// domain edge `edge_index`, returning the doubled rectangle and the
/// components of the union of the subdomain with its image.
pub fn reflect_and_double_rings(pair: &DomainPair, edge_index: usize) -> Result<(Vec<Point>, Vec<Vec<Point>>)> {
    let eps = pair.eps;
    let (lo, hi) = pair.outer.as_rectangle(eps).ok_or(Error::NotRectangle)?;
    if edge_index >= pair.outer.len() {
        return Err(Error::Config(format!("domain has {} edges, got edge index {edge_index}", pair.outer.len())));
    }
    let (c, d) = pair.outer.edge(edge_index);
    let vertical = (c.x - d.x).abs() <= eps;
    let line = if vertical { c.x } else { c.y };
    let mirror = |p: Point| if vertical { Point::new(2.0 * line - p.x, p.y) } else { Point::new(p.x, 2.0 * line - p.y) };

    let (mlo, mhi) = (mirror(lo), mirror(hi));
    let nlo = Point::new(lo.x.min(mlo.x).min(mhi.x), lo.y.min(mlo.y).min(mhi.y));
    let nhi = Point::new(hi.x.max(mlo.x).max(mhi.x), hi.y.max(mlo.y).max(mhi.y));
    let outer = vec![nlo, Point::new(nhi.x, nlo.y), nhi, Point::new(nlo.x, nhi.y)];

    let mut half_edges = Vec::new();
    for ring in pair.ring_points() {
        let n = ring.len();
        for i in 0..n {
            let (a, b) = (ring[i], ring[(i + 1) % n]);
            half_edges.push((a, b));
            half_edges.push((mirror(b), mirror(a)));
        }
    }
    let faces = trace_faces(&half_edges, eps);
    for f in &faces {
        if f.len() < 3 || signed_area(f) <= 0.0 {
            return Err(Error::DegenerateGeometry("doubled subdomain is not a union of simple polygons".into()));
        }
    }
    Ok((outer, faces))
}
