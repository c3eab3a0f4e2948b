use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::{ccw_angle, project_param, segment_distance, segments_cross, Point, Polygon};
use crate::error::{Error, Result};

/// Angular tolerance for snapping wedge boundaries onto the domain boundary.
pub const WEDGE_ANGLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GeometryOptions {
    /// Length tolerance; `None` means `1e-9 ×` the bounding-box diagonal of `D`.
    pub eps: Option<f64>,
    /// Accept boundary vertices outside the four basic types, and interior
    /// vertices where three or more wedges of the subdomain meet.
    pub allow_generalized: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeKind {
    Open,
    Neumann,
}

/// An edge of the subdomain after splitting at every vertex of `Ṽ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubEdge {
    /// Indices into [`DomainPair::points`].
    pub start: usize,
    pub end: usize,
    pub ring: usize,
    pub kind: EdgeKind,
    pub length: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NoonOrientation {
    /// The middle angle `γ` lies in the subdomain.
    MiddleInterior,
    /// The flanking angles `β`, `α` lie in the subdomain.
    FlanksInterior,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum VertexKind {
    Open { gamma: f64 },
    /// Interior point where several wedges of the subdomain touch;
    /// `wedges` are `(start, end)` directions measured from the first start.
    OpenMulti { wedges: Vec<(f64, f64)> },
    #[serde(rename = "NON")]
    Non { gamma: f64, beta: f64 },
    #[serde(rename = "NOON")]
    Noon { gamma: f64, beta: f64, alpha: f64, orientation: NoonOrientation },
    #[serde(rename = "NN")]
    Nn { gamma: f64 },
    Generalized { sigma: f64, wedges: Vec<(f64, f64)> },
}

impl VertexKind {
    pub fn name(&self) -> &'static str {
        match self {
            VertexKind::Open { .. } => "Open",
            VertexKind::OpenMulti { .. } => "OpenMulti",
            VertexKind::Non { .. } => "NON",
            VertexKind::Noon { .. } => "NOON",
            VertexKind::Nn { .. } => "NN",
            VertexKind::Generalized { .. } => "Generalized",
        }
    }

    /// Angle parameters in the order used by the coefficient functions.
    pub fn angles(&self) -> Vec<f64> {
        match self {
            VertexKind::Open { gamma } | VertexKind::Nn { gamma } => vec![*gamma],
            VertexKind::Non { gamma, beta } => vec![*gamma, *beta],
            VertexKind::Noon { gamma, beta, alpha, .. } => vec![*gamma, *beta, *alpha],
            VertexKind::OpenMulti { wedges } => wedges.iter().flat_map(|w| [w.0, w.1]).collect(),
            VertexKind::Generalized { sigma, wedges } => {
                std::iter::once(*sigma).chain(wedges.iter().flat_map(|w| [w.0, w.1])).collect()
            }
        }
    }
}

/// Local picture at a vertex of `Ṽ`: the sector of `D` around it and the
/// wedges of the subdomain inside that sector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexSite {
    pub location: Point,
    /// `None` for points inside `D`; otherwise the interior angle of `D` at
    /// the point (π on the relative interior of an edge).
    pub sigma: Option<f64>,
    /// Direction from which wedge angles are measured counterclockwise.
    pub start_dir: Point,
    /// Sorted, disjoint `(λ, ρ)` pairs.
    pub wedges: Vec<(f64, f64)>,
    /// Directions of the gaps between wedges that border `D` (not part of
    /// the subdomain) - used for the partition height.
    pub gaps: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifiedVertex {
    /// Index into [`DomainPair::points`].
    pub index: usize,
    pub location: Point,
    pub kind: VertexKind,
    pub open_edges: usize,
    pub neumann_edges: usize,
    /// Total angle of the subdomain at this vertex.
    pub subdomain_angle: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainPair {
    pub outer: Polygon,
    /// Connected components of the subdomain; they may touch at points.
    pub inner: Vec<Polygon>,
    pub eps: f64,
    /// The vertex set `Ṽ`.
    pub points: Vec<Point>,
    /// Each component as a cycle of indices into `points`.
    pub rings: Vec<Vec<usize>>,
    pub edges: Vec<SubEdge>,
    pub sites: Vec<VertexSite>,
    pub vertices: Vec<ClassifiedVertex>,
    pub allow_generalized: bool,
}

impl DomainPair {
    pub fn area(&self) -> f64 {
        self.inner.iter().map(Polygon::area).sum()
    }

    pub fn open_length(&self) -> f64 {
        self.edges.iter().filter(|e| e.kind == EdgeKind::Open).map(|e| e.length).sum()
    }

    pub fn perimeter(&self) -> f64 {
        self.inner.iter().map(Polygon::perimeter).sum()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.inner.iter().any(|r| r.contains(p))
    }

    pub fn edge_points(&self, e: &SubEdge) -> (Point, Point) {
        (self.points[e.start], self.points[e.end])
    }

    /// The subdomain's components as coordinate rings (split points included).
    pub fn ring_points(&self) -> Vec<Vec<Point>> {
        self.rings.iter().map(|r| r.iter().map(|&i| self.points[i]).collect()).collect()
    }
}

fn default_eps(outer: &[Point]) -> f64 {
    let (lo, hi) = super::bbox(outer.iter().copied());
    1e-9 * (hi - lo).norm()
}

/// Builds and classifies the pair `(D, D̃)`; `inner` lists the components of
/// `D̃`, each a simple polygon.
pub fn build_domain_pair(outer: &[Point], inner: &[Vec<Point>], opts: &GeometryOptions) -> Result<DomainPair> {
    let eps = match opts.eps {
        Some(e) if e > 0.0 && e.is_finite() => e,
        Some(e) => return Err(Error::Config(format!("eps must be positive, got {e}"))),
        None => default_eps(outer),
    };
    if !(eps > 0.0) {
        return Err(Error::DegenerateGeometry("domain has zero extent".into()));
    }
    if inner.is_empty() {
        return Err(Error::DegenerateGeometry("subdomain has no components".into()));
    }
    let outer = Polygon::new(outer, eps)?;
    let inner: Vec<Polygon> = inner.iter().map(|r| Polygon::new(r, eps)).collect::<Result<_>>()?;
    check_components(&inner, eps)?;

    for ring in &inner {
        for &p in ring.vertices() {
            if !outer.contains(p) && outer.boundary_distance(p) > eps {
                return Err(Error::NotContained(format!("vertex ({}, {}) lies outside the domain", p.x, p.y)));
            }
        }
    }

    // Ṽ: subdomain vertices plus domain vertices on the subdomain boundary.
    let mut points: Vec<Point> = Vec::new();
    let add_point = |p: Point, points: &mut Vec<Point>| -> usize {
        if let Some(i) = points.iter().position(|q| q.dist(p) <= eps) {
            i
        } else {
            points.push(p);
            points.len() - 1
        }
    };
    for ring in &inner {
        for &p in ring.vertices() {
            add_point(p, &mut points);
        }
    }
    for &p in outer.vertices() {
        let on_inner = inner.iter().any(|r| r.boundary_distance(p) <= eps);
        if on_inner {
            add_point(p, &mut points);
        }
    }

    // Split every component edge at the points of Ṽ in its interior.
    let mut rings: Vec<Vec<usize>> = Vec::with_capacity(inner.len());
    for ring in &inner {
        let mut cycle = Vec::new();
        for (a, b) in ring.edges() {
            let ia = points.iter().position(|q| q.dist(a) <= eps).expect("ring vertex registered");
            cycle.push(ia);
            let mut on_edge: Vec<(f64, usize)> = points
                .iter()
                .enumerate()
                .filter(|&(_, &q)| q.dist(a) > eps && q.dist(b) > eps && segment_distance(q, a, b) <= eps)
                .map(|(i, &q)| (project_param(q, a, b), i))
                .collect();
            on_edge.sort_by(|x, y| x.0.total_cmp(&y.0));
            cycle.extend(on_edge.into_iter().map(|x| x.1));
        }
        rings.push(cycle);
    }
    for cycle in &rings {
        let mut seen = cycle.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotSimple("a component passes through the same point twice".into()));
        }
    }

    let mut edges = Vec::new();
    for (r, cycle) in rings.iter().enumerate() {
        for i in 0..cycle.len() {
            let (s, e) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            let kind = classify_edge(&outer, points[s], points[e], eps)?;
            edges.push(SubEdge { start: s, end: e, ring: r, kind, length: points[s].dist(points[e]) });
        }
    }

    let sites: Vec<VertexSite> =
        (0..points.len()).map(|v| vertex_site(&outer, &points, &rings, v, eps)).collect::<Result<_>>()?;

    let mut pair = DomainPair {
        outer,
        inner,
        eps,
        points,
        rings,
        edges,
        sites,
        vertices: Vec::new(),
        allow_generalized: opts.allow_generalized,
    };
    pair.vertices = classify_vertices(&pair, opts.allow_generalized)?;
    Ok(pair)
}

/// Components may touch at isolated points but must not overlap or share an edge.
fn check_components(inner: &[Polygon], eps: f64) -> Result<()> {
    for i in 0..inner.len() {
        for j in 0..inner.len() {
            if i == j {
                continue;
            }
            let (a, b) = (&inner[i], &inner[j]);
            if j > i {
                for (p, q) in a.edges() {
                    for (r, s) in b.edges() {
                        if segments_cross(p, q, r, s, eps) {
                            return Err(Error::NotSimple(format!("components {i} and {j} overlap")));
                        }
                        let d = q - p;
                        let collinear = segment_distance(r, p, q) <= eps && segment_distance(s, p, q) <= eps
                            || segment_distance(p, r, s) <= eps && segment_distance(q, r, s) <= eps;
                        let overlap_len = {
                            let (t0, t1) = (project_param(r, p, q), project_param(s, p, q));
                            (t0.max(t1).min(1.0) - t0.min(t1).max(0.0)) * d.norm()
                        };
                        if collinear && overlap_len > eps {
                            return Err(Error::NotSimple(format!("components {i} and {j} share an edge")));
                        }
                    }
                }
            }
            let probes = a.vertices().iter().copied().chain(a.edges().map(|(p, q)| p.lerp(q, 0.5)));
            for p in probes {
                if b.contains(p) && b.boundary_distance(p) > eps {
                    return Err(Error::NotSimple(format!("component {i} lies inside component {j}")));
                }
            }
        }
    }
    Ok(())
}

fn classify_edge(outer: &Polygon, a: Point, b: Point, eps: f64) -> Result<EdgeKind> {
    for (c, d) in outer.edges() {
        if segment_distance(a, c, d) <= eps && segment_distance(b, c, d) <= eps {
            return Ok(EdgeKind::Neumann);
        }
    }
    for s in [0.25, 0.5, 0.75] {
        let m = a.lerp(b, s);
        if outer.boundary_distance(m) <= eps {
            return Err(Error::AmbiguousEdge(format!(
                "edge ({}, {})-({}, {}) runs within tolerance of the boundary without lying on it",
                a.x, a.y, b.x, b.y
            )));
        }
    }
    let mid = a.lerp(b, 0.5);
    if !outer.contains(mid) {
        return Err(Error::NotContained(format!("edge ({}, {})-({}, {}) leaves the domain", a.x, a.y, b.x, b.y)));
    }
    for (c, d) in outer.edges() {
        if segments_cross(a, b, c, d, eps) {
            return Err(Error::NotContained(format!("edge ({}, {})-({}, {}) crosses the boundary", a.x, a.y, b.x, b.y)));
        }
    }
    Ok(EdgeKind::Open)
}

fn vertex_site(outer: &Polygon, points: &[Point], rings: &[Vec<usize>], v: usize, eps: f64) -> Result<VertexSite> {
    let p = points[v];
    let n = outer.len();
    let ov = outer.vertices();
    let mut sigma = None;
    let mut start_dir = Point::new(1.0, 0.0);
    if let Some(i) = (0..n).find(|&i| ov[i].dist(p) <= eps) {
        sigma = Some(outer.interior_angle(i));
        start_dir = ov[(i + 1) % n] - ov[i];
    } else if let Some((c, d)) = outer.edges().find(|&(c, d)| segment_distance(p, c, d) <= eps) {
        sigma = Some(PI);
        start_dir = d - c;
    }

    let mut raw: Vec<(Point, f64)> = Vec::new(); // (outgoing direction, width)
    for cycle in rings {
        if let Some(pos) = cycle.iter().position(|&i| i == v) {
            let m = cycle.len();
            let next = points[cycle[(pos + 1) % m]];
            let prev = points[cycle[(pos + m - 1) % m]];
            let (d_out, d_in) = (next - p, prev - p);
            raw.push((d_out, ccw_angle(d_out, d_in)));
        }
    }
    if raw.is_empty() {
        return Err(Error::DegenerateGeometry(format!("point ({}, {}) is not on the subdomain boundary", p.x, p.y)));
    }
    if sigma.is_none() {
        start_dir = raw[0].0;
    }

    let mut wedges: Vec<(f64, f64)> = raw
        .iter()
        .map(|&(d_out, width)| {
            let mut l = ccw_angle(start_dir, d_out);
            if sigma.is_some() && !(WEDGE_ANGLE_TOL..=TAU - WEDGE_ANGLE_TOL).contains(&l) {
                l = 0.0;
            }
            let mut r = l + width;
            if let Some(s) = sigma {
                if (r - s).abs() < WEDGE_ANGLE_TOL {
                    r = s;
                }
            }
            (l, r)
        })
        .collect();
    wedges.sort_by(|a, b| a.0.total_cmp(&b.0));

    let loc = || format!("at ({}, {}): {wedges:?}", p.x, p.y);
    let limit = sigma.unwrap_or(TAU);
    for w in wedges.windows(2) {
        if w[0].1 > w[1].0 - WEDGE_ANGLE_TOL {
            return Err(Error::OverlappingWedges(loc()));
        }
    }
    match sigma {
        Some(s) => {
            if wedges.last().is_some_and(|w| w.1 > s + WEDGE_ANGLE_TOL) {
                return Err(Error::NotContained(format!("subdomain leaves the domain {}", loc())));
            }
        }
        None => {
            let (first, last) = (wedges[0], wedges[wedges.len() - 1]);
            if wedges.len() > 1 && last.1 > first.0 + TAU - WEDGE_ANGLE_TOL {
                return Err(Error::OverlappingWedges(loc()));
            }
        }
    }

    let mut gaps = Vec::new();
    for w in wedges.windows(2) {
        gaps.push(w[1].0 - w[0].1);
    }
    match sigma {
        Some(s) => {
            if wedges[0].0 > 0.0 {
                gaps.push(wedges[0].0);
            }
            let end = wedges[wedges.len() - 1].1;
            if end < s {
                gaps.push(s - end);
            }
        }
        None if wedges.len() > 1 => gaps.push(wedges[0].0 + limit - wedges[wedges.len() - 1].1),
        None => {}
    }
    Ok(VertexSite { location: p, sigma, start_dir, wedges, gaps })
}

/// Maps a vertex site to one of the vertex types.
pub fn classify_vertex(site: &VertexSite, allow_generalized: bool) -> Result<VertexKind> {
    let w = &site.wedges;
    let unsupported = |reason: &str| Error::UnsupportedVertex {
        x: site.location.x,
        y: site.location.y,
        reason: format!("{reason}; wedges {w:?} (enable generalized vertices to accept)"),
    };
    match site.sigma {
        None => {
            if w.len() == 1 {
                Ok(VertexKind::Open { gamma: w[0].1 - w[0].0 })
            } else if w.len() == 2 || allow_generalized {
                Ok(VertexKind::OpenMulti { wedges: w.clone() })
            } else {
                Err(unsupported("more than two subdomain wedges meet at an interior point"))
            }
        }
        Some(sigma) => {
            let starts = |x: f64| x == 0.0;
            let ends = |x: f64| x == sigma;
            match w.as_slice() {
                [(l, r)] if starts(*l) && ends(*r) => Ok(VertexKind::Nn { gamma: sigma }),
                [(l, r)] if starts(*l) => Ok(VertexKind::Non { gamma: *r, beta: sigma - r }),
                [(l, r)] if ends(*r) => Ok(VertexKind::Non { gamma: sigma - l, beta: *l }),
                [(l, r)] => Ok(VertexKind::Noon {
                    gamma: r - l,
                    beta: sigma - r,
                    alpha: *l,
                    orientation: NoonOrientation::MiddleInterior,
                }),
                [(l1, r1), (l2, r2)] if starts(*l1) && ends(*r2) => Ok(VertexKind::Noon {
                    gamma: l2 - r1,
                    beta: sigma - l2,
                    alpha: *r1,
                    orientation: NoonOrientation::FlanksInterior,
                }),
                _ if allow_generalized => Ok(VertexKind::Generalized { sigma, wedges: w.clone() }),
                _ => Err(unsupported("boundary vertex is not of type NN, NON or NOON")),
            }
        }
    }
}

pub fn classify_vertices(pair: &DomainPair, allow_generalized: bool) -> Result<Vec<ClassifiedVertex>> {
    pair.sites
        .iter()
        .enumerate()
        .map(|(index, site)| {
            let kind = classify_vertex(site, allow_generalized)?;
            let incident = pair.edges.iter().filter(|e| e.start == index || e.end == index);
            let (mut open_edges, mut neumann_edges) = (0, 0);
            for e in incident {
                match e.kind {
                    EdgeKind::Open => open_edges += 1,
                    EdgeKind::Neumann => neumann_edges += 1,
                }
            }
            let subdomain_angle = site.wedges.iter().map(|w| w.1 - w.0).sum();
            Ok(ClassifiedVertex { index, location: site.location, kind, open_edges, neumann_edges, subdomain_angle })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn pts(v: &[[f64; 2]]) -> Vec<Point> {
        v.iter().map(|&p| p.into()).collect()
    }

    fn square() -> Vec<Point> {
        pts(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    }

    fn build(inner: &[&[[f64; 2]]]) -> Result<DomainPair> {
        let inner: Vec<Vec<Point>> = inner.iter().map(|r| pts(r)).collect();
        build_domain_pair(&square(), &inner, &GeometryOptions::default())
    }

    fn kind_at(pair: &DomainPair, x: f64, y: f64) -> VertexKind {
        pair.vertices.iter().find(|v| v.location.dist(Point::new(x, y)) < 1e-12).unwrap().kind.clone()
    }

    #[test]
    fn full_square_is_all_neumann() {
        let pair = build(&[&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]]).unwrap();
        assert_eq!(pair.edges.len(), 4);
        assert!(pair.edges.iter().all(|e| e.kind == EdgeKind::Neumann));
        assert!(pair.vertices.iter().all(|v| matches!(v.kind, VertexKind::Nn { gamma } if (gamma - FRAC_PI_2).abs() < 1e-15)));
    }

    #[test]
    fn half_square() {
        let pair = build(&[&[[0.0, 0.0], [0.5, 0.0], [0.5, 1.0], [0.0, 1.0]]]).unwrap();
        let open: Vec<_> = pair.edges.iter().filter(|e| e.kind == EdgeKind::Open).collect();
        assert_eq!(open.len(), 1);
        assert!((pair.open_length() - 1.0).abs() < 1e-15);
        assert_eq!(pair.edges.len(), 4);
        match kind_at(&pair, 0.5, 0.0) {
            VertexKind::Non { gamma, beta } => {
                assert!((gamma - FRAC_PI_2).abs() < 1e-12 && (beta - FRAC_PI_2).abs() < 1e-12)
            }
            k => panic!("{k:?}"),
        }
        assert!(matches!(kind_at(&pair, 0.0, 0.0), VertexKind::Nn { .. }));
    }

    #[test]
    fn triangle_in_square() {
        let pair = build(&[&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]]).unwrap();
        let kinds: Vec<_> = pair.edges.iter().map(|e| e.kind).collect();
        assert_eq!(kinds.iter().filter(|&&k| k == EdgeKind::Neumann).count(), 2);
        // Ṽ includes no further square corners: (1,1) is not on the triangle.
        assert_eq!(pair.points.len(), 3);
        for (x, y) in [(1.0, 0.0), (0.0, 1.0)] {
            match kind_at(&pair, x, y) {
                VertexKind::Non { gamma, beta } => {
                    assert!((gamma - FRAC_PI_4).abs() < 1e-12 && (beta - FRAC_PI_4).abs() < 1e-12)
                }
                k => panic!("{k:?}"),
            }
        }
        assert!(matches!(kind_at(&pair, 0.0, 0.0), VertexKind::Nn { gamma } if (gamma - FRAC_PI_2).abs() < 1e-12));
    }

    #[test]
    fn outer_vertex_on_inner_edge_splits_it() {
        // The square corner (1, 0) lies inside the bottom edge of D̃.
        let outer = pts(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.5], [0.0, 2.0]]);
        let inner = vec![pts(&[[0.0, 0.0], [1.0, 0.0], [1.5, 0.25], [0.5, 1.0]])];
        let pair = build_domain_pair(&outer, &inner, &GeometryOptions::default()).unwrap();
        assert_eq!(pair.points.len(), 4);
        let neumann = pair.edges.iter().filter(|e| e.kind == EdgeKind::Neumann).count();
        assert_eq!(neumann, 2);
    }

    #[test]
    fn noon_middle_interior() {
        let pair = build(&[&[[0.5, 0.0], [0.75, 0.5], [0.25, 0.5]]]).unwrap();
        match kind_at(&pair, 0.5, 0.0) {
            VertexKind::Noon { gamma, beta, alpha, orientation } => {
                assert_eq!(orientation, NoonOrientation::MiddleInterior);
                assert!((gamma + beta + alpha - PI).abs() < 1e-12);
                assert!((beta - alpha).abs() < 1e-12);
            }
            k => panic!("{k:?}"),
        }
    }

    #[test]
    fn noon_flanks_interior_from_touching_components() {
        let pair = build(&[
            &[[0.0, 0.0], [0.5, 0.0], [0.25, 0.5], [0.0, 0.5]],
            &[[0.5, 0.0], [1.0, 0.0], [1.0, 0.5], [0.75, 0.5]],
        ])
        .unwrap();
        match kind_at(&pair, 0.5, 0.0) {
            VertexKind::Noon { orientation, gamma, .. } => {
                assert_eq!(orientation, NoonOrientation::FlanksInterior);
                assert!(gamma > 0.0);
            }
            k => panic!("{k:?}"),
        }
    }

    #[test]
    fn generalized_needs_opt_in() {
        let inner: Vec<Vec<Point>> = vec![
            pts(&[[0.0, 0.0], [0.5, 0.0], [0.1, 0.3]]),
            pts(&[[0.5, 0.0], [0.6, 0.4], [0.4, 0.4]]),
            pts(&[[0.5, 0.0], [1.0, 0.0], [0.9, 0.3]]),
        ];
        let err = build_domain_pair(&square(), &inner, &GeometryOptions::default());
        assert!(matches!(err, Err(Error::UnsupportedVertex { .. })));
        let opts = GeometryOptions { allow_generalized: true, ..Default::default() };
        let pair = build_domain_pair(&square(), &inner, &opts).unwrap();
        assert!(matches!(kind_at(&pair, 0.5, 0.0), VertexKind::Generalized { ref wedges, .. } if wedges.len() == 3));
    }

    #[test]
    fn containment_errors() {
        assert!(matches!(
            build(&[&[[0.5, 0.5], [1.5, 0.5], [0.5, 0.9]]]),
            Err(Error::NotContained(_))
        ));
        assert!(matches!(build(&[&[[0.2, 0.0], [0.8, 4e-9], [0.5, 0.5]]]), Err(Error::AmbiguousEdge(_))));
    }

    #[test]
    fn overlapping_components_rejected() {
        assert!(build(&[&[[0.1, 0.1], [0.6, 0.1], [0.6, 0.6]], &[[0.2, 0.15], [0.9, 0.15], [0.9, 0.5]]]).is_err());
        assert!(build(&[&[[0.1, 0.1], [0.5, 0.1], [0.5, 0.5]], &[[0.5, 0.1], [0.9, 0.1], [0.5, 0.5]]]).is_err());
    }
}
