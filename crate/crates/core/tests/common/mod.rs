#![allow(dead_code)]

use polyheat::geometry::{build_domain_pair, DomainPair, GeometryOptions, Point};

pub fn pts(v: &[[f64; 2]]) -> Vec<Point> {
    v.iter().map(|&p| p.into()).collect()
}

pub fn unit_square() -> Vec<Point> {
    pts(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
}

pub fn pair(outer: &[Point], inner: &[Vec<Point>]) -> DomainPair {
    build_domain_pair(outer, inner, &GeometryOptions::default()).unwrap()
}

pub fn half_square() -> DomainPair {
    pair(&unit_square(), &[pts(&[[0.0, 0.0], [0.5, 0.0], [0.5, 1.0], [0.0, 1.0]])])
}

pub fn triangle() -> DomainPair {
    pair(&unit_square(), &[pts(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])])
}

pub fn full_square() -> DomainPair {
    pair(&unit_square(), &[unit_square()])
}

/// Triangle standing on the bottom edge: one NOON vertex, two open vertices.
pub fn noon_triangle() -> DomainPair {
    pair(&unit_square(), &[pts(&[[0.5, 0.0], [0.75, 0.5], [0.25, 0.5]])])
}

/// Interior triangle: three open vertices.
pub fn interior_triangle() -> DomainPair {
    pair(&unit_square(), &[pts(&[[0.3, 0.2], [0.7, 0.3], [0.5, 0.8]])])
}

/// Subdomain hanging off the left edge: NON vertices with unequal angles.
pub fn slanted_notch() -> DomainPair {
    pair(&unit_square(), &[pts(&[[0.0, 0.1], [0.6, 0.4], [0.3, 0.9], [0.0, 0.7]])])
}

pub fn tile_square() -> Vec<Point> {
    pts(&[[0.0, 0.0], [3.6, 0.0], [3.6, 3.6], [0.0, 3.6]])
}

/// The three subdomains of the 3.6 × 3.6 square sharing one expansion.
pub fn tile_subdomains() -> [Vec<Vec<Point>>; 3] {
    let first = vec![
        pts(&[[0.0, 2.4], [0.6, 2.4], [0.6, 3.6], [0.0, 3.6]]),
        pts(&[[0.6, 3.6], [1.8, 2.4], [3.0, 3.6]]),
        pts(&[[3.0, 2.4], [3.6, 2.4], [3.6, 3.6], [3.0, 3.6]]),
        pts(&[[0.0, 0.0], [0.6, 0.0], [0.6, 1.2], [0.0, 1.2]]),
        pts(&[[0.6, 0.0], [3.0, 0.0], [1.8, 1.2]]),
        pts(&[[3.0, 0.0], [3.6, 0.0], [3.6, 1.2], [3.0, 1.2]]),
    ];
    let second = vec![
        pts(&[[0.0, 2.4], [1.2, 3.6], [0.0, 3.6]]),
        pts(&[[1.2, 2.4], [2.4, 2.4], [2.4, 3.6], [1.2, 3.6]]),
        pts(&[[2.4, 3.6], [3.6, 2.4], [3.6, 3.6]]),
        pts(&[[0.0, 1.2], [0.0, 0.0], [1.2, 0.0]]),
        pts(&[[1.2, 0.0], [2.4, 0.0], [2.4, 1.2], [1.2, 1.2]]),
        pts(&[[2.4, 0.0], [3.6, 0.0], [3.6, 1.2]]),
    ];
    let third = vec![
        pts(&[[0.0, 0.6], [0.6, 0.6], [0.6, 3.0], [0.0, 3.0]]),
        pts(&[[3.0, 0.6], [3.6, 0.6], [3.6, 3.0], [3.0, 3.0]]),
        pts(&[[0.6, 1.8], [1.8, 0.6], [3.0, 1.8], [1.8, 3.0]]),
    ];
    [first, second, third]
}

pub fn tile_pairs() -> Vec<DomainPair> {
    tile_subdomains().iter().map(|s| pair(&tile_square(), s)).collect()
}

/// Every fixture used by the structural checks.
pub fn all_fixtures() -> Vec<(&'static str, DomainPair)> {
    let mut v = vec![
        ("full square", full_square()),
        ("half square", half_square()),
        ("triangle", triangle()),
        ("noon triangle", noon_triangle()),
        ("interior triangle", interior_triangle()),
        ("slanted notch", slanted_notch()),
    ];
    let names = ["tiles first", "tiles second", "tiles third"];
    for (n, p) in names.into_iter().zip(tile_pairs()) {
        v.push((n, p));
    }
    v
}
