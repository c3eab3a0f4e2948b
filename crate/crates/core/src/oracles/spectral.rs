//! Neumann eigenfunction series on an axis-aligned rectangle:
//! `H(t) = Σ e^{-tμ_mn} (∫_{D̃} φ_mn)²`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::OracleResult;
use crate::error::{Error, Result};
use crate::geometry::{DomainPair, Point};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub origin: Point,
    pub l1: f64,
    pub l2: f64,
}

impl Rect {
    pub fn from_pair(pair: &DomainPair) -> Result<Rect> {
        let (lo, hi) = pair.outer.as_rectangle(pair.eps).ok_or(Error::NotRectangle)?;
        Ok(Rect { origin: lo, l1: hi.x - lo.x, l2: hi.y - lo.y })
    }

    pub fn area(&self) -> f64 {
        self.l1 * self.l2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralSpec {
    /// Highest mode index along x and y.
    pub max_mode: (usize, usize),
    /// Largest acceptable truncation bound.
    pub tol: f64,
}

impl SpectralSpec {
    pub fn uniform(max_mode: usize) -> Self {
        Self { max_mode: (max_mode, max_mode), tol: 1e-10 }
    }
}

/// `∫∫_{rings} cos(kx·x + ky·y) dA` via the divergence theorem:
/// `cos(k·x) = div(k sin(k·x)/|k|²)`, integrated exactly along each edge.
pub fn polygon_cos_integral(rings: &[Vec<Point>], kx: f64, ky: f64) -> f64 {
    let k2 = kx * kx + ky * ky;
    let mut total = 0.0;
    for ring in rings {
        let n = ring.len();
        for i in 0..n {
            let (p, q) = (ring[i], ring[(i + 1) % n]);
            let d = q - p;
            if k2 == 0.0 {
                total += 0.5 * p.cross(q);
                continue;
            }
            let flux = (kx * d.y - ky * d.x) / k2;
            let alpha = kx * p.x + ky * p.y;
            let beta = kx * d.x + ky * d.y;
            let h = 0.5 * beta;
            let sinc = if h.abs() < 1e-8 { 1.0 - h * h / 6.0 } else { h.sin() / h };
            total += flux * (alpha + h).sin() * sinc;
        }
    }
    total
}

fn norm_factor(m: usize, l: f64) -> f64 {
    if m == 0 {
        (1.0 / l).sqrt()
    } else {
        (2.0 / l).sqrt()
    }
}

/// `∫_{D̃} φ_mn` with `φ_mn = N_m N_n cos(mπx/L1) cos(nπy/L2)` in the
/// rectangle's own coordinates.
pub fn eigen_integral(rect: &Rect, inner: &[Vec<Point>], m: usize, n: usize) -> Result<f64> {
    let tol = 1e-9 * (rect.l1 + rect.l2);
    let local: Vec<Vec<Point>> = inner.iter().map(|r| r.iter().map(|&p| p - rect.origin).collect()).collect();
    for p in local.iter().flatten() {
        if p.x < -tol || p.y < -tol || p.x > rect.l1 + tol || p.y > rect.l2 + tol {
            return Err(Error::NotContained(format!("point ({}, {}) outside the rectangle", p.x, p.y)));
        }
    }
    Ok(eigen_integral_local(rect, &local, m, n))
}

fn eigen_integral_local(rect: &Rect, local: &[Vec<Point>], m: usize, n: usize) -> f64 {
    let p = m as f64 * PI / rect.l1;
    let q = n as f64 * PI / rect.l2;
    // cos(px) cos(qy) = ½[cos(px + qy) + cos(px − qy)]
    let integral = if m == 0 && n == 0 {
        polygon_cos_integral(local, 0.0, 0.0)
    } else {
        0.5 * (polygon_cos_integral(local, p, q) + polygon_cos_integral(local, p, -q))
    };
    norm_factor(m, rect.l1) * norm_factor(n, rect.l2) * integral
}

/// Precomputed `(μ_mn, c_mn²)` pairs, sorted by eigenvalue, reusable across times.
#[derive(Debug, Clone)]
pub struct SpectralTable {
    modes: Vec<(f64, f64)>,
    area: f64,
    captured: f64,
    mu_cut: f64,
    tol: f64,
}

impl SpectralTable {
    pub fn new(rect: &Rect, inner: &[Vec<Point>], spec: &SpectralSpec) -> Result<Self> {
        let (mx, my) = spec.max_mode;
        if mx < 1 || my < 1 {
            return Err(Error::Config("spectral max_mode must be at least 1".into()));
        }
        eigen_integral(rect, inner, 0, 0)?;
        let local: Vec<Vec<Point>> = inner.iter().map(|r| r.iter().map(|&p| p - rect.origin).collect()).collect();
        let area = polygon_cos_integral(&local, 0.0, 0.0);
        let mut modes: Vec<(f64, f64)> = (0..=mx)
            .into_par_iter()
            .flat_map_iter(|m| {
                let local = &local;
                (0..=my).map(move |n| {
                    let c = eigen_integral_local(rect, local, m, n);
                    let mu = PI * PI * ((m * m) as f64 / (rect.l1 * rect.l1) + (n * n) as f64 / (rect.l2 * rect.l2));
                    (mu, c * c)
                })
            })
            .collect();
        modes.sort_by(|a, b| a.0.total_cmp(&b.0));
        let captured = neumaier(modes.iter().map(|m| m.1));
        let mu_cut = (((mx + 1) as f64 * PI / rect.l1).powi(2)).min(((my + 1) as f64 * PI / rect.l2).powi(2));
        Ok(Self { modes, area, captured, mu_cut, tol: spec.tol })
    }

    pub fn from_pair(pair: &DomainPair, spec: &SpectralSpec) -> Result<Self> {
        Self::new(&Rect::from_pair(pair)?, &pair.ring_points(), spec)
    }

    /// Rigorous bound on the dropped modes: every one of them has
    /// `μ ≥ μ_cut`, and their squared coefficients sum to `|D̃| − Σ c²`.
    pub fn truncation_bound(&self, t: f64) -> f64 {
        (-t * self.mu_cut).exp() * (self.area - self.captured).max(0.0)
    }

    pub fn heat_content(&self, t: f64) -> Result<OracleResult> {
        if !(t > 0.0) {
            return Err(Error::Config(format!("time must be positive, got {t}")));
        }
        let bound = self.truncation_bound(t);
        if bound > self.tol {
            return Err(Error::TruncationInsufficient { t, bound, tol: self.tol });
        }
        let terms = self.modes.iter().take_while(|m| t * m.0 < 800.0).map(|&(mu, c2)| c2 * (-t * mu).exp());
        Ok(OracleResult { value: neumaier(terms), err: bound, method: "spectral".into() })
    }
}

pub fn spectral_heat_content(pair: &DomainPair, t: f64, spec: &SpectralSpec) -> Result<OracleResult> {
    SpectralTable::from_pair(pair, spec)?.heat_content(t)
}

fn neumaier(values: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0_f64, 0.0_f64);
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Rect {
        Rect { origin: Point::new(0.0, 0.0), l1: 1.0, l2: 1.0 }
    }

    fn ring(v: &[[f64; 2]]) -> Vec<Vec<Point>> {
        vec![v.iter().map(|&p| p.into()).collect()]
    }

    #[test]
    fn constant_mode_gives_area() {
        let tri = ring(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]);
        assert!((eigen_integral(&unit(), &tri, 0, 0).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn full_rectangle_is_orthogonal_to_higher_modes() {
        let r = Rect { origin: Point::new(1.0, -2.0), l1: 2.0, l2: 0.5 };
        let full = ring(&[[1.0, -2.0], [3.0, -2.0], [3.0, -1.5], [1.0, -1.5]]);
        for (m, n) in [(1, 0), (0, 3), (2, 5), (7, 7)] {
            assert!(eigen_integral(&r, &full, m, n).unwrap().abs() < 1e-14);
        }
    }

    #[test]
    fn half_square_odd_modes() {
        let half = ring(&[[0.0, 0.0], [0.5, 0.0], [0.5, 1.0], [0.0, 1.0]]);
        for m in [1usize, 3, 5, 11] {
            let mf = m as f64;
            let expected = 2f64.sqrt() * (mf * PI / 2.0).sin() / (mf * PI);
            assert!((eigen_integral(&unit(), &half, m, 0).unwrap() - expected).abs() < 1e-14);
            assert!(eigen_integral(&unit(), &half, m, 2).unwrap().abs() < 1e-14);
        }
        assert!(eigen_integral(&unit(), &half, 4, 0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn triangle_mode_matches_direct_integration() {
        // ∫₀¹∫₀^{1-x} cos(πx) cos(2πy) dy dx by a fine midpoint rule.
        let tri = ring(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]);
        let n = 2000;
        let h = 1.0 / n as f64;
        let mut s = 0.0;
        for i in 0..n {
            let x = (i as f64 + 0.5) * h;
            // inner integral exact: sin(2π(1−x))/(2π)
            s += (PI * x).cos() * (2.0 * PI * (1.0 - x)).sin() / (2.0 * PI) * h;
        }
        let expected = 2.0 * s;
        assert!((eigen_integral(&unit(), &tri, 1, 2).unwrap() - expected).abs() < 1e-6);
    }

    #[test]
    fn rejects_points_outside() {
        let bad = ring(&[[0.0, 0.0], [1.5, 0.0], [0.0, 1.0]]);
        assert!(matches!(eigen_integral(&unit(), &bad, 0, 0), Err(Error::NotContained(_))));
    }

    #[test]
    fn truncation_error_is_reported() {
        let half = ring(&[[0.0, 0.0], [0.5, 0.0], [0.5, 1.0], [0.0, 1.0]]);
        let table = SpectralTable::new(&unit(), &half, &SpectralSpec::uniform(5)).unwrap();
        assert!(matches!(table.heat_content(1e-4), Err(Error::TruncationInsufficient { .. })));
        assert!(table.heat_content(1.0).is_ok());
    }
}
