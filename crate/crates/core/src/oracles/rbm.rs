//! Reflecting Brownian motion run at twice the speed (generator Δ), so each
//! coordinate of a step of length `dt` has variance `2dt`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::OracleResult;
use crate::error::{Error, Result};
use crate::geometry::{DomainPair, Point, Polygon};

pub const MAX_REFLECTIONS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum McScheme {
    /// `ExactFold` when the domain is an axis-aligned rectangle, else `Specular`.
    Auto,
    ExactFold,
    Specular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McSpec {
    pub n_paths: usize,
    pub n_steps: usize,
    pub seed: u64,
    pub scheme: McScheme,
}

impl McSpec {
    pub fn new(n_paths: usize, n_steps: usize, seed: u64) -> Self {
        Self { n_paths, n_steps, seed, scheme: McScheme::Auto }
    }

    fn validate(&self) -> Result<()> {
        if self.n_paths == 0 || self.n_steps == 0 {
            return Err(Error::Config("n_paths and n_steps must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub enum Reflector {
    Rect { lo: Point, hi: Point },
    Polygon { poly: Polygon, eps: f64 },
}

impl Reflector {
    pub fn new(domain: &Polygon, scheme: McScheme, eps: f64) -> Result<Self> {
        let rect = domain.as_rectangle(eps);
        match (scheme, rect) {
            (McScheme::Auto | McScheme::ExactFold, Some((lo, hi))) => Ok(Reflector::Rect { lo, hi }),
            (McScheme::ExactFold, None) => Err(Error::NotRectangle),
            _ => Ok(Reflector::Polygon { poly: domain.clone(), eps }),
        }
    }

    /// Moves `x` by `d`, reflecting off the boundary.
    pub fn apply(&self, x: Point, d: Point) -> Result<Point> {
        match self {
            Reflector::Rect { lo, hi } => Ok(Point::new(fold_into(x.x + d.x, lo.x, hi.x), fold_into(x.y + d.y, lo.y, hi.y))),
            Reflector::Polygon { poly, eps } => specular(poly, *eps, x, d),
        }
    }
}

/// Tent map: folds `x` into `[lo, hi]` by repeated reflection at the ends.
pub fn fold_into(x: f64, lo: f64, hi: f64) -> f64 {
    let l = hi - lo;
    let y = (x - lo).rem_euclid(2.0 * l);
    lo + if y > l { 2.0 * l - y } else { y }
}

fn specular(poly: &Polygon, eps: f64, mut x: Point, mut d: Point) -> Result<Point> {
    let mut last_edge = usize::MAX;
    let mut last_hit = x;
    for _ in 0..=MAX_REFLECTIONS {
        let mut best: Option<(f64, usize)> = None;
        for (i, (a, b)) in poly.edges().enumerate() {
            if i == last_edge {
                continue;
            }
            let e = b - a;
            // Outward normal of a counterclockwise ring is (e.y, −e.x).
            if d.x * e.y - d.y * e.x <= 0.0 {
                continue;
            }
            let denom = d.cross(e);
            if denom.abs() < 1e-300 {
                continue;
            }
            let w = a - x;
            let s = w.cross(e) / denom;
            let u = w.cross(d) / denom;
            if s > 0.0 && s <= 1.0 && (-1e-12..=1.0 + 1e-12).contains(&u) && best.is_none_or(|(bs, _)| s < bs) {
                best = Some((s, i));
            }
        }
        let Some((s, i)) = best else {
            let y = x + d;
            if poly.contains(y) || poly.boundary_distance(y) <= eps {
                return Ok(y);
            }
            return Ok(last_hit);
        };
        let (a, b) = poly.edge(i);
        let e = b - a;
        let n = e.perp() * (1.0 / e.norm());
        let hit = x + d * s;
        let rest = d * (1.0 - s);
        d = rest - n * (2.0 * rest.dot(n));
        x = hit;
        last_hit = hit;
        last_edge = i;
    }
    Err(Error::ReflectionOverflow(MAX_REFLECTIONS))
}

/// One step of length `dt`: a Gaussian proposal with covariance `2dt·I`, then reflection.
pub fn rbm_step<R: Rng + ?Sized>(state: Point, dt: f64, reflector: &Reflector, rng: &mut R) -> Result<Point> {
    let s = (2.0 * dt).sqrt();
    let gx: f64 = rng.sample(StandardNormal);
    let gy: f64 = rng.sample(StandardNormal);
    reflector.apply(state, Point::new(s * gx, s * gy))
}

fn path_rng(seed: u64, path: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path as u64);
    rng
}

/// Runs one path for `n_steps` steps of `t / n_steps`, calling `visit` after each.
pub fn run_path<R: Rng + ?Sized>(
    start: Point,
    t: f64,
    n_steps: usize,
    reflector: &Reflector,
    rng: &mut R,
    mut visit: impl FnMut(Point) -> bool,
) -> Result<Point> {
    let dt = t / n_steps as f64;
    let mut x = start;
    for _ in 0..n_steps {
        x = rbm_step(x, dt, reflector, rng)?;
        if !visit(x) {
            break;
        }
    }
    Ok(x)
}

fn sample_uniform<R: Rng + ?Sized>(pair: &DomainPair, rng: &mut R) -> Point {
    let (lo, hi) = crate::geometry::bbox(pair.inner.iter().flat_map(|p| p.vertices().iter().copied()));
    loop {
        let p = Point::new(rng.random_range(lo.x..=hi.x), rng.random_range(lo.y..=hi.y));
        if pair.contains(p) {
            return p;
        }
    }
}

fn mean_and_err(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    if samples.len() < 2 {
        return (mean, 0.0);
    }
    let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// `|D̃|·P(X_t ∈ D̃)` for RBM started uniformly in `D̃`.
pub fn rbm_heat_content(pair: &DomainPair, t: f64, spec: &McSpec) -> Result<OracleResult> {
    spec.validate()?;
    if !(t > 0.0) {
        return Err(Error::Config(format!("time must be positive, got {t}")));
    }
    let reflector = Reflector::new(&pair.outer, spec.scheme, pair.eps)?;
    let inside = |p: Point| pair.contains(p) || pair.inner.iter().any(|r| r.boundary_distance(p) <= pair.eps);
    let scores: Vec<f64> = (0..spec.n_paths)
        .into_par_iter()
        .map(|i| {
            let mut rng = path_rng(spec.seed, i);
            let x0 = sample_uniform(pair, &mut rng);
            let x = run_path(x0, t, spec.n_steps, &reflector, &mut rng, |_| true)?;
            Ok(if inside(x) { 1.0 } else { 0.0 })
        })
        .collect::<Result<_>>()?;
    let (mean, err) = mean_and_err(&scores);
    let area = pair.area();
    Ok(OracleResult { value: area * mean, err: area * err, method: "mc".into() })
}

/// Probability that RBM started at `x` leaves the Euclidean ball `B_δ(x)` by time `t`,
/// checked after every step.
pub fn exit_tail_probability(domain: &Polygon, x: Point, delta: f64, t: f64, spec: &McSpec) -> Result<OracleResult> {
    spec.validate()?;
    if !(delta > 0.0 && t > 0.0) {
        return Err(Error::Config(format!("need δ > 0 and t > 0, got δ = {delta}, t = {t}")));
    }
    let (lo, hi) = domain.bbox();
    let eps = 1e-9 * (hi - lo).norm();
    let reflector = Reflector::new(domain, spec.scheme, eps)?;
    let scores: Vec<f64> = (0..spec.n_paths)
        .into_par_iter()
        .map(|i| {
            let mut rng = path_rng(spec.seed, i);
            let mut exited = false;
            run_path(x, t, spec.n_steps, &reflector, &mut rng, |p| {
                exited = p.dist(x) >= delta;
                !exited
            })?;
            Ok(if exited { 1.0 } else { 0.0 })
        })
        .collect::<Result<_>>()?;
    let (mean, err) = mean_and_err(&scores);
    Ok(OracleResult { value: mean, err, method: "mc".into() })
}
