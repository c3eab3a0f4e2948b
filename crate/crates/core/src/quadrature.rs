//! Adaptive Gauss-Kronrod quadrature on finite and semi-infinite intervals.
//!
//! The 21-point Kronrod extension of the 10-point Gauss rule is applied on
//! panels kept in a max-heap keyed by their error estimate; the worst panel
//! is bisected until the global estimate meets the tolerance. Semi-infinite
//! integrals are truncated at a point chosen from an analytic envelope
//! `|f(θ)| ≤ C e^{-μθ}`, and the dropped tail is added to the error.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Below this argument the hyperbolic integrands switch to Taylor series.
    pub theta_small: f64,
    pub max_panels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-12, theta_small: 1e-3, max_panels: 4000 }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = self.rel_tol > 0.0
            && self.abs_tol > 0.0
            && self.theta_small > 0.0
            && self.theta_small < 1.0
            && self.max_panels > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid quadrature spec {self:?}")))
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// A computed coefficient together with its error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientValue {
    pub value: f64,
    pub err_est: f64,
}

impl CoefficientValue {
    pub const ZERO: Self = Self { value: 0.0, err_est: 0.0 };

    pub fn exact(value: f64) -> Self {
        Self { value, err_est: 0.0 }
    }

    pub fn scale(self, s: f64) -> Self {
        Self { value: s * self.value, err_est: s.abs() * self.err_est }
    }
}

impl std::ops::Add for CoefficientValue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { value: self.value + rhs.value, err_est: self.err_est + rhs.err_est }
    }
}

impl std::ops::Sub for CoefficientValue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { value: self.value - rhs.value, err_est: self.err_est + rhs.err_est }
    }
}

impl std::iter::Sum for CoefficientValue {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |acc, v| acc + v)
    }
}

/// Envelope `|f(θ)| ≤ c·e^{-μθ}` valid for `θ ≥ theta_star`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailBound {
    pub mu: f64,
    pub c: f64,
    pub theta_star: f64,
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// QUADPACK's heuristic: shrink the raw |K - G| estimate for smooth integrands,
// but never below what roundoff allows.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = err.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

/// One application of the 21-point Kronrod rule; returns `(integral, error)`.
pub fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut res_k = f_center * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let x = half * XGK[j];
        let (f1, f2) = (f(center - x), f(center + x));
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half.abs();
    let err = rescale_error((res_k - res_g) * half, res_abs * scale, res_asc * scale);
    (res_k * half, err)
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Adaptive integration over `[breaks[0], breaks[last]]` starting from the
/// given panel boundaries. `budget` is the error allowance on top of the
/// quadrature error (used for the truncated tail).
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    breaks: &[f64],
    spec: &QuadratureSpec,
    extra_err: f64,
) -> Result<CoefficientValue> {
    let mut heap = BinaryHeap::new();
    for w in breaks.windows(2) {
        let (value, err) = gk21(f, w[0], w[1]);
        heap.push(Panel { a: w[0], b: w[1], value, err });
    }
    loop {
        let total: f64 = heap.iter().map(|p| p.value).sum();
        let err: f64 = heap.iter().map(|p| p.err).sum::<f64>() + extra_err;
        if !total.is_finite() || !err.is_finite() {
            return Err(Error::NoConvergence { panels: heap.len(), err_est: f64::INFINITY });
        }
        if err <= spec.target(total) {
            return Ok(CoefficientValue { value: total, err_est: err });
        }
        if heap.len() >= spec.max_panels {
            return Err(Error::NoConvergence { panels: heap.len(), err_est: err });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel cannot be split any further in floating point.
            return Err(Error::NoConvergence { panels: heap.len() + 1, err_est: err });
        }
        let (v1, e1) = gk21(f, worst.a, mid);
        let (v2, e2) = gk21(f, mid, worst.b);
        heap.push(Panel { a: worst.a, b: mid, value: v1, err: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, err: e2 });
    }
}

/// Adaptive integral of `f` over the finite interval `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<CoefficientValue> {
    spec.validate()?;
    if a == b {
        return Ok(CoefficientValue::ZERO);
    }
    adaptive(&f, &[a, b], spec, 0.0)
}

/// Integral of `f` over `[0, ∞)`.
///
/// The interval is cut at `θ_max = max(θ*, ln(C/(μ·τ))/μ)` with `τ` a tenth
/// of the absolute tolerance, so the analytic tail `C e^{-μθ_max}/μ` never
/// dominates the error budget. The initial panels grow geometrically from
/// `1/scale`, the scale on which the integrand varies near the origin.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    tail: TailBound,
    scale: f64,
    spec: &QuadratureSpec,
) -> Result<CoefficientValue> {
    spec.validate()?;
    if !(tail.mu > 0.0) || !tail.mu.is_finite() {
        return Err(Error::BadDecay(tail.mu));
    }
    let tau = 0.1 * spec.abs_tol;
    let cut = if tail.c > 0.0 { (tail.c / (tail.mu * tau)).ln() / tail.mu } else { 0.0 };
    let theta_max = tail.theta_star.max(cut).max(f64::MIN_POSITIVE);
    let tail_err = tail.c * (-tail.mu * theta_max).exp() / tail.mu;

    let mut breaks = vec![0.0];
    let mut x = (1.0 / scale.max(1e-300)).min(theta_max);
    while x < theta_max {
        breaks.push(x);
        x *= 2.0;
    }
    breaks.push(theta_max);
    adaptive(&f, &breaks, spec, tail_err)
}

/// Iterated integral over the rectangle `[ax, bx] × [ay, by]`; the inner
/// integral runs in `y`.
pub fn integrate_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    (ax, bx): (f64, f64),
    (ay, by): (f64, f64),
    spec: &QuadratureSpec,
) -> Result<CoefficientValue> {
    let inner_spec = QuadratureSpec { rel_tol: spec.rel_tol * 0.1, abs_tol: spec.abs_tol * 0.1, ..*spec };
    let failure = std::cell::Cell::new(None);
    let worst_inner = std::cell::Cell::new(0.0_f64);
    let outer = integrate(
        |x| match integrate(|y| f(x, y), ay, by, &inner_spec) {
            Ok(v) => {
                worst_inner.set(worst_inner.get().max(v.err_est));
                v.value
            }
            Err(e) => {
                failure.set(Some(e));
                0.0
            }
        },
        ax,
        bx,
        spec,
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(CoefficientValue { value: outer.value, err_est: outer.err_est + worst_inner.get() * (bx - ax).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gk21_is_exact_for_low_degree_polynomials() {
        let (v, _) = gk21(&|x: f64| 3.0 * x.powi(5) - x * x + 2.0, -1.0, 2.0);
        let exact = 3.0 * (64.0 - 1.0) / 6.0 - (8.0 + 1.0) / 3.0 + 6.0;
        assert!((v - exact).abs() < 1e-13);
    }

    #[test]
    fn finite_interval_oscillatory() {
        let spec = QuadratureSpec::default();
        let v = integrate(|x: f64| (20.0 * x).cos(), 0.0, PI / 3.0, &spec).unwrap();
        let exact = (20.0 * PI / 3.0).sin() / 20.0;
        assert!((v.value - exact).abs() < 1e-12);
        assert!(v.err_est < 1e-10);
    }

    #[test]
    fn exponential_on_half_line() {
        let spec = QuadratureSpec::default();
        let tail = TailBound { mu: 1.0, c: 1.0, theta_star: 0.0 };
        let v = integrate_semi_infinite(|x: f64| (-x).exp(), tail, 1.0, &spec).unwrap();
        assert!((v.value - 1.0).abs() < 1e-12, "{v:?}");
    }

    #[test]
    fn sech_integral() {
        // ∫ 4 sech(πθ) = 2, with 4 sech(πθ) ≤ 8 e^{-πθ}.
        let spec = QuadratureSpec::default();
        let tail = TailBound { mu: PI, c: 8.0, theta_star: 0.0 };
        let v = integrate_semi_infinite(|x: f64| 4.0 / (PI * x).cosh(), tail, PI, &spec).unwrap();
        assert!((v.value - 2.0).abs() < 1e-11, "{v:?}");
    }

    #[test]
    fn rejects_nonpositive_decay() {
        let spec = QuadratureSpec::default();
        for mu in [0.0, -1.0, f64::NAN] {
            let tail = TailBound { mu, c: 1.0, theta_star: 0.0 };
            assert!(matches!(
                integrate_semi_infinite(|x: f64| (-x).exp(), tail, 1.0, &spec),
                Err(Error::BadDecay(_))
            ));
        }
    }

    #[test]
    fn panel_budget_is_enforced() {
        let spec = QuadratureSpec { max_panels: 3, rel_tol: 1e-15, abs_tol: 1e-300, ..Default::default() };
        let r = integrate(|x: f64| x.abs().sqrt() * (50.0 * x).sin(), -1.0, 1.0, &spec);
        assert!(matches!(r, Err(Error::NoConvergence { .. })));
    }

    #[test]
    fn two_dimensional_rectangle() {
        let spec = QuadratureSpec::default();
        let v = integrate_2d(|x, y| x * y.exp(), (0.0, 2.0), (0.0, 1.0), &spec).unwrap();
        assert!((v.value - 2.0 * (1f64.exp() - 1.0)).abs() < 1e-11);
    }
}
