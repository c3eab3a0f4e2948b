//! Linear combinations of `cosh(rθ)` or `sinh(rθ)` and their ratios.
//!
//! Every corner integrand is a quotient of two such combinations once the
//! products of hyperbolic functions are expanded. Keeping them symbolic gives
//! exact exponential decay rates for the tail bound, a Taylor expansion for
//! the removable singularity at `θ = 0`, and overflow-free evaluation at
//! large `θ`.

use crate::error::{Error, Result};
use crate::quadrature::{integrate_semi_infinite, CoefficientValue, QuadratureSpec, TailBound};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// Σ c·cosh(rθ)
    Even,
    /// Σ c·sinh(rθ)
    Odd,
}

impl Parity {
    fn times(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

const RATE_MERGE_TOL: f64 = 1e-12;
const COEFF_DROP_TOL: f64 = 1e-13;
const SERIES_TERMS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicSum {
    parity: Parity,
    /// `(coefficient, rate)` pairs, rates nonnegative, strictly increasing.
    terms: Vec<(f64, f64)>,
}

impl HyperbolicSum {
    pub fn zero(parity: Parity) -> Self {
        Self { parity, terms: Vec::new() }
    }

    pub fn cosh(c: f64, r: f64) -> Self {
        Self::from_terms(Parity::Even, vec![(c, r)])
    }

    pub fn sinh(c: f64, r: f64) -> Self {
        Self::from_terms(Parity::Odd, vec![(c, r)])
    }

    pub fn constant(c: f64) -> Self {
        Self::cosh(c, 0.0)
    }

    pub fn from_terms(parity: Parity, terms: Vec<(f64, f64)>) -> Self {
        let mut s = Self { parity, terms };
        s.normalize();
        s
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest rate with a nonzero coefficient.
    pub fn max_rate(&self) -> Option<f64> {
        self.terms.last().map(|t| t.1)
    }

    fn normalize(&mut self) {
        let scale = self.terms.iter().map(|t| t.0.abs()).fold(0.0, f64::max);
        let odd = self.parity == Parity::Odd;
        let mut t: Vec<(f64, f64)> = self
            .terms
            .iter()
            .map(|&(c, r)| if r < 0.0 { (if odd { -c } else { c }, -r) } else { (c, r) })
            .collect();
        t.sort_by(|a, b| a.1.total_cmp(&b.1));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(t.len());
        for (c, r) in t {
            match merged.last_mut() {
                Some(last) if (r - last.1).abs() <= RATE_MERGE_TOL * r.max(1.0) => last.0 += c,
                _ => merged.push((c, r)),
            }
        }
        merged.retain(|&(c, r)| c.abs() > COEFF_DROP_TOL * scale && !(odd && r <= RATE_MERGE_TOL));
        self.terms = merged;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.parity, other.parity, "cannot add sums of different parity");
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Self::from_terms(self.parity, terms)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_terms(self.parity, self.terms.iter().map(|&(c, r)| (s * c, r)).collect())
    }

    /// Product expanded with the addition theorems, e.g.
    /// `sinh a · sinh b = ½[cosh(a+b) − cosh(a−b)]`.
    pub fn mul(&self, other: &Self) -> Self {
        let parity = self.parity.times(other.parity);
        let mut terms = Vec::with_capacity(2 * self.terms.len() * other.terms.len());
        for &(c1, r1) in &self.terms {
            for &(c2, r2) in &other.terms {
                let c = 0.5 * c1 * c2;
                match (self.parity, other.parity) {
                    (Parity::Even, Parity::Even) => {
                        terms.push((c, r1 + r2));
                        terms.push((c, r1 - r2));
                    }
                    (Parity::Odd, Parity::Odd) => {
                        terms.push((c, r1 + r2));
                        terms.push((-c, r1 - r2));
                    }
                    // cosh a · sinh b = ½[sinh(a+b) − sinh(a−b)]
                    (Parity::Even, Parity::Odd) => {
                        terms.push((c, r1 + r2));
                        terms.push((-c, r1 - r2));
                    }
                    (Parity::Odd, Parity::Even) => {
                        terms.push((c, r1 + r2));
                        terms.push((c, r1 - r2));
                    }
                }
            }
        }
        Self::from_terms(parity, terms)
    }

    /// Direct evaluation. Even sums use `cosh x = 1 + 2 sinh²(x/2)` so that
    /// the constant parts cancel exactly before any rounding.
    pub fn eval(&self, theta: f64) -> f64 {
        match self.parity {
            Parity::Even => {
                let constant: f64 = self.terms.iter().map(|t| t.0).sum();
                let varying: f64 = self
                    .terms
                    .iter()
                    .map(|&(c, r)| {
                        let s = (0.5 * r * theta).sinh();
                        2.0 * c * s * s
                    })
                    .sum();
                constant + varying
            }
            Parity::Odd => self.terms.iter().map(|&(c, r)| c * (r * theta).sinh()).sum(),
        }
    }

    /// `e^{-mθ}` times the sum, without forming the large exponentials.
    pub fn eval_scaled(&self, theta: f64, m: f64) -> f64 {
        let sign = if self.parity == Parity::Even { 1.0 } else { -1.0 };
        self.terms
            .iter()
            .map(|&(c, r)| 0.5 * c * (((r - m) * theta).exp() + sign * ((-r - m) * theta).exp()))
            .sum()
    }

    /// Taylor coefficients of θ^0 … θ^{n-1}, each paired with the size of
    /// the terms that produced it (for deciding when a coefficient vanishes).
    fn taylor(&self, n: usize) -> Vec<(f64, f64)> {
        let mut out = vec![(0.0, 0.0); n];
        for &(c, r) in &self.terms {
            let mut term = c; // c r^j / j!
            for (j, slot) in out.iter_mut().enumerate() {
                if j > 0 {
                    term *= r / j as f64;
                }
                let contributes = match self.parity {
                    Parity::Even => j % 2 == 0,
                    Parity::Odd => j % 2 == 1,
                };
                if contributes {
                    slot.0 += term;
                    slot.1 += term.abs();
                }
            }
        }
        out
    }

    /// Order of vanishing at θ = 0 and the Taylor coefficients from there on.
    fn leading_series(&self) -> Option<(usize, Vec<f64>)> {
        let n = 2 * SERIES_TERMS + 8;
        let t = self.taylor(n);
        let p = t.iter().position(|&(v, s)| s > 0.0 && v.abs() > 1e-12 * s)?;
        let coeffs: Vec<f64> = t[p..].iter().take(SERIES_TERMS).map(|x| x.0).collect();
        Some((p, coeffs))
    }
}

/// `num(θ) / den(θ)` with the decay and series data needed to integrate it
/// over `[0, ∞)`.
#[derive(Debug, Clone)]
pub struct HyperbolicRatio {
    num: HyperbolicSum,
    den: HyperbolicSum,
    series: Option<RatioSeries>,
    num_rate: f64,
    den_rate: f64,
    series_radius: f64,
}

#[derive(Debug, Clone)]
struct RatioSeries {
    /// Power of θ multiplying the quotient series (numerator order minus
    /// denominator order; negative would mean a pole).
    shift: i32,
    coeffs: Vec<f64>,
}

impl HyperbolicRatio {
    pub fn new(num: HyperbolicSum, den: HyperbolicSum) -> Result<Self> {
        let den_rate = den
            .max_rate()
            .ok_or_else(|| Error::DegenerateGeometry("identically zero denominator".into()))?;
        let num_rate = num.max_rate().unwrap_or(0.0);
        let series = match (num.leading_series(), den.leading_series()) {
            (Some((p, a)), Some((q, b))) => {
                let mut quot = vec![0.0; SERIES_TERMS];
                for j in 0..SERIES_TERMS {
                    let mut s = a[j];
                    for i in 1..=j {
                        s -= b[i] * quot[j - i];
                    }
                    quot[j] = s / b[0];
                }
                Some(RatioSeries { shift: p as i32 - q as i32, coeffs: quot })
            }
            _ => None,
        };
        if let Some(s) = &series {
            if s.shift < 0 {
                return Err(Error::DegenerateGeometry("integrand has a pole at θ = 0".into()));
            }
        }
        let r_max = num_rate.max(den_rate).max(1.0);
        Ok(Self { num, den, series, num_rate, den_rate, series_radius: 0.05 / r_max })
    }

    pub fn numerator(&self) -> &HyperbolicSum {
        &self.num
    }

    pub fn denominator(&self) -> &HyperbolicSum {
        &self.den
    }

    /// Exponential decay rate of the ratio as θ → ∞.
    pub fn decay_rate(&self) -> f64 {
        if self.num.is_zero() {
            f64::INFINITY
        } else {
            self.den_rate - self.num_rate
        }
    }

    /// Limit at θ = 0⁺.
    pub fn value_at_zero(&self) -> f64 {
        match &self.series {
            Some(s) if s.shift == 0 => s.coeffs[0],
            _ => 0.0,
        }
    }

    pub fn eval_series(&self, theta: f64) -> f64 {
        let Some(s) = &self.series else { return 0.0 };
        let poly = s.coeffs.iter().rev().fold(0.0, |acc, &c| acc * theta + c);
        poly * theta.powi(s.shift)
    }

    pub fn eval_direct(&self, theta: f64) -> f64 {
        if theta * self.den_rate > 20.0 {
            let n = self.num.eval_scaled(theta, self.num_rate);
            let d = self.den.eval_scaled(theta, self.den_rate);
            n / d * (-(self.den_rate - self.num_rate) * theta).exp()
        } else {
            self.num.eval(theta) / self.den.eval(theta)
        }
    }

    pub fn eval(&self, theta: f64, theta_small: f64) -> f64 {
        if self.num.is_zero() {
            0.0
        } else if theta < theta_small.min(self.series_radius) {
            self.eval_series(theta)
        } else {
            self.eval_direct(theta)
        }
    }

    /// Envelope `|num/den| ≤ C e^{-μθ}` for `θ ≥ θ*`, from
    /// `|num| ≤ Σ|c| e^{Rθ}` and `|den| ≥ e^{Sθ}[|d₀|/2 (1 − e^{-2Sθ}) − Σ|dⱼ| e^{-(S−sⱼ)θ}]`.
    pub fn tail_bound(&self) -> Result<TailBound> {
        let mu = self.decay_rate();
        if !(mu > 0.0) {
            return Err(Error::BadDecay(mu));
        }
        let s = self.den_rate;
        let terms = self.den.terms();
        let (lead, others) = terms.split_last().expect("denominator is nonzero");
        let bracket = |theta: f64| {
            0.5 * lead.0.abs() * (1.0 - (-2.0 * s * theta).exp())
                - others.iter().map(|&(d, r)| d.abs() * (-(s - r) * theta).exp()).sum::<f64>()
        };
        let want = 0.25 * lead.0.abs();
        let mut theta_star = 1.0 / s;
        while bracket(theta_star) < want {
            theta_star *= 2.0;
            if !theta_star.is_finite() {
                return Err(Error::BadDecay(mu));
            }
        }
        let c = self.num.terms().iter().map(|t| t.0.abs()).sum::<f64>() / bracket(theta_star);
        Ok(TailBound { mu, c, theta_star })
    }

    pub fn integrate(&self, spec: &QuadratureSpec) -> Result<CoefficientValue> {
        if self.num.is_zero() {
            return Ok(CoefficientValue::ZERO);
        }
        let tail = self.tail_bound()?;
        let theta_small = spec.theta_small;
        integrate_semi_infinite(|x| self.eval(x, theta_small), tail, self.den_rate.max(1.0), spec)
    }
}
