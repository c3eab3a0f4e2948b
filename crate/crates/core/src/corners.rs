//! Corner coefficient functions.
//!
//! Naming follows the vertex types: `a` for open vertices, `b` for vertices
//! where one open edge meets the insulated boundary, `c` for two open edges
//! meeting the boundary, `k` for the pairwise interaction of open wedges,
//! and the hatted family (`b̂`, `ĉ`, `d̂`, `ĥ`) for the wedge-list
//! parametrisation of an arbitrary boundary vertex. All angles are radians.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{Error, Result};
use crate::hyperbolic::{HyperbolicRatio, HyperbolicSum};
use crate::quadrature::{integrate_2d, CoefficientValue, QuadratureSpec};

/// Angles within this distance of each other are treated as equal when
/// deciding which branch of a piecewise definition applies.
pub const ANGLE_TOL: f64 = 1e-12;

fn out_of_domain(function: &'static str, detail: String) -> Error {
    Error::OutOfDomain { function, detail }
}

fn check_angle(function: &'static str, name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(out_of_domain(function, format!("{name} = {x} must be positive")))
    }
}

fn check_sum(function: &'static str, sum: f64) -> Result<()> {
    if sum <= TAU + ANGLE_TOL {
        Ok(())
    } else {
        Err(out_of_domain(function, format!("angle sum {sum} exceeds 2π")))
    }
}

/// `(x − π)·cot x`, continuous through `x = π` where it equals 1.
pub fn shifted_cot(x: f64) -> f64 {
    let h = x - PI;
    let ah = h.abs();
    if ah < 1e-7 {
        1.0
    } else if ah < 1e-4 {
        let h2 = h * h;
        1.0 - h2 / 3.0 - h2 * h2 / 45.0
    } else {
        // cot has period π, so (x − π) cot x = h cot h.
        h / h.tan()
    }
}

/// Open-vertex coefficient `a(γ) = 1/π + (1 − γ/π) cot γ`, with `a(π) = 0`.
pub fn coeff_a(gamma: f64) -> Result<CoefficientValue> {
    if !(gamma > 0.0 && gamma < TAU) {
        return Err(out_of_domain("a", format!("γ = {gamma} not in (0, 2π)")));
    }
    if gamma == PI {
        return Ok(CoefficientValue::ZERO);
    }
    Ok(CoefficientValue::exact((1.0 - shifted_cot(gamma)) / PI))
}

/// Interaction term `k(α, θ, σ)` between two open wedges of widths `θ` and
/// `σ` separated by the angle `α`.
pub fn coeff_k(alpha: f64, theta: f64, sigma: f64) -> Result<CoefficientValue> {
    for (name, x) in [("α", alpha), ("θ", theta), ("σ", sigma)] {
        check_angle("k", name, x)?;
    }
    let total = sigma + theta + alpha;
    if total >= TAU {
        return Err(out_of_domain("k", format!("σ + θ + α = {total} must be below 2π")));
    }
    let v = -shifted_cot(total) - shifted_cot(alpha) + shifted_cot(sigma + alpha) + shifted_cot(theta + alpha);
    Ok(CoefficientValue::exact(v / TAU))
}

fn ch(c: f64, r: f64) -> HyperbolicSum {
    HyperbolicSum::cosh(c, r)
}

fn sh(c: f64, r: f64) -> HyperbolicSum {
    HyperbolicSum::sinh(c, r)
}

/// `[cosh(πθ/2) cosh((γ−β)θ) − cosh((π/2−γ−β)θ)] / [2 sinh((γ+β)θ) sinh(πθ/2)]`
pub fn b_integrand(gamma: f64, beta: f64) -> Result<HyperbolicRatio> {
    let num = ch(1.0, FRAC_PI_2).mul(&ch(1.0, gamma - beta)).sub(&ch(1.0, FRAC_PI_2 - gamma - beta));
    let den = sh(2.0, gamma + beta).mul(&sh(1.0, FRAC_PI_2));
    HyperbolicRatio::new(num, den)
}

/// `cosh(πθ/2)[cosh((β+α)θ) − cosh((β−α)θ)] / [sinh((γ+β+α)θ) sinh(πθ/2)]`
pub fn c_extra_integrand(gamma: f64, beta: f64, alpha: f64) -> Result<HyperbolicRatio> {
    let num = ch(1.0, FRAC_PI_2).mul(&ch(1.0, beta + alpha).sub(&ch(1.0, beta - alpha)));
    let den = sh(1.0, gamma + beta + alpha).mul(&sh(1.0, FRAC_PI_2));
    HyperbolicRatio::new(num, den)
}

/// `4 sinh((π−γ)θ) / [sinh(πθ) cosh(γθ)]`
pub fn f_integrand(gamma: f64) -> Result<HyperbolicRatio> {
    HyperbolicRatio::new(sh(4.0, PI - gamma), sh(1.0, PI).mul(&ch(1.0, gamma)))
}

/// `[4 sinh²((π−γ/2)θ) − sinh²((π−γ)θ)] / [sinh²(πθ/2) cosh(πθ)]`
pub fn g_integrand(gamma: f64) -> Result<HyperbolicRatio> {
    let s1 = sh(1.0, PI - 0.5 * gamma);
    let s2 = sh(1.0, PI - gamma);
    let num = s1.mul(&s1).scale(4.0).sub(&s2.mul(&s2));
    let s3 = sh(1.0, FRAC_PI_2);
    let den = s3.mul(&s3).mul(&ch(1.0, PI));
    HyperbolicRatio::new(num, den)
}

/// `[cosh(πθ/2) cosh((σ−2ρ)θ) − cosh((π/2−σ)θ)] / [2 sinh(σθ) sinh(πθ/2)]`
pub fn b_hat_integrand(sigma: f64, rho: f64) -> Result<HyperbolicRatio> {
    let num = ch(1.0, FRAC_PI_2).mul(&ch(1.0, sigma - 2.0 * rho)).sub(&ch(1.0, FRAC_PI_2 - sigma));
    let den = sh(2.0, sigma).mul(&sh(1.0, FRAC_PI_2));
    HyperbolicRatio::new(num, den)
}

/// `cosh(πθ/2)[cosh((σ−ρ−λ)θ) − cosh((σ−ρ+λ)θ)] / [sinh(σθ) sinh(πθ/2)]`
pub fn c_hat_extra_integrand(sigma: f64, rho: f64, lambda: f64) -> Result<HyperbolicRatio> {
    let num = ch(1.0, FRAC_PI_2).mul(&ch(1.0, sigma - rho - lambda).sub(&ch(1.0, sigma - rho + lambda)));
    let den = sh(1.0, sigma).mul(&sh(1.0, FRAC_PI_2));
    HyperbolicRatio::new(num, den)
}

/// `cosh(πθ/2) ĝ(θ) / [2 sinh(σθ) sinh(πθ/2)]` with
/// `ĝ = P(ρ,ρ′) + P(λ,λ′) − P(λ,ρ′) − P(ρ,λ′)`,
/// `P(a,b) = cosh((σ−b−a)θ) − cosh((σ−b+a)θ)`.
pub fn h_hat_integrand(sigma: f64, rho: f64, lambda: f64, rho_p: f64, lambda_p: f64) -> Result<HyperbolicRatio> {
    let p = |a: f64, b: f64| ch(1.0, sigma - b - a).sub(&ch(1.0, sigma - b + a));
    let g = p(rho, rho_p).add(&p(lambda, lambda_p)).sub(&p(lambda, rho_p)).sub(&p(rho, lambda_p));
    let num = ch(1.0, FRAC_PI_2).mul(&g);
    let den = sh(2.0, sigma).mul(&sh(1.0, FRAC_PI_2));
    HyperbolicRatio::new(num, den)
}

/// `∫₀^∞ cosh(πθ/2)(cosh(zθ) − 1) / [sinh(πθ) sinh(πθ/2)] dθ`
pub fn cot_integrand(z: f64) -> Result<HyperbolicRatio> {
    let num = ch(1.0, FRAC_PI_2).mul(&ch(1.0, z).sub(&HyperbolicSum::constant(1.0)));
    let den = sh(1.0, PI).mul(&sh(1.0, FRAC_PI_2));
    HyperbolicRatio::new(num, den)
}

pub fn coeff_b(gamma: f64, beta: f64, spec: &QuadratureSpec) -> Result<CoefficientValue> {
    check_angle("b", "γ", gamma)?;
    check_angle("b", "β", beta)?;
    check_sum("b", gamma + beta)?;
    b_integrand(gamma, beta)?.integrate(spec)
}

pub fn coeff_c(gamma: f64, beta: f64, alpha: f64, spec: &QuadratureSpec) -> Result<CoefficientValue> {
    for (name, x) in [("γ", gamma), ("β", beta), ("α", alpha)] {
        check_angle("c", name, x)?;
    }
    check_sum("c", gamma + beta + alpha)?;
    let extra = c_extra_integrand(gamma, beta, alpha)?.integrate(spec)?;
    Ok(coeff_b(gamma + beta, alpha, spec)? + coeff_b(gamma + alpha, beta, spec)? + extra)
}

pub fn coeff_f(gamma: f64, spec: &QuadratureSpec) -> Result<CoefficientValue> {
    if !(gamma > 0.0 && gamma < TAU) {
        return Err(out_of_domain("f", format!("γ = {gamma} not in (0, 2π)")));
    }
    f_integrand(gamma)?.integrate(spec)
}

pub fn coeff_g(gamma: f64, spec: &QuadratureSpec) -> Result<CoefficientValue> {
    if !(gamma > 0.0 && gamma < TAU) {
        return Err(out_of_domain("g", format!("γ = {gamma} not in (0, 2π)")));
    }
    Ok(CoefficientValue::exact(-0.75) + g_integrand(gamma)?.integrate(spec)?)
}

fn check_hat(function: &'static str, sigma: f64, lower: f64, upper: f64) -> Result<()> {
    if !(sigma > 0.0 && sigma <= TAU + ANGLE_TOL) {
        return Err(out_of_domain(function, format!("σ = {sigma} not in (0, 2π]")));
    }
    if !(lower < upper && upper < sigma) {
        return Err(out_of_domain(function, format!("need {lower} < {upper} < σ = {sigma}")));
    }
    Ok(())
}

pub fn coeff_b_hat(sigma: f64, rho: f64, spec: &QuadratureSpec) -> Result<CoefficientValue> {
    check_hat("b̂", sigma, 0.0, rho)?;
    b_hat_integrand(sigma, rho)?.integrate(spec)
}

pub fn coeff_c_hat(sigma: f64, rho: f64, lambda: f64, spec: &QuadratureSpec) -> Result<CoefficientValue> {
    check_hat("ĉ", sigma, lambda, rho)?;
    check_angle("ĉ", "λ", lambda)?;
    let extra = c_hat_extra_integrand(sigma, rho, lambda)?.integrate(spec)?;
    Ok(coeff_b_hat(sigma, rho, spec)? + coeff_b_hat(sigma, lambda, spec)? - extra)
}

/// Contribution of a single wedge `(λ, ρ)` inside a boundary vertex of
/// interior angle `σ`.
pub fn coeff_d_hat(sigma: f64, rho: f64, lambda: f64, spec: &QuadratureSpec) -> Result<CoefficientValue> {
    if !(lambda >= 0.0 && lambda < rho && rho <= sigma + ANGLE_TOL && sigma <= TAU + ANGLE_TOL) {
        return Err(out_of_domain("d̂", format!("need 0 ≤ λ = {lambda} < ρ = {rho} ≤ σ = {sigma} ≤ 2π")));
    }
    let at_start = lambda <= ANGLE_TOL;
    let at_end = (sigma - rho).abs() <= ANGLE_TOL;
    match (at_start, at_end) {
        (true, true) => Ok(CoefficientValue::ZERO),
        (true, false) => coeff_b_hat(sigma, rho, spec),
        (false, true) => coeff_b_hat(sigma, sigma - lambda, spec),
        (false, false) => coeff_c_hat(sigma, rho, lambda, spec),
    }
}

/// Interaction of two disjoint wedges `(λ, ρ)` and `(λ′, ρ′)` at a boundary
/// vertex; requires `0 ≤ λ < ρ < λ′ < ρ′ ≤ σ`.
pub fn coeff_h_hat(
    sigma: f64,
    rho: f64,
    lambda: f64,
    rho_p: f64,
    lambda_p: f64,
    spec: &QuadratureSpec,
) -> Result<CoefficientValue> {
    let ordered = lambda >= 0.0 && lambda < rho && rho < lambda_p && lambda_p < rho_p && rho_p <= sigma + ANGLE_TOL;
    if !ordered || sigma > TAU + ANGLE_TOL {
        return Err(out_of_domain(
            "ĥ",
            format!("need 0 ≤ λ={lambda} < ρ={rho} < λ′={lambda_p} < ρ′={rho_p} ≤ σ={sigma} ≤ 2π"),
        ));
    }
    h_hat_integrand(sigma, rho, lambda, rho_p, lambda_p)?.integrate(spec)
}

fn check_wedges(sigma: f64, wedges: &[(f64, f64)]) -> Result<()> {
    if wedges.is_empty() {
        return Err(Error::OverlappingWedges("empty wedge list".into()));
    }
    let mut prev_end = f64::NEG_INFINITY;
    for &(l, r) in wedges {
        let first = prev_end == f64::NEG_INFINITY;
        let ok = l < r && (if first { l >= 0.0 } else { l > prev_end }) && r <= sigma + ANGLE_TOL;
        if !ok {
            return Err(Error::OverlappingWedges(format!("wedges {wedges:?} in [0, {sigma}]")));
        }
        prev_end = r;
    }
    Ok(())
}

/// `(t^{1/2} multiplier, t coefficient)` of a boundary vertex described by
/// its sorted wedge list. The multiplier counts the open edges at the
/// vertex: `2k − [λ₁ = 0] − [ρ_k = σ]`.
pub fn generalized_vertex_coeff(
    sigma: f64,
    wedges: &[(f64, f64)],
    spec: &QuadratureSpec,
) -> Result<(i32, CoefficientValue)> {
    if !(sigma > 0.0 && sigma <= TAU + ANGLE_TOL) {
        return Err(out_of_domain("generalized vertex", format!("σ = {sigma} not in (0, 2π]")));
    }
    check_wedges(sigma, wedges)?;
    let k = wedges.len() as i32;
    let starts_at_zero = wedges[0].0 <= ANGLE_TOL;
    let ends_at_sigma = (sigma - wedges[wedges.len() - 1].1).abs() <= ANGLE_TOL;
    let multiplier = 2 * k - starts_at_zero as i32 - ends_at_sigma as i32;

    let mut total = CoefficientValue::ZERO;
    for &(l, r) in wedges {
        total = total + coeff_d_hat(sigma, r, l, spec)?;
    }
    for i in 0..wedges.len() {
        for j in i + 1..wedges.len() {
            let (l, r) = wedges[i];
            let (lp, rp) = wedges[j];
            total = total + coeff_h_hat(sigma, r, l, rp, lp, spec)?.scale(2.0);
        }
    }
    Ok((multiplier, total))
}

/// Coefficient of an interior vertex where several wedges of the subdomain
/// meet. Wedges are `(start, end)` directions, counterclockwise, sorted by
/// start, with `end − start` the wedge angle; the total must stay below 2π.
pub fn open_multi_coeff(wedges: &[(f64, f64)]) -> Result<CoefficientValue> {
    if wedges.is_empty() {
        return Err(Error::OverlappingWedges("empty wedge list".into()));
    }
    let first_start = wedges[0].0;
    for (i, &(l, r)) in wedges.iter().enumerate() {
        let next_start = if i + 1 < wedges.len() { wedges[i + 1].0 } else { first_start + TAU };
        if !(l < r && r < next_start) {
            return Err(Error::OverlappingWedges(format!("open wedges {wedges:?}")));
        }
    }
    let mut total = CoefficientValue::ZERO;
    for &(l, r) in wedges {
        total = total + coeff_a(r - l)?;
    }
    for (i, &(li, ri)) in wedges.iter().enumerate() {
        for (j, &(lj, rj)) in wedges.iter().enumerate() {
            if i != j {
                let gap = (lj - ri).rem_euclid(TAU);
                total = total + coeff_k(gap, ri - li, rj - lj)?;
            }
        }
    }
    Ok(total)
}

/// The cusp correction
/// `E(R,t) = (R/√π) √t ∫₁^∞ v⁻² ∫₀¹ y (1−y²)^{-1/2} exp(−R²y²v²/4t) dy dv`,
/// computed after substituting `v = 1/w`, `y = sin u`, which removes both the
/// infinite range and the endpoint singularity.
pub fn cusp_term(r: f64, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(r > 0.0 && t > 0.0) {
        return Err(out_of_domain("cusp term", format!("R = {r}, t = {t} must be positive")));
    }
    let c = r * r / (4.0 * t);
    let inner = |w: f64, u: f64| {
        if w <= 0.0 {
            0.0
        } else {
            let s = u.sin();
            s * (-c * s * s / (w * w)).exp()
        }
    };
    let v = integrate_2d(inner, (0.0, 1.0), (0.0, FRAC_PI_2), spec)?;
    Ok(r / PI.sqrt() * t.sqrt() * v.value)
}

/// `|∫ cosh(πθ/2)(cosh(zθ)−1)/(sinh(πθ) sinh(πθ/2)) dθ − (1/π − (z/π) cot z)|`.
pub fn cot_identity_residual(z: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(z.abs() < PI) {
        return Err(out_of_domain("cot identity", format!("|z| = {} must be below π", z.abs())));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let lhs = cot_integrand(z)?.integrate(spec)?.value;
    // z cot z = (x − π) cot x at x = z + π
    let rhs = (1.0 - shifted_cot(z + PI)) / PI;
    Ok((lhs - rhs).abs())
}
