//! End-to-end acceptance checks. Each test prints a single PASS/FAIL line.

mod common;

use std::f64::consts::PI;
use std::io::Write;
use std::time::{Duration, Instant};

use common::*;
use polyheat::corners::*;
use polyheat::expansion::{expansion_coefficients, isoflow_check, piece_contributions, piece_sum_check};
use polyheat::geometry::{partition, Point, Polygon, VertexKind};
use polyheat::oracles::{exit_tail_probability, rbm_heat_content, McSpec, SpectralSpec, SpectralTable};
use polyheat::QuadratureSpec;

fn report(name: &str, ok: bool, detail: String) {
    // Written to the stdout handle directly so the line survives test output capture.
    let line = format!("{} {name}: {detail}\n", if ok { "PASS" } else { "FAIL" });
    std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
    assert!(ok, "{name}: {detail}");
}

fn sci(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.2e}")).collect();
    format!("[{}]", parts.join(", "))
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

#[test]
fn criterion_01_identity_suite() {
    let s = spec();
    let start = Instant::now();
    let mut worst = [0.0_f64; 3];

    // c(2γ, β, β) = 2b(γ, β), 100 points with γ + β < π.
    for i in 0..10 {
        let total = PI * (0.05 + 0.9 * (i as f64 + 0.5) / 10.0);
        for j in 0..10 {
            let gamma = total * (j as f64 + 1.0) / 11.0;
            let beta = total - gamma;
            let lhs = coeff_c(2.0 * gamma, beta, beta, &s).unwrap().value;
            let rhs = 2.0 * coeff_b(gamma, beta, &s).unwrap().value;
            worst[0] = worst[0].max((lhs - rhs).abs());
        }
    }
    // b(γ, π − γ) = a(2γ)/2, 50 points.
    for i in 0..50 {
        let gamma = PI * (i as f64 + 0.5) / 50.0;
        let lhs = coeff_b(gamma, PI - gamma, &s).unwrap().value;
        let rhs = 0.5 * coeff_a(2.0 * gamma).unwrap().value;
        worst[1] = worst[1].max((lhs - rhs).abs());
    }
    // Both decompositions of 2c(γ, β, α) with γ + β + α = π, α ≤ β; 50 points.
    for i in 0..10 {
        let gamma = PI * (i as f64 + 0.5) / 10.0;
        for j in 0..5 {
            let alpha = (PI - gamma) * (j as f64 + 1.0) / 10.0;
            let beta = PI - gamma - alpha;
            let two_c = 2.0 * coeff_c(gamma, beta, alpha, &s).unwrap().value;
            let first = 2.0 * coeff_a(gamma).unwrap().value + 2.0 * coeff_k(2.0 * alpha, gamma, gamma).unwrap().value;
            let second = coeff_a(2.0 * alpha).unwrap().value
                + coeff_a(2.0 * beta).unwrap().value
                + 2.0 * coeff_k(gamma, 2.0 * alpha, 2.0 * beta).unwrap().value;
            worst[2] = worst[2].max((two_c - first).abs()).max((two_c - second).abs());
        }
    }
    let elapsed = start.elapsed();
    let ok = worst.iter().all(|&w| w < 1e-8) && elapsed < Duration::from_secs(60);
    report("identity suite", ok, format!("max residuals {}, {elapsed:.2?}", sci(&worst)));
}

#[test]
fn criterion_02_cot_identity() {
    let s = spec();
    let mut worst = 0.0_f64;
    for i in 0..50 {
        let z = -0.99 * PI + 1.98 * PI * (i as f64 + 0.5) / 50.0;
        worst = worst.max(cot_identity_residual(z, &s).unwrap());
    }
    report("cot identity", worst < 1e-8, format!("max residual {worst:.2e} over 50 points"));
}

#[test]
fn criterion_03_spot_values() {
    let s = spec();
    let b = coeff_b(PI / 2.0, PI / 2.0, &s).unwrap().value;
    let f_pi = coeff_f(PI, &s).unwrap().value;
    let f_half = coeff_f(PI / 2.0, &s).unwrap().value;
    let g_pi = coeff_g(PI, &s).unwrap().value;
    let a_pi = coeff_a(PI).unwrap().value;
    let ok = b.abs() < 1e-12
        && f_pi == 0.0
        && (f_half - 4.0 / PI).abs() < 1e-9
        && (g_pi - 1.25).abs() < 1e-9
        && a_pi == 0.0;
    report(
        "spot values",
        ok,
        format!("b(π/2,π/2)={b:e} f(π)={f_pi:e} f(π/2)-4/π={:e} g(π)-5/4={:e} a(π)={a_pi:e}", f_half - 4.0 / PI, g_pi - 1.25),
    );
}

#[test]
fn criterion_04_half_square_spectral() {
    let start = Instant::now();
    let pair = half_square();
    let table = SpectralTable::from_pair(&pair, &SpectralSpec::uniform(2000)).unwrap();
    let ts = [1e-2, 5e-3, 2.5e-3, 1e-3];
    let residuals: Vec<f64> = ts
        .iter()
        .map(|&t| (table.heat_content(t).unwrap().value - (0.5 - t.sqrt() / PI.sqrt())).abs())
        .collect();
    let elapsed = start.elapsed();
    let small_ok = residuals[2] < 1e-6 && residuals[3] < 1e-6;
    // Exponentially small remainders: never growing as t shrinks.
    let decreasing = residuals.windows(2).all(|w| w[1] <= w[0] + 1e-15);
    let ok = small_ok && decreasing && elapsed < Duration::from_secs(30);
    report("half-square spectral", ok, format!("residuals {}, {elapsed:.2?}", sci(&residuals)));
}

#[test]
fn criterion_05_triangle_slope() {
    let pair = triangle();
    let table = SpectralTable::from_pair(&pair, &SpectralSpec::uniform(2000)).unwrap();
    let slope = |t: f64| (table.heat_content(t).unwrap().value - 0.5 + 2f64.sqrt() * t.sqrt() / PI.sqrt()) / t;
    // Frozen quadrature value of b(π/4, π/4).
    let target = 2.0 / PI;
    let ts = [1e-4, 2e-4, 3e-4, 5e-4, 7e-4, 1e-3];
    let mut worst = 0.0_f64;
    for &t in &ts[..ts.len() - 1] {
        let extrapolated = 2.0 * slope(t / 2.0) - slope(t);
        worst = worst.max((extrapolated - target).abs() / target);
    }
    for &t in &ts {
        worst = worst.max((slope(t) - target).abs() / target);
    }
    let b = coeff_b(PI / 4.0, PI / 4.0, &spec()).unwrap().value;
    let ok = worst < 0.01 && (2.0 * b - target).abs() < 1e-10;
    report("triangle slope", ok, format!("max relative deviation {worst:.2e}, 2b(π/4,π/4)={:.12}", 2.0 * b));
}

#[test]
fn criterion_06_piece_sums() {
    let s = spec();
    let mut worst = 0.0_f64;
    let mut counts_ok = true;
    let mut non_seen = 0;
    let mut noon_seen = 0;
    for (name, pair) in all_fixtures() {
        let r = piece_sum_check(&pair, Some(1e-3), &s).unwrap_or_else(|e| panic!("{name}: {e}"));
        worst = worst.max(r.max_diff);
        let part = partition(&pair).unwrap();
        let contribs = piece_contributions(&pair, &part, None, &s).unwrap();
        for v in &pair.vertices {
            let open_cusps = contribs.iter().filter(|c| c.vertex == Some(v.index) && c.cusp_sign < 0).count();
            match v.kind {
                VertexKind::Non { .. } => {
                    non_seen += 1;
                    counts_ok &= open_cusps == 1;
                }
                VertexKind::Noon { .. } => {
                    noon_seen += 1;
                    counts_ok &= open_cusps == 2;
                }
                _ => {}
            }
        }
    }
    let ok = worst <= 1e-9 && counts_ok && non_seen > 0 && noon_seen > 0;
    report(
        "piece-sum cancellation",
        ok,
        format!("max diff {worst:.2e}; cusp counts ok = {counts_ok} over {non_seen} NON and {noon_seen} NOON vertices"),
    );
}

#[test]
fn criterion_07_iso_heat_content() {
    let s = spec();
    let triples: Vec<[f64; 3]> = tile_pairs().iter().map(|p| expansion_coefficients(p, &s).unwrap().triple()).collect();
    let mut worst = 0.0_f64;
    for (i, a) in triples.iter().enumerate() {
        for b in &triples[i + 1..] {
            for (x, y) in a.iter().zip(b) {
                worst = worst.max((x - y).abs());
            }
        }
    }
    let expected = [5.76, -(7.2 + 4.8 * 2f64.sqrt()) / PI.sqrt(), 8.0 / PI + 4.0];
    let closed_form = (0..3).all(|k| (triples[0][k] - expected[k]).abs() < 1e-8);
    let (_, cmp) = isoflow_check(&triangle(), &s, 1e-8).unwrap();
    let ok = worst < 1e-8 && closed_form && cmp.passed;
    report(
        "iso-heat-content",
        ok,
        format!("pairwise max diff {worst:.2e}, closed form {closed_form}, triangle complement diffs {}", sci(&cmp.diffs)),
    );
}

#[test]
fn criterion_08_generalized_vertices() {
    let s = spec();
    let sigmas = [PI / 2.0, 0.8 * PI, PI, 1.5 * PI, 2.0 * PI];
    let splits = [(0.25, 0.6), (0.1, 0.9), (0.4, 0.5), (0.3, 0.75)];
    let mut worst_single = 0.0_f64;
    let mut worst_split = 0.0_f64;
    let mut multipliers_ok = true;
    for &sigma in &sigmas {
        for &(l, r) in &splits {
            let (lambda, rho) = (l * sigma, r * sigma);
            let c_hat = coeff_c_hat(sigma, rho, lambda, &s).unwrap().value;
            let (m1, single) = generalized_vertex_coeff(sigma, &[(lambda, rho)], &s).unwrap();
            let (m2, split) = generalized_vertex_coeff(sigma, &[(0.0, lambda), (rho, sigma)], &s).unwrap();
            multipliers_ok &= m1 == 2 && m2 == 2;
            worst_single = worst_single.max((single.value - c_hat).abs());
            worst_split = worst_split.max((split.value - c_hat).abs());
        }
    }
    let ok = multipliers_ok && worst_single < 1e-7 && worst_split < 1e-7;
    report(
        "generalized vertices",
        ok,
        format!("k=1 max diff {worst_single:.2e}, split k=2 max diff {worst_split:.2e} on 20 triples"),
    );
}

#[test]
fn criterion_09_monte_carlo() {
    let start = Instant::now();
    let pair = half_square();
    let t = 1e-2;
    let mc = rbm_heat_content(&pair, t, &McSpec::new(100_000, 10_000, 20_240_601)).unwrap();
    let sp = SpectralTable::from_pair(&pair, &SpectralSpec::uniform(2000)).unwrap().heat_content(t).unwrap();
    let sigma = (mc.err * mc.err + sp.err * sp.err).sqrt();
    let agree = (mc.value - sp.value).abs() <= 3.0 * sigma;

    let square = Polygon::new(&unit_square(), 1e-12).unwrap();
    let x = Point::new(0.3, 0.4);
    let mut tails_ok = true;
    let mut worst_margin = f64::INFINITY;
    for &delta in &[0.05, 0.1, 0.2] {
        for &tt in &[1e-3, 2.5e-3, 5e-3] {
            let p = exit_tail_probability(&square, x, delta, tt, &McSpec::new(20_000, 1_000, 7)).unwrap();
            let bound = 4.0 * (-delta * delta / (8.0 * tt)).exp() + 3.0 * p.err;
            tails_ok &= p.value <= bound;
            worst_margin = worst_margin.min(bound - p.value);
        }
    }
    let elapsed = start.elapsed();
    let ok = agree && tails_ok && elapsed < Duration::from_secs(600);
    report(
        "monte carlo",
        ok,
        format!(
            "mc {:.6} ± {:.1e} vs spectral {:.6} ({:.2}σ); exit tails ok = {tails_ok} (min margin {worst_margin:.2e}); {elapsed:.2?}",
            mc.value,
            mc.err,
            sp.value,
            (mc.value - sp.value).abs() / sigma
        ),
    );
}

#[test]
fn criterion_10_spectral_structure() {
    let pair = half_square();
    let table = SpectralTable::from_pair(&pair, &SpectralSpec::uniform(2000)).unwrap();
    let ts: Vec<f64> = (0..20).map(|i| 1e-3 * 1000f64.powf(i as f64 / 19.0)).collect();
    let hs: Vec<f64> = ts.iter().map(|&t| table.heat_content(t).unwrap().value).collect();
    let decreasing = hs.windows(2).all(|w| w[1] < w[0]);
    let slopes: Vec<f64> = (0..19).map(|i| (hs[i + 1] - hs[i]) / (ts[i + 1] - ts[i])).collect();
    let convex = slopes.windows(2).all(|w| w[1] > w[0]);
    let h50 = table.heat_content(50.0).unwrap().value;
    let limit = pair.area() * pair.area() / pair.outer.area();
    let ok = decreasing && convex && (h50 - limit).abs() < 1e-6;
    report(
        "spectral structure",
        ok,
        format!("decreasing {decreasing}, convex {convex}, H(50) - |D̃|²/|D| = {:.2e}", h50 - limit),
    );
}
