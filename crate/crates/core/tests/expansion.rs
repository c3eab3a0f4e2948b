mod common;

use std::f64::consts::PI;

use common::*;
use polyheat::corners::{coeff_b, cusp_term};
use polyheat::expansion::*;
use polyheat::geometry::{partition, Piece, VertexKind};
use polyheat::oracles::{SpectralSpec, SpectralTable};
use polyheat::{Error, QuadratureSpec};

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

#[test]
fn expansion_matches_spectral_series() {
    // Remainders are O(e^{-c/t}); at these times they are far below the tolerance.
    for (name, pair) in [
        ("half square", half_square()),
        ("triangle", triangle()),
        ("noon triangle", noon_triangle()),
        ("interior triangle", interior_triangle()),
        ("slanted notch", slanted_notch()),
    ] {
        let coeffs = expansion_coefficients(&pair, &spec()).unwrap();
        let table = SpectralTable::from_pair(&pair, &SpectralSpec::uniform(1500)).unwrap();
        for t in [2e-4, 4e-4] {
            let h = table.heat_content(t).unwrap().value;
            let e = eval_expansion(&coeffs, t);
            assert!((h - e).abs() < 1e-8, "{name} at t={t}: spectral {h} vs expansion {e}");
        }
    }
}

#[test]
fn triangle_expansion() {
    let c = expansion_coefficients(&triangle(), &spec()).unwrap();
    assert_eq!(c.c0, 0.5);
    assert!((c.c_half + 2f64.sqrt() / PI.sqrt()).abs() < 1e-15);
    assert!((c.c1 - 2.0 / PI).abs() < 1e-12);
    assert_eq!(c.per_vertex.len(), 3);
    assert!(c.c1_err < 1e-9);
}

#[test]
fn triangle_complement() {
    let (other, report) = isoflow_check(&triangle(), &spec(), 1e-8).unwrap();
    assert!(report.passed, "{report:?}");
    assert!((other.area() - 0.5).abs() < 1e-15);
    let (_, report) = isoflow_check(&slanted_notch(), &spec(), 1e-8).unwrap();
    assert!(report.passed, "{report:?}");
}

#[test]
fn interior_subdomain_complement_is_rejected() {
    assert!(matches!(isoflow_check(&interior_triangle(), &spec(), 1e-8), Err(Error::ComplementNotPolygonal(_))));
    assert!(matches!(isoflow_check(&full_square(), &spec(), 1e-8), Err(Error::ComplementNotPolygonal(_))));
}

fn bottom_edge(pair: &polyheat::DomainPair) -> usize {
    (0..pair.outer.len())
        .find(|&i| {
            let (a, b) = pair.outer.edge(i);
            a.y.abs() < 1e-12 && b.y.abs() < 1e-12
        })
        .unwrap()
}

#[test]
fn doubling_the_triangle_makes_a_noon_vertex() {
    let tri = triangle();
    let (doubled, report) = reflect_and_double(&tri, bottom_edge(&tri), &spec(), 1e-9).unwrap();
    assert!(report.passed, "{report:?}");
    let noon: Vec<_> = doubled.vertices.iter().filter(|v| matches!(v.kind, VertexKind::Noon { .. })).collect();
    assert_eq!(noon.len(), 1);
    assert!(noon[0].location.dist([1.0, 0.0].into()) < 1e-12);
    let c = vertex_coefficient(noon[0], &spec()).unwrap().value;
    let b = coeff_b(PI / 4.0, PI / 4.0, &spec()).unwrap().value;
    assert!((c - 2.0 * b).abs() < 1e-10);
}

#[test]
fn doubling_the_half_square() {
    let half = half_square();
    for edge in 0..4 {
        let (_, report) = reflect_and_double(&half, edge, &spec(), 1e-9).unwrap();
        assert!(report.passed, "edge {edge}: {report:?}");
    }
}

#[test]
fn doubling_needs_a_rectangle() {
    let outer = pts(&[[0.0, 0.0], [2.0, 0.0], [1.0, 1.0]]);
    let p = pair(&outer, &[pts(&[[0.5, 0.1], [1.5, 0.1], [1.0, 0.5]])]);
    assert!(matches!(reflect_and_double(&p, 0, &spec(), 1e-9), Err(Error::NotRectangle)));
}

#[test]
fn piece_model_values() {
    let pair = slanted_notch();
    let part = partition(&pair).unwrap();
    let contribs = piece_contributions(&pair, &part, Some(1e-3), &spec()).unwrap();
    for c in &contribs {
        match &c.piece {
            Piece::Core { .. } => assert_eq!((c.t_half, c.t_coeff, c.cusp_sign), (0.0, 0.0, 0)),
            Piece::Rectangle { width, kind, .. } => {
                let expected = if *kind == polyheat::geometry::EdgeKind::Open { -width / PI.sqrt() } else { 0.0 };
                assert_eq!(c.t_half, expected);
            }
            Piece::Cusp { kind, .. } => {
                let open = *kind == polyheat::geometry::EdgeKind::Open;
                assert_eq!(c.cusp_sign, if open { -1 } else { 0 });
                let e = cusp_term(part.r, 1e-3, &spec()).unwrap();
                assert_eq!(c.cusp_value.unwrap(), c.cusp_sign as f64 * e);
            }
            Piece::Sector { .. } => assert!(c.vertex.is_some()),
        }
    }
}

#[test]
fn cusp_term_against_tensor_simpson() {
    // ∫₀¹ dw ∫₀^{π/2} sin u · exp(−R² sin²u / (4t w²)) du by composite Simpson.
    for &(r, t) in &[(0.25, 1e-2), (0.1, 1e-3), (0.5, 0.1)] {
        let n = 1600;
        let (hw, hu) = (1.0 / n as f64, PI / 2.0 / n as f64);
        let simpson = |i: usize| if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        let mut total = 0.0;
        for i in 1..=n {
            let w = i as f64 * hw;
            for j in 0..=n {
                let u = j as f64 * hu;
                let s = u.sin();
                total += simpson(i) * simpson(j) * s * (-r * r * s * s / (4.0 * t * w * w)).exp();
            }
        }
        let direct = r / PI.sqrt() * t.sqrt() * total * hw * hu / 9.0;
        let lib = cusp_term(r, t, &spec()).unwrap();
        assert!((lib - direct).abs() < 1e-8, "R={r} t={t}: {lib} vs {direct}");
    }
}

#[test]
fn cusp_corrections_cancel_in_time() {
    for (name, pair) in all_fixtures() {
        let r = piece_sum_check(&pair, Some(5e-3), &spec()).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(r.cusp_value_total.unwrap().abs() < 1e-12);
        assert!(r.cusp_signs.iter().all(|&(_, s)| s == 0));
    }
}

#[test]
fn expansion_tends_to_area() {
    let c = expansion_coefficients(&noon_triangle(), &spec()).unwrap();
    assert_eq!(eval_expansion(&c, 0.0), c.c0);
    assert!((eval_expansion(&c, 1e-12) - c.c0).abs() < 1e-5);
}
