//! Assembly of `H(t) ≈ c0 + c_half·t^{1/2} + c1·t` and the structural checks
//! built on it.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::corners::{coeff_a, coeff_b, coeff_c, cusp_term, generalized_vertex_coeff, open_multi_coeff};
use crate::error::{Error, Result};
use crate::geometry::{
    build_domain_pair, complement, partition, reflect_and_double_rings, ClassifiedVertex, DomainPair, EdgeKind,
    GeometryOptions, PartitionSpec, Piece, Point, VertexKind,
};
use crate::quadrature::{CoefficientValue, QuadratureSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexContribution {
    pub kind: String,
    pub location: Point,
    pub angles: Vec<f64>,
    pub value: f64,
    pub err_est: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionCoefficients {
    pub c0: f64,
    pub c_half: f64,
    pub c1: f64,
    /// Accumulated quadrature error bound on `c1`.
    pub c1_err: f64,
    pub per_vertex: Vec<VertexContribution>,
}

impl ExpansionCoefficients {
    pub fn triple(&self) -> [f64; 3] {
        [self.c0, self.c_half, self.c1]
    }
}

/// Corner coefficient of a single classified vertex.
pub fn vertex_coefficient(v: &ClassifiedVertex, spec: &QuadratureSpec) -> Result<CoefficientValue> {
    match &v.kind {
        VertexKind::Open { gamma } => coeff_a(*gamma),
        VertexKind::OpenMulti { wedges } => open_multi_coeff(wedges),
        VertexKind::Non { gamma, beta } => coeff_b(*gamma, *beta, spec),
        VertexKind::Noon { gamma, beta, alpha, .. } => coeff_c(*gamma, *beta, *alpha, spec),
        VertexKind::Nn { .. } => Ok(CoefficientValue::ZERO),
        VertexKind::Generalized { sigma, wedges } => Ok(generalized_vertex_coeff(*sigma, wedges, spec)?.1),
    }
}

pub fn expansion_coefficients(pair: &DomainPair, spec: &QuadratureSpec) -> Result<ExpansionCoefficients> {
    let mut per_vertex = Vec::with_capacity(pair.vertices.len());
    let mut c1 = CoefficientValue::ZERO;
    for v in &pair.vertices {
        let value = vertex_coefficient(v, spec)?;
        c1 = c1 + value;
        per_vertex.push(VertexContribution {
            kind: v.kind.name().to_string(),
            location: v.location,
            angles: v.kind.angles(),
            value: value.value,
            err_est: value.err_est,
        });
    }
    Ok(ExpansionCoefficients {
        c0: pair.area(),
        c_half: -pair.open_length() / PI.sqrt(),
        c1: c1.value,
        c1_err: c1.err_est,
        per_vertex,
    })
}

pub fn eval_expansion(coeffs: &ExpansionCoefficients, t: f64) -> f64 {
    coeffs.c0 + coeffs.c_half * t.sqrt() + coeffs.c1 * t
}

/// Small-time behaviour of the heat content of a single partition piece
/// (or of an interior vertex sector merged with its two cusps).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PieceContribution {
    pub piece: Piece,
    /// Vertex the piece belongs to, for sectors and cusps.
    pub vertex: Option<usize>,
    pub area: f64,
    pub t_half: f64,
    pub t_coeff: f64,
    /// Multiple of the cusp correction `E(R,t)` carried by the piece.
    pub cusp_sign: i32,
    /// `cusp_sign · E(R,t)` when a time was supplied.
    pub cusp_value: Option<f64>,
}

fn merges_cusps(kind: &VertexKind) -> bool {
    matches!(kind, VertexKind::Open { .. } | VertexKind::OpenMulti { .. })
}

/// Contribution of one piece. Cusps at interior vertices return `None`:
/// they are reported together with their vertex sector.
pub fn model_piece_contribution(
    piece: &Piece,
    pair: &DomainPair,
    part: &PartitionSpec,
    t: Option<f64>,
    spec: &QuadratureSpec,
) -> Result<Option<PieceContribution>> {
    let sqrt_pi = PI.sqrt();
    let cusp_e = |sign: i32| -> Result<Option<f64>> {
        match t {
            Some(t) if sign != 0 => Ok(Some(sign as f64 * cusp_term(part.r, t, spec)?)),
            Some(_) => Ok(Some(0.0)),
            None => Ok(None),
        }
    };
    let plain = |vertex: Option<usize>| PieceContribution {
        piece: piece.clone(),
        vertex,
        area: piece.area(),
        t_half: 0.0,
        t_coeff: 0.0,
        cusp_sign: 0,
        cusp_value: t.map(|_| 0.0),
    };
    let out = match piece {
        Piece::Core { .. } => plain(None),
        Piece::Rectangle { width, kind, .. } => match kind {
            EdgeKind::Neumann => plain(None),
            EdgeKind::Open => PieceContribution { t_half: -width / sqrt_pi, ..plain(None) },
        },
        Piece::Cusp { vertex, kind, .. } => {
            if merges_cusps(&pair.vertices[*vertex].kind) {
                return Ok(None);
            }
            match kind {
                EdgeKind::Neumann => plain(Some(*vertex)),
                EdgeKind::Open => PieceContribution { cusp_sign: -1, cusp_value: cusp_e(-1)?, ..plain(Some(*vertex)) },
            }
        }
        Piece::Sector { vertex, radius, .. } => {
            let v = &pair.vertices[*vertex];
            let coeff = vertex_coefficient(v, spec)?.value;
            let open = v.open_edges as f64;
            match &v.kind {
                VertexKind::Nn { .. } => plain(Some(*vertex)),
                VertexKind::Open { .. } | VertexKind::OpenMulti { .. } => {
                    let cusp_area: f64 = part
                        .pieces
                        .iter()
                        .filter(|p| matches!(p, Piece::Cusp { vertex: w, .. } if w == vertex))
                        .map(Piece::area)
                        .sum();
                    PieceContribution {
                        area: piece.area() + cusp_area,
                        t_half: -open * radius / sqrt_pi,
                        t_coeff: coeff,
                        ..plain(Some(*vertex))
                    }
                }
                VertexKind::Non { .. } | VertexKind::Noon { .. } | VertexKind::Generalized { .. } => {
                    let sign = match &v.kind {
                        VertexKind::Non { .. } => 1,
                        VertexKind::Noon { .. } => 2,
                        VertexKind::Generalized { sigma, wedges } => generalized_vertex_coeff(*sigma, wedges, spec)?.0,
                        _ => unreachable!(),
                    };
                    PieceContribution {
                        t_half: -(sign as f64) * radius / sqrt_pi,
                        t_coeff: coeff,
                        cusp_sign: sign,
                        cusp_value: cusp_e(sign)?,
                        ..plain(Some(*vertex))
                    }
                }
            }
        }
    };
    Ok(Some(out))
}

pub fn piece_contributions(
    pair: &DomainPair,
    part: &PartitionSpec,
    t: Option<f64>,
    spec: &QuadratureSpec,
) -> Result<Vec<PieceContribution>> {
    let mut out = Vec::new();
    for piece in &part.pieces {
        if let Some(c) = model_piece_contribution(piece, pair, part, t, spec)? {
            out.push(c);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PieceSumReport {
    pub expected: [f64; 3],
    pub summed: [f64; 3],
    /// `(vertex index, Σ cusp signs)` for every vertex group.
    pub cusp_signs: Vec<(usize, i32)>,
    pub cusp_value_total: Option<f64>,
    pub open_cusps: usize,
    pub max_diff: f64,
}

/// Checks that the piece contributions add up to the expansion coefficients
/// and that every cusp correction is cancelled inside its vertex group.
pub fn piece_sum_check(pair: &DomainPair, t: Option<f64>, spec: &QuadratureSpec) -> Result<PieceSumReport> {
    let coeffs = expansion_coefficients(pair, spec)?;
    let part = partition(pair)?;
    let contribs = piece_contributions(pair, &part, t, spec)?;
    let summed = [
        contribs.iter().map(|c| c.area).sum::<f64>(),
        contribs.iter().map(|c| c.t_half).sum::<f64>(),
        contribs.iter().map(|c| c.t_coeff).sum::<f64>(),
    ];
    let expected = coeffs.triple();
    let mut cusp_signs: Vec<(usize, i32)> = pair.vertices.iter().map(|v| (v.index, 0)).collect();
    for c in &contribs {
        if let Some(v) = c.vertex {
            cusp_signs[v].1 += c.cusp_sign;
        }
    }
    let open_cusps = contribs.iter().filter(|c| c.cusp_sign < 0).count();
    let cusp_value_total = t.map(|_| contribs.iter().filter_map(|c| c.cusp_value).sum::<f64>());
    let diffs = [
        (summed[0] - expected[0]).abs() / expected[0].abs().max(1.0),
        (summed[1] - expected[1]).abs(),
        (summed[2] - expected[2]).abs(),
    ];
    let max_diff = diffs.iter().copied().fold(0.0, f64::max);
    let report = PieceSumReport { expected, summed, cusp_signs, cusp_value_total, open_cusps, max_diff };

    let mut problems = Vec::new();
    if max_diff > 1e-9 {
        problems.push(format!("coefficients differ: summed {summed:?}, expected {expected:?}"));
    }
    for &(v, s) in &report.cusp_signs {
        if s != 0 {
            let p = pair.points[v];
            problems.push(format!("vertex ({}, {}) leaves {s} uncancelled cusp terms", p.x, p.y));
        }
    }
    if let Some(total) = cusp_value_total {
        if total.abs() > 1e-12 {
            problems.push(format!("cusp corrections sum to {total}"));
        }
    }
    if problems.is_empty() {
        Ok(report)
    } else {
        Err(Error::CancellationFailure(problems.join("; ")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub first: [f64; 3],
    pub second: [f64; 3],
    /// Absolute differences of the compared coefficients.
    pub diffs: Vec<f64>,
    pub tol: f64,
    pub passed: bool,
}

fn compare(first: [f64; 3], second: [f64; 3], which: &[usize], tol: f64) -> ComparisonReport {
    let diffs: Vec<f64> = which.iter().map(|&i| (first[i] - second[i]).abs()).collect();
    let passed = diffs.iter().all(|&d| d <= tol);
    ComparisonReport { first, second, diffs, tol, passed }
}

/// Compares all three coefficients of two pairs.
pub fn compare_coefficients(a: &DomainPair, b: &DomainPair, spec: &QuadratureSpec, tol: f64) -> Result<ComparisonReport> {
    let ca = expansion_coefficients(a, spec)?.triple();
    let cb = expansion_coefficients(b, spec)?.triple();
    Ok(compare(ca, cb, &[0, 1, 2], tol))
}

/// Builds `D ∖ closure(D̃)` as a second subdomain and compares `c_half` and `c1`.
pub fn isoflow_check(pair: &DomainPair, spec: &QuadratureSpec, tol: f64) -> Result<(DomainPair, ComparisonReport)> {
    let rings = complement(pair)?;
    let opts = GeometryOptions { eps: Some(pair.eps), allow_generalized: pair.allow_generalized };
    let other = build_domain_pair(pair.outer.vertices(), &rings, &opts)?;
    let ca = expansion_coefficients(pair, spec)?.triple();
    let cb = expansion_coefficients(&other, spec)?.triple();
    Ok((other, compare(ca, cb, &[1, 2], tol)))
}

/// Doubles a rectangle and its subdomain across a domain edge; the doubled
/// pair's coefficients must be twice the original ones.
pub fn reflect_and_double(
    pair: &DomainPair,
    edge_index: usize,
    spec: &QuadratureSpec,
    tol: f64,
) -> Result<(DomainPair, ComparisonReport)> {
    let (outer, rings) = reflect_and_double_rings(pair, edge_index)?;
    let opts = GeometryOptions { eps: Some(pair.eps), allow_generalized: pair.allow_generalized };
    let doubled = build_domain_pair(&outer, &rings, &opts)?;
    let c = expansion_coefficients(pair, spec)?.triple();
    let cd = expansion_coefficients(&doubled, spec)?.triple();
    Ok((doubled, compare([2.0 * c[0], 2.0 * c[1], 2.0 * c[2]], cd, &[0, 1, 2], tol)))
}
