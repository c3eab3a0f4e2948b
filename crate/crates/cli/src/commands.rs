use std::f64::consts::{PI, TAU};

use anyhow::{bail, Context, Result};
use polyheat::corners::*;
use polyheat::expansion::{eval_expansion, expansion_coefficients, isoflow_check};
use polyheat::geometry::DomainPair;
use polyheat::oracles::{rbm_heat_content, McSpec, OracleResult, SpectralSpec, SpectralTable};
use polyheat::{CoefficientValue, QuadratureSpec};
use rayon::prelude::*;

use crate::output::{Cell, Report};
use crate::{load_geometry, Command, Function, OracleConfig, RunConfig};

const VALIDATE_TOL: f64 = 1e-6;
const IDENTITY_TOL: f64 = 1e-8;
const ISOFLOW_TOL: f64 = 1e-8;

pub(crate) fn execute(config: &RunConfig) -> Result<Report> {
    let spec = QuadratureSpec::default();
    match config.command {
        Command::Classify => classify(&geometry(config)?),
        Command::Coeffs => match config.function {
            Some(f) => function_table(f, &config.angles, &spec),
            None => vertex_table(&geometry(config)?, &spec),
        },
        Command::Expand => expand(&geometry(config)?, &config.t_grid, &spec),
        Command::Validate => validate(&geometry(config)?, config, &spec),
        Command::Identities => identities(config.grid, config.tol.unwrap_or(IDENTITY_TOL), &spec),
        Command::Isoflow => isoflow(&geometry(config)?, config.tol.unwrap_or(ISOFLOW_TOL), &spec),
    }
}

fn geometry(config: &RunConfig) -> Result<DomainPair> {
    let path = config.geometry.as_deref().context("--geometry is required for this command")?;
    load_geometry(path, config.allow_generalized)
}

fn classify(pair: &DomainPair) -> Result<Report> {
    let mut r = Report::new(
        "classify",
        vec!["index", "x", "y", "kind", "angles", "open_edges", "neumann_edges", "subdomain_angle"],
    );
    for v in &pair.vertices {
        r.push(vec![
            Cell::Int(v.index as i64),
            Cell::Num(v.location.x),
            Cell::Num(v.location.y),
            Cell::Text(v.kind.name().into()),
            Cell::List(v.kind.angles()),
            Cell::Int(v.open_edges as i64),
            Cell::Int(v.neumann_edges as i64),
            Cell::Num(v.subdomain_angle),
        ]);
    }
    Ok(r)
}

fn vertex_table(pair: &DomainPair, spec: &QuadratureSpec) -> Result<Report> {
    let c = expansion_coefficients(pair, spec)?;
    let mut r = Report::new("coeffs", vec!["item", "x", "y", "angles", "value", "err_est"]);
    for v in &c.per_vertex {
        r.push(vec![
            Cell::Text(v.kind.clone()),
            Cell::Num(v.location.x),
            Cell::Num(v.location.y),
            Cell::List(v.angles.clone()),
            Cell::Num(v.value),
            Cell::Num(v.err_est),
        ]);
    }
    for (name, value, err) in [("c0", c.c0, 0.0), ("c_half", c.c_half, 0.0), ("c1", c.c1, c.c1_err)] {
        r.push(vec![Cell::Text(name.into()), Cell::Empty, Cell::Empty, Cell::Empty, Cell::Num(value), Cell::Num(err)]);
        r.extra.push((name, Cell::Num(value)));
    }
    Ok(r)
}

fn function_name(f: Function) -> &'static str {
    match f {
        Function::A => "a",
        Function::B => "b",
        Function::C => "c",
        Function::F => "f",
        Function::G => "g",
        Function::K => "k",
        Function::BHat => "b_hat",
        Function::CHat => "c_hat",
        Function::DHat => "d_hat",
        Function::HHat => "h_hat",
    }
}

fn evaluate(f: Function, x: &[f64], spec: &QuadratureSpec) -> Result<CoefficientValue> {
    let arity = match f {
        Function::A | Function::F | Function::G => 1,
        Function::B | Function::BHat => 2,
        Function::C | Function::K | Function::CHat | Function::DHat => 3,
        Function::HHat => 5,
    };
    if x.len() != arity {
        bail!("{} takes {arity} angles, got {}", function_name(f), x.len());
    }
    let v = match f {
        Function::A => coeff_a(x[0]),
        Function::B => coeff_b(x[0], x[1], spec),
        Function::C => coeff_c(x[0], x[1], x[2], spec),
        Function::F => coeff_f(x[0], spec),
        Function::G => coeff_g(x[0], spec),
        Function::K => coeff_k(x[0], x[1], x[2]),
        Function::BHat => coeff_b_hat(x[0], x[1], spec),
        Function::CHat => coeff_c_hat(x[0], x[1], x[2], spec),
        Function::DHat => coeff_d_hat(x[0], x[1], x[2], spec),
        Function::HHat => coeff_h_hat(x[0], x[1], x[2], x[3], x[4], spec),
    };
    Ok(v?)
}

fn function_table(f: Function, angles: &[Vec<f64>], spec: &QuadratureSpec) -> Result<Report> {
    let mut r = Report::new("coeffs", vec!["function", "angles", "value", "err_est"]);
    for x in angles {
        let v = evaluate(f, x, spec)?;
        r.push(vec![Cell::Text(function_name(f).into()), Cell::List(x.clone()), Cell::Num(v.value), Cell::Num(v.err_est)]);
    }
    Ok(r)
}

fn expand(pair: &DomainPair, t_grid: &[f64], spec: &QuadratureSpec) -> Result<Report> {
    let c = expansion_coefficients(pair, spec)?;
    let mut r = Report::new("expand", vec!["t", "c0", "c_half", "c1", "expansion"]);
    for &t in t_grid {
        r.push(vec![Cell::Num(t), Cell::Num(c.c0), Cell::Num(c.c_half), Cell::Num(c.c1), Cell::Num(eval_expansion(&c, t))]);
    }
    Ok(r)
}

fn validate(pair: &DomainPair, config: &RunConfig, spec: &QuadratureSpec) -> Result<Report> {
    let c = expansion_coefficients(pair, spec)?;
    let tol = config.tol.unwrap_or(VALIDATE_TOL);
    let oracle: Vec<OracleResult> = match config.oracle {
        OracleConfig::Spectral { max_mode } => {
            let table = SpectralTable::from_pair(pair, &SpectralSpec::uniform(max_mode))?;
            config.t_grid.iter().map(|&t| table.heat_content(t)).collect::<polyheat::Result<_>>()?
        }
        OracleConfig::Mc { n_paths, n_steps, seed } => {
            let mc = McSpec::new(n_paths, n_steps, seed);
            config.t_grid.iter().map(|&t| rbm_heat_content(pair, t, &mc)).collect::<polyheat::Result<_>>()?
        }
    };
    let mut r = Report::new(
        "validate",
        vec!["t", "expansion", "oracle", "residual", "residual_over_t", "oracle_err", "passed"],
    );
    r.extra.push(("method", Cell::Text(oracle.first().map_or(String::new(), |o| o.method.clone()))));
    r.extra.push(("tol", Cell::Num(tol)));
    for (&t, o) in config.t_grid.iter().zip(&oracle) {
        let e = eval_expansion(&c, t);
        let residual = o.value - e;
        // Monte Carlo rows are allowed three standard errors on top of `tol`.
        let ok = residual.abs() <= tol + 3.0 * o.err;
        r.passed &= ok;
        r.push(vec![
            Cell::Num(t),
            Cell::Num(e),
            Cell::Num(o.value),
            Cell::Num(residual),
            Cell::Num(residual / t),
            Cell::Num(o.err),
            Cell::Bool(ok),
        ]);
    }
    Ok(r)
}

/// Cell midpoints of `[lo, hi]`.
fn lin(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64).collect()
}

fn grid2(a: &[f64], b: &[f64]) -> Vec<(f64, f64)> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).collect()
}

type Check<'a> = Box<dyn Fn(f64, f64) -> polyheat::Result<f64> + Sync + 'a>;
type Suite<'a> = (&'static str, Vec<(f64, f64)>, Check<'a>);

fn identities(n: usize, tol: f64, spec: &QuadratureSpec) -> Result<Report> {
    let s = spec;
    let unit = lin(0.0, 1.0, n);
    let one = [0.0];
    let suites: Vec<Suite> = vec![
        (
            "doubled_non_is_noon",
            grid2(&lin(0.2, 3.0, n), &lin(0.05, 0.95, n)),
            Box::new(|total, frac| {
                let (g, b) = (total * frac, total * (1.0 - frac));
                Ok((coeff_c(2.0 * g, b, b, s)?.value - 2.0 * coeff_b(g, b, s)?.value).abs())
            }),
        ),
        (
            "supplementary_non_is_half_open",
            grid2(&lin(0.02, PI - 0.02, n), &one),
            Box::new(|g, _| Ok((coeff_b(g, PI - g, s)?.value - 0.5 * coeff_a(2.0 * g)?.value).abs())),
        ),
        (
            "straight_noon_middle_form",
            grid2(&lin(0.05, 3.0, n), &lin(0.02, 0.5, n)),
            Box::new(|g, frac| {
                let a = (PI - g) * frac;
                let b = PI - g - a;
                let lhs = 2.0 * coeff_c(g, b, a, s)?.value;
                Ok((lhs - 2.0 * coeff_a(g)?.value - 2.0 * coeff_k(2.0 * a, g, g)?.value).abs())
            }),
        ),
        (
            "straight_noon_flank_form",
            grid2(&lin(0.05, 3.0, n), &lin(0.02, 0.5, n)),
            Box::new(|g, frac| {
                let a = (PI - g) * frac;
                let b = PI - g - a;
                let lhs = 2.0 * coeff_c(g, b, a, s)?.value;
                let rhs = coeff_a(2.0 * a)?.value + coeff_a(2.0 * b)?.value + 2.0 * coeff_k(g, 2.0 * a, 2.0 * b)?.value;
                Ok((lhs - rhs).abs())
            }),
        ),
        ("cot_identity", grid2(&lin(-3.1, 3.1, n), &one), Box::new(|z, _| cot_identity_residual(z, s))),
        (
            "a_symmetric_about_pi",
            grid2(&lin(0.01, PI, n), &one),
            Box::new(|g, _| Ok((coeff_a(g)?.value - coeff_a(TAU - g)?.value).abs())),
        ),
        (
            "b_symmetric",
            grid2(&lin(0.1, 3.0, n), &lin(0.1, 3.0, n)),
            Box::new(|g, b| Ok((coeff_b(g, b, s)?.value - coeff_b(b, g, s)?.value).abs())),
        ),
        (
            "c_symmetric_in_flanks",
            grid2(&unit, &unit),
            Box::new(|u, v| {
                let (b, a) = (0.1 + 1.9 * u, 0.1 + 1.9 * v);
                let g = 0.5 * (TAU - a - b);
                Ok((coeff_c(g, b, a, s)?.value - coeff_c(g, a, b, s)?.value).abs())
            }),
        ),
        (
            "k_symmetric",
            grid2(&lin(0.05, 2.0, n), &lin(0.05, 2.0, n)),
            Box::new(|t, u| Ok((coeff_k(1.0, t, u)?.value - coeff_k(1.0, u, t)?.value).abs())),
        ),
    ];
    let mut r = Report::new("identities", vec!["identity", "points", "max_residual", "tol", "passed"]);
    for (name, points, check) in suites {
        let residuals: Vec<f64> = points
            .par_iter()
            .map(|&(x, y)| check(x, y))
            .collect::<polyheat::Result<_>>()
            .with_context(|| format!("evaluating {name}"))?;
        let worst = residuals.iter().copied().fold(0.0, f64::max);
        let ok = worst <= tol;
        r.passed &= ok;
        r.push(vec![
            Cell::Text(name.into()),
            Cell::Int(points.len() as i64),
            Cell::Num(worst),
            Cell::Num(tol),
            Cell::Bool(ok),
        ]);
    }
    Ok(r)
}

fn isoflow(pair: &DomainPair, tol: f64, spec: &QuadratureSpec) -> Result<Report> {
    let (complement, cmp) = isoflow_check(pair, spec, tol)?;
    let mut r = Report::new("isoflow", vec!["coefficient", "subdomain", "complement", "diff", "passed"]);
    for (i, name) in [(1, "c_half"), (2, "c1")] {
        let diff = cmp.diffs[i - 1];
        r.push(vec![
            Cell::Text(name.into()),
            Cell::Num(cmp.first[i]),
            Cell::Num(cmp.second[i]),
            Cell::Num(diff),
            Cell::Bool(diff <= tol),
        ]);
    }
    r.passed = cmp.passed;
    r.extra.push(("tol", Cell::Num(tol)));
    r.extra.push(("complement_components", Cell::Int(complement.inner.len() as i64)));
    Ok(r)
}
