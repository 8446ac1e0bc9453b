use radial_masa_core::algebra::{
    chi_norm_squared, rational_to_f64, sweep_lemma21_expansion, sweep_lemma21_inner, sweep_lemma22,
    CheckReport, Perturbation,
};
use radial_masa_core::density::{
    evaluate_grid, pairing_sweep, series_tail_bound, zero_scan, DensityPoint, Method,
};
use radial_masa_core::spectral::{chi_table, quad_lambda};
use radial_masa_core::{BetaVector, Epsilon, Error, FreeGroupAlgebra, SpectralParams};
use serde_json::{json, Value};

use crate::config::{Command, MethodChoice, RunConfig};
use crate::error::CliError;
use crate::report::{Outcome, Table};

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.command {
        Command::Verify => verify(cfg),
        Command::Density => density(cfg),
        Command::Pairing => pairing(cfg),
        Command::Scan => scan(cfg),
        Command::Moments => moments(cfg),
    }
}

fn algebra(cfg: &RunConfig, rank: usize) -> Result<FreeGroupAlgebra, CliError> {
    let alg = FreeGroupAlgebra::new(rank)?;
    Ok(match cfg.pair_cap {
        Some(cap) => alg.with_pair_cap(cap),
        None => alg,
    })
}

fn standard_betas(rank: usize) -> Result<Vec<BetaVector>, CliError> {
    let mut out = Vec::new();
    for eps in Epsilon::BOTH {
        out.extend(BetaVector::standard_family(rank, eps)?);
    }
    Ok(out)
}

/// Shortest round-trip form, switching to exponent notation for small and
/// large magnitudes.
fn f(x: f64) -> String {
    format!("{x:?}")
}

fn verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let perturbation = if cfg.inject_fault {
        Perturbation::FlipFirstCoefficient
    } else {
        Perturbation::None
    };
    let mut reports: Vec<(usize, CheckReport)> = Vec::new();
    for &rank in &cfg.ranks {
        let alg = algebra(cfg, rank)?;
        let betas = standard_betas(rank)?;
        let mut batch = sweep_lemma21_inner(&alg, &betas, cfg.max_total)?;
        batch.extend(sweep_lemma21_expansion(
            &alg,
            &betas,
            cfg.max_total,
            perturbation,
        )?);
        batch.extend(sweep_lemma22(&alg, &betas, cfg.max_total)?);
        reports.extend(batch.into_iter().map(|r| (rank, r)));
    }
    let failures = reports.iter().filter(|(_, r)| !r.pass).count();
    let mut json_reports = Vec::with_capacity(reports.len());
    let mut rows = Vec::with_capacity(reports.len());
    for (rank, r) in &reports {
        let mut v = serde_json::to_value(r)?;
        v.as_object_mut()
            .expect("report serializes to an object")
            .insert("rank".into(), json!(rank));
        json_reports.push(v);
        rows.push(vec![
            rank.to_string(),
            r.lemma.clone(),
            Value::Object(r.params.clone()).to_string(),
            r.lhs.to_string(),
            r.rhs.to_string(),
            r.pass.to_string(),
            f(r.elapsed_ms),
        ]);
    }
    Ok(Outcome {
        pass: failures == 0,
        summary: format!(
            "verify: {} checks, {failures} failed (ranks {:?}, n + m <= {})",
            reports.len(),
            cfg.ranks,
            cfg.max_total
        ),
        json: json!({
            "ranks": cfg.ranks,
            "max_total": cfg.max_total,
            "checks": reports.len(),
            "failures": failures,
            "pass": failures == 0,
            "reports": json_reports,
        }),
        table: Table {
            header: vec![
                "rank",
                "lemma",
                "params",
                "lhs",
                "rhs",
                "pass",
                "elapsed_ms",
            ],
            rows,
        },
    })
}

fn density(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let p = SpectralParams::new(cfg.ranks[0])?;
    let methods: &[Method] = match cfg.method {
        MethodChoice::Closed => &[Method::Closed],
        MethodChoice::Series => &[Method::Series],
        MethodChoice::Both => &[Method::Closed, Method::Series],
    };
    let tail_tol = cfg.tol("tail");
    if methods.contains(&Method::Series) {
        let bound = series_tail_bound(cfg.truncation, &p);
        if bound > tail_tol {
            return Err(Error::TruncationTooShort {
                order: cfg.truncation,
                tail_bound: bound,
                tol: tail_tol,
            }
            .into());
        }
    }
    let grids: Vec<Vec<DensityPoint>> = methods
        .iter()
        .map(|&m| evaluate_grid(cfg.grid_n, m, cfg.truncation, &p))
        .collect::<Result<_, _>>()?;

    let mut pass = grids.iter().flatten().all(|pt| pt.value.is_finite());
    let mut detail = String::new();
    if let [closed, series] = grids.as_slice() {
        let agree = cfg.tol("agree");
        let worst = closed
            .iter()
            .zip(series)
            .map(|(c, s)| (c.value - s.value).abs() - s.tail_bound)
            .fold(f64::NEG_INFINITY, f64::max);
        pass &= worst <= agree;
        detail = format!(", closed vs series worst excess {worst:.3e}");
    }
    let points: Vec<&DensityPoint> = grids.iter().flatten().collect();
    let rows = points
        .iter()
        .map(|pt| {
            vec![
                f(pt.t),
                f(pt.s),
                f(pt.value),
                f(pt.tail_bound),
                pt.method.to_string(),
            ]
        })
        .collect();
    Ok(Outcome {
        pass,
        summary: format!("density: N={}, {} points{detail}", p.rank(), points.len()),
        json: serde_json::to_value(&points)?,
        table: Table {
            header: vec!["t", "s", "f", "tail_bound", "method"],
            rows,
        },
    })
}

fn pairing(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let tol = cfg.tol("quad");
    let norm_tol = cfg.tol("norm");
    let mut reports = Vec::new();
    let mut normalization = Vec::new();
    for &rank in &cfg.ranks {
        let alg = algebra(cfg, rank)?;
        let p = SpectralParams::new(rank)?;
        let batch = pairing_sweep(&alg, &p, cfg.max_total, tol)?;
        let total = batch
            .iter()
            .find(|r| r.j == 0 && r.k == 0)
            .map(|r| r.value_quad)
            .unwrap_or(f64::NAN);
        normalization.push(json!({
            "rank": rank,
            "integral": total,
            "error": (total - 1.0).abs(),
            "tolerance": norm_tol,
            "pass": (total - 1.0).abs() <= norm_tol,
        }));
        reports.extend(batch);
    }
    let failures = reports.iter().filter(|r| !r.pass).count();
    let norm_ok = normalization.iter().all(|v| v["pass"] == json!(true));
    let worst = reports.iter().map(|r| r.quad_error).fold(0.0, f64::max);
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                r.rank.to_string(),
                r.j.to_string(),
                r.k.to_string(),
                radial_masa_core::algebra::rational_to_string(&r.value_exact),
                radial_masa_core::algebra::rational_to_string(&r.value_case),
                f(r.value_quad),
                f(r.quad_error),
                f(r.tolerance),
                r.quad_order.to_string(),
                r.pass.to_string(),
            ]
        })
        .collect();
    Ok(Outcome {
        pass: failures == 0 && norm_ok,
        summary: format!(
            "pairing: {} pairs, {failures} failed, worst quadrature error {worst:.3e}",
            reports.len()
        ),
        json: json!({
            "ranks": cfg.ranks,
            "max_total": cfg.max_total,
            "pass": failures == 0 && norm_ok,
            "normalization": normalization,
            "reports": serde_json::to_value(&reports)?,
        }),
        table: Table {
            header: vec![
                "rank",
                "j",
                "k",
                "value_exact",
                "value_case",
                "value_quad",
                "quad_error",
                "tolerance",
                "quad_order",
                "pass",
            ],
            rows,
        },
    })
}

fn scan(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let p = SpectralParams::new(cfg.ranks[0])?;
    let report = zero_scan(cfg.grid_n, &cfg.levels, &p)?;
    let pass = report.monotone && report.min_abs.is_finite() && report.max_abs.is_finite();
    let rows = report
        .levels
        .iter()
        .map(|l| vec![f(l.tol), l.count.to_string(), f(l.fraction)])
        .collect();
    let mut json = serde_json::to_value(&report)?;
    json.as_object_mut()
        .expect("scan report serializes to an object")
        .insert("pass".into(), json!(pass));
    let fractions: Vec<String> = report
        .levels
        .iter()
        .map(|l| format!("{:e}:{:.4}", l.tol, l.fraction))
        .collect();
    Ok(Outcome {
        pass,
        summary: format!(
            "scan: N={}, {}x{} grid, min |f| {:.4e}, fractions [{}]",
            p.rank(),
            cfg.grid_n,
            cfg.grid_n,
            report.min_abs,
            fractions.join(", ")
        ),
        json,
        table: Table {
            header: vec!["tol", "count", "fraction"],
            rows,
        },
    })
}

fn moments(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let moment_tol = cfg.tol("moment");
    let gram_tol = cfg.tol("gram");
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    let mut failures = 0;
    let mut record =
        |kind: &str, rank: usize, i: usize, j: usize, exact: f64, quad: f64, tol: f64| {
            let err = (quad - exact).abs();
            let pass = err <= tol;
            if !pass {
                failures += 1;
            }
            entries.push(json!({
                "kind": kind, "rank": rank, "i": i, "j": j,
                "exact": exact, "quad": quad, "error": err, "pass": pass,
            }));
            rows.push(vec![
                kind.to_string(),
                rank.to_string(),
                i.to_string(),
                j.to_string(),
                f(exact),
                f(quad),
                f(err),
                pass.to_string(),
            ]);
        };
    for &rank in &cfg.ranks {
        let alg = algebra(cfg, rank)?;
        let p = SpectralParams::new(rank)?;
        for k in 0..=cfg.max_moment {
            let exact = rational_to_f64(&alg.moment(k)?);
            let quad = quad_lambda(|t| t.powi(k as i32), &p, moment_tol / 10.0)?;
            record("moment", rank, k, 0, exact, quad, moment_tol);
        }
        let deg = cfg.gram_degree;
        for n in 0..=deg {
            for m in 0..=deg {
                let quad = quad_lambda(
                    |t| {
                        let c = chi_table(deg, t, &p);
                        c[n] * c[m]
                    },
                    &p,
                    gram_tol / 10.0,
                )?;
                let exact = if n == m {
                    rational_to_f64(&chi_norm_squared(rank, n))
                } else {
                    0.0
                };
                record("gram", rank, n, m, exact, quad, gram_tol);
            }
        }
    }
    let total = entries.len();
    Ok(Outcome {
        pass: failures == 0,
        summary: format!("moments: {total} comparisons, {failures} failed"),
        json: json!({
            "ranks": cfg.ranks,
            "pass": failures == 0,
            "entries": entries,
        }),
        table: Table {
            header: vec!["kind", "rank", "i", "j", "exact", "quad", "error", "pass"],
            rows,
        },
    })
}
