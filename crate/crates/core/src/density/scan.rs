use rayon::prelude::*;
use serde::Serialize;

use super::{f_closed, interior_grid, Method};
use crate::error::{Error, Result};
use crate::spectral::SpectralParams;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanLevel {
    pub tol: f64,
    pub count: usize,
    pub fraction: f64,
}

/// Sub-tolerance statistics of `|f|` on an interior grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub rank: usize,
    pub grid_n: usize,
    pub levels: Vec<ScanLevel>,
    pub min_abs: f64,
    pub min_at: [f64; 2],
    pub max_abs: f64,
    pub max_at: [f64; 2],
    /// Fractions are nonincreasing as the tolerance decreases.
    pub monotone: bool,
    pub series_fallbacks: usize,
}

pub fn zero_scan(grid_n: usize, tols: &[f64], p: &SpectralParams) -> Result<ScanReport> {
    if grid_n < 16 {
        return Err(Error::InvalidArgument(format!(
            "zero scan needs grid_n >= 16, got {grid_n}"
        )));
    }
    let g = interior_grid(grid_n, p);
    let points: Vec<(f64, f64, f64, bool)> = (0..grid_n * grid_n)
        .into_par_iter()
        .map(|idx| {
            let (t, s) = (g[idx / grid_n], g[idx % grid_n]);
            let d = f_closed(t, s, p)?;
            Ok((t, s, d.value.abs(), d.method == Method::Series))
        })
        .collect::<Result<_>>()?;

    let (mut min_abs, mut min_at) = (f64::INFINITY, [0.0; 2]);
    let (mut max_abs, mut max_at) = (f64::NEG_INFINITY, [0.0; 2]);
    for &(t, s, v, _) in &points {
        if v < min_abs {
            min_abs = v;
            min_at = [t, s];
        }
        if v > max_abs {
            max_abs = v;
            max_at = [t, s];
        }
    }
    let total = points.len();
    let levels: Vec<ScanLevel> = tols
        .iter()
        .map(|&tol| {
            let count = points.iter().filter(|q| q.2 < tol).count();
            ScanLevel {
                tol,
                count,
                fraction: count as f64 / total as f64,
            }
        })
        .collect();
    let mut by_tol: Vec<&ScanLevel> = levels.iter().collect();
    by_tol.sort_by(|a, b| b.tol.total_cmp(&a.tol));
    let monotone = by_tol.windows(2).all(|w| w[1].count <= w[0].count);

    Ok(ScanReport {
        rank: p.rank(),
        grid_n,
        levels,
        min_abs,
        min_at,
        max_abs,
        max_at,
        monotone,
        series_fallbacks: points.iter().filter(|q| q.3).count(),
    })
}
