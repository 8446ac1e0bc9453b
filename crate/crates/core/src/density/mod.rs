//! The left-right density
//!
//! `f(t, s) = 1 + u_1(t) u_1(s) - u_2(t) - u_2(s)
//!           + sum_{n>=2} [2 u_n(t) u_n(s) - u_{n-1}(t) u_{n+1}(s) - u_{n+1}(t) u_{n-1}(s)]`
//!
//! with `u_n = chi_n / ||chi_n||_2^2`, evaluated by truncated series and in
//! closed form.

mod closed;
mod pairing;
mod scan;
mod series;

use serde::{Deserialize, Serialize};

pub use closed::{f_closed, f_closed_complex, GUARD_BAND, GUARD_SERIES_ORDER};
pub use pairing::{
    density_moments, exact_pairing, pairing_check, pairing_sweep, DensityQuadrature, PairingReport,
    DEFAULT_PAIRING_TOL, MAX_EXACT_TOTAL,
};
pub use scan::{zero_scan, ScanLevel, ScanReport};
pub use series::{f_series, f_series_checked, series_order_for, series_segment, series_tail_bound};

use crate::error::Result;
use crate::spectral::SpectralParams;

/// How a density value was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Series,
    Closed,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Series => "series",
            Method::Closed => "closed",
        })
    }
}

/// One evaluation of `f`. For the series method `tail_bound` bounds the
/// omitted tail; closed-form values carry `0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityPoint {
    pub t: f64,
    pub s: f64,
    #[serde(rename = "f")]
    pub value: f64,
    pub tail_bound: f64,
    pub method: Method,
}

/// Midpoints of `n` equal cells of `[-a_N, a_N]`; `n = 1` gives `[0]`.
pub fn interior_grid(n: usize, p: &SpectralParams) -> Vec<f64> {
    let a = p.edge();
    let h = 2.0 * a / n as f64;
    (0..n).map(|i| -a + (i as f64 + 0.5) * h).collect()
}

/// `f` on the `n x n` interior grid, row-major in `t` then `s`.
pub fn evaluate_grid(
    n: usize,
    method: Method,
    truncation: usize,
    p: &SpectralParams,
) -> Result<Vec<DensityPoint>> {
    use rayon::prelude::*;
    let g = interior_grid(n, p);
    let pts: Vec<(f64, f64)> = g
        .iter()
        .flat_map(|&t| g.iter().map(move |&s| (t, s)))
        .collect();
    pts.par_iter()
        .map(|&(t, s)| match method {
            Method::Series => f_series(t, s, truncation, p),
            Method::Closed => f_closed(t, s, p),
        })
        .collect()
}
