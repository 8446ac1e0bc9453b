use super::{DensityPoint, Method};
use crate::error::{Error, Result};
use crate::spectral::{normalized_chi_table, SpectralParams};

/// Upper bound on `sum_{n>K} |T_n(t, s)|` uniformly on the square.
///
/// With `|u_n| <= 3n b^(-n/2)` each term obeys
/// `|2 u_n u_n'| + |u_{n-1} u_{n+1}'| + |u_{n+1} u_{n-1}'| <= 18 n^2 b^-n + 18 (n^2 - 1) b^-n <= 36 n^2 b^-n`,
/// and with `x = 1/b`, `M = K + 1`:
/// `sum_{n>=M} n^2 x^n = x^M (M^2/(1-x) + 2Mx/(1-x)^2 + x(1+x)/(1-x)^3)`.
pub fn series_tail_bound(k: usize, p: &SpectralParams) -> f64 {
    let x = 1.0 / p.b();
    let m = (k + 1) as f64;
    let om = 1.0 - x;
    let poly = m * m / om + 2.0 * m * x / (om * om) + x * (1.0 + x) / (om * om * om);
    36.0 * x.powf(m) * poly
}

/// Smallest truncation order `K >= 2` whose tail bound is at most `tol`.
pub fn series_order_for(tol: f64, p: &SpectralParams) -> usize {
    let mut k = 2;
    while series_tail_bound(k, p) > tol && k < 10_000 {
        k += 1;
    }
    k
}

fn check_square(t: f64, s: f64, p: &SpectralParams) -> Result<()> {
    for v in [t, s] {
        if !p.contains(v) || v.is_nan() {
            return Err(Error::OutsideSpectrum { t: v, a: p.edge() });
        }
    }
    Ok(())
}

#[inline]
fn term(u: &[f64], v: &[f64], n: usize) -> f64 {
    2.0 * (u[n] * v[n]) - (u[n - 1] * v[n + 1] + u[n + 1] * v[n - 1])
}

/// Partial sum of `f` through `n = K`, with the tail bound for the rest.
/// Symmetric in `(t, s)` bit for bit.
pub fn f_series(t: f64, s: f64, k: usize, p: &SpectralParams) -> Result<DensityPoint> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "series truncation must be at least 2, got {k}"
        )));
    }
    check_square(t, s, p)?;
    let u = normalized_chi_table(k + 1, t, p);
    let v = normalized_chi_table(k + 1, s, p);
    let mut acc = 1.0 + u[1] * v[1] - (u[2] + v[2]);
    for n in 2..=k {
        acc += term(&u, &v, n);
    }
    Ok(DensityPoint {
        t,
        s,
        value: acc,
        tail_bound: series_tail_bound(k, p),
        method: Method::Series,
    })
}

/// [`f_series`] that refuses truncations whose tail bound exceeds `tol`.
pub fn f_series_checked(
    t: f64,
    s: f64,
    k: usize,
    tol: f64,
    p: &SpectralParams,
) -> Result<DensityPoint> {
    let bound = series_tail_bound(k, p);
    if bound > tol {
        return Err(Error::TruncationTooShort {
            order: k,
            tail_bound: bound,
            tol,
        });
    }
    f_series(t, s, k, p)
}

/// `sum_{n=from}^{to} T_n(t, s)`: the exact difference between two partial sums,
/// without cancellation against the head.
pub fn series_segment(t: f64, s: f64, from: usize, to: usize, p: &SpectralParams) -> Result<f64> {
    check_square(t, s, p)?;
    let from = from.max(2);
    let u = normalized_chi_table(to + 1, t, p);
    let v = normalized_chi_table(to + 1, s, p);
    Ok((from..=to).map(|n| term(&u, &v, n)).sum())
}
