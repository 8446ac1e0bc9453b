use std::f64::consts::PI;

use super::SpectralParams;
use crate::error::{Error, Result};

/// Density of the Kesten measure `lambda` (the law of `chi_1` under the trace):
/// `w(t) = 2N sqrt(a_N^2 - t^2) / (2 pi ((2N)^2 - t^2))` on `[-a_N, a_N]`.
pub fn kesten_density(t: f64, p: &SpectralParams) -> Result<f64> {
    let a = p.edge();
    if !p.contains(t) || t.is_nan() {
        return Err(Error::OutsideSpectrum { t, a });
    }
    let q = p.two_n();
    let root = ((a - t) * (a + t)).max(0.0).sqrt();
    Ok(q * root / (2.0 * PI * (q * q - t * t)))
}

/// `w(a_N cos theta) a_N sin theta`: the density of `lambda` in the angle variable.
/// Smooth on `[0, pi]`, so Gauss rules in `theta` converge geometrically.
pub fn angular_weight(theta: f64, p: &SpectralParams) -> f64 {
    let q = p.two_n();
    let a2 = p.edge() * p.edge();
    let (s, c) = theta.sin_cos();
    q * a2 * s * s / (2.0 * PI * (q * q - a2 * c * c))
}
