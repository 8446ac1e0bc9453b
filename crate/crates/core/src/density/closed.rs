//! Closed form of `f` by summing each trigonometric family in the series.
//!
//! With `x = 1/b`, `u_n(t) = x^(n/2) A_n(theta) / sin(theta)` where
//! `A_n(theta) = 2d cos(theta) sin(n theta) - sin((n-1) theta)` (valid for all
//! `n >= 0`), every tail term has the common weight `x^n`:
//!
//! `u_{n+a}(t) u_{n+c}(s) = x^n x^((a+c)/2) A_{n+a}(theta) A_{n+c}(phi) / (sin theta sin phi)`
//!
//! and the pairs used, `(0,0)`, `(-1,1)`, `(1,-1)`, all have `a + c = 0`. So
//!
//! `sum_{n>=2} T_n = (2 G(0,0) - G(-1,1) - G(1,-1)) / (sin theta sin phi)`
//!
//! with `G(a,c) = sum_{n>=2} x^n A_{n+a}(theta) A_{n+c}(phi)`. Expanding the
//! product of the `A`s gives four sums of the shape
//! `S(a,c) = sum_{n>=2} x^n sin((n+a) theta) sin((n+c) phi)`, and reindexing
//! `m = n + a` turns each into a shifted closed-form trig sum:
//!
//! `S(a,c) = x^(-a) (trig_sum(x, theta, phi, c - a) - sum_{m=0}^{1+a} x^m sin(m theta) sin((m+c-a) phi))`.

use num_complex::Complex64;

use super::series::f_series;
use super::{DensityPoint, Method};
use crate::error::{Error, Result};
use crate::spectral::{trig_head_sum, trig_sum, trig_sum_complex, AngleCoordinate, SpectralParams};

/// Below this `|sin theta sin phi|` the closed form defers to the series.
pub const GUARD_BAND: f64 = 1e-6;
/// Truncation used by the guard-band fallback.
pub const GUARD_SERIES_ORDER: usize = 80;

struct Assembly<'a> {
    x: f64,
    theta: f64,
    phi: f64,
    d: f64,
    ct: f64,
    cp: f64,
    kernel: &'a dyn Fn(f64) -> Complex64,
}

impl Assembly<'_> {
    fn s(&self, a: i64, c: i64) -> Complex64 {
        let r = (c - a) as f64;
        let head = trig_head_sum(self.x, self.theta, self.phi, r, 1 + a);
        ((self.kernel)(r) - head) * self.x.powi(-a as i32)
    }

    fn g(&self, a: i64, c: i64) -> Complex64 {
        let d = self.d;
        self.s(a, c) * (4.0 * d * d * self.ct * self.cp)
            - self.s(a, c - 1) * (2.0 * d * self.ct)
            - self.s(a - 1, c) * (2.0 * d * self.cp)
            + self.s(a - 1, c - 1)
    }

    fn tail(&self) -> Complex64 {
        self.g(0, 0) * 2.0 - self.g(-1, 1) - self.g(1, -1)
    }
}

fn head(t: f64, s: f64, p: &SpectralParams) -> f64 {
    let (u1, v1) = (t / p.two_n(), s / p.two_n());
    let (u2, v2) = ((t * u1 - 1.0) / p.b(), (s * v1 - 1.0) / p.b());
    1.0 + u1 * v1 - (u2 + v2)
}

fn angles(t: f64, s: f64, p: &SpectralParams) -> Result<(AngleCoordinate, AngleCoordinate)> {
    Ok((
        AngleCoordinate::from_t(t, p)?,
        AngleCoordinate::from_t(s, p)?,
    ))
}

fn assemble(
    ta: &AngleCoordinate,
    sa: &AngleCoordinate,
    p: &SpectralParams,
    kernel: &dyn Fn(f64) -> Complex64,
) -> Complex64 {
    let asm = Assembly {
        x: 1.0 / p.b(),
        theta: ta.theta(),
        phi: sa.theta(),
        d: p.d(),
        ct: ta.cos_theta(),
        cp: sa.cos_theta(),
        kernel,
    };
    let denom = ta.sin_theta() * sa.sin_theta();
    asm.tail() / denom + head(ta.t(), sa.t(), p)
}

/// `f(t, s)` in closed form. Points within the guard band of the boundary
/// (`|sin theta sin phi| < 1e-6`) are evaluated by the series instead, and the
/// returned `method` says so.
pub fn f_closed(t: f64, s: f64, p: &SpectralParams) -> Result<DensityPoint> {
    let (ta, sa) = angles(t, s, p)?;
    if ta.sin_theta() * sa.sin_theta() < GUARD_BAND {
        return f_series(t, s, GUARD_SERIES_ORDER, p);
    }
    let x = 1.0 / p.b();
    let (theta, phi) = (ta.theta(), sa.theta());
    let kernel = move |r: f64| Complex64::new(trig_sum(x, theta, phi, r), 0.0);
    let v = assemble(&ta, &sa, p, &kernel);
    Ok(DensityPoint {
        t,
        s,
        value: v.re,
        tail_bound: 0.0,
        method: Method::Closed,
    })
}

/// The closed form assembled from the complex geometric-series route; its
/// imaginary part is rounding residue only.
pub fn f_closed_complex(t: f64, s: f64, p: &SpectralParams) -> Result<Complex64> {
    let (ta, sa) = angles(t, s, p)?;
    if ta.sin_theta() * sa.sin_theta() < GUARD_BAND {
        return Err(Error::InvalidArgument(format!(
            "({t}, {s}) lies inside the boundary guard band"
        )));
    }
    let x = Complex64::new(1.0 / p.b(), 0.0);
    let (theta, phi) = (ta.theta(), sa.theta());
    let kernel = move |r: f64| trig_sum_complex(x, theta, phi, r);
    Ok(assemble(&ta, &sa, p, &kernel))
}
