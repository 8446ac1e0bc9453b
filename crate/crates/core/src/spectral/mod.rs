//! The radial polynomials as functions on the spectrum `[-a_N, a_N]` of `chi_1`,
//! and the Kesten measure `lambda` they are orthogonal against.

mod chi;
mod kesten;
mod quadrature;
mod trig;

pub use chi::{
    chi_eval_recurrence, chi_eval_trig, chi_table, normalized_amplitude_bound,
    normalized_chi_table, sin_ratio, ChiValue, ENDPOINT_GUARD,
};
pub use kesten::{angular_weight, kesten_density};
pub use quadrature::{quad_lambda, quad_lambda_with, GaussLegendre, LambdaRule, QuadConfig};
pub use trig::{trig_head_sum, trig_sum, trig_sum_complex};

use serde::Serialize;

use crate::error::{Error, Result};

/// Rank-dependent constants: `a_N = 2 sqrt(2N-1)`, `b = 2N-1`, `d = (2N-1)/(2N)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralParams {
    rank: usize,
    edge: f64,
    b: f64,
    d: f64,
}

impl SpectralParams {
    pub fn new(rank: usize) -> Result<Self> {
        if rank < 2 {
            return Err(Error::InvalidRank(rank));
        }
        let b = (2 * rank - 1) as f64;
        Ok(SpectralParams {
            rank,
            edge: 2.0 * b.sqrt(),
            b,
            d: b / (2 * rank) as f64,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `a_N`, the right end of the spectrum.
    pub fn edge(&self) -> f64 {
        self.edge
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn two_n(&self) -> f64 {
        (2 * self.rank) as f64
    }

    pub fn contains(&self, t: f64) -> bool {
        t.abs() <= self.edge
    }

    /// `||chi_n||_2^2 = 2N b^(n-1)`, `1` for `n = 0`.
    pub fn chi_norm_squared(&self, n: usize) -> f64 {
        if n == 0 {
            1.0
        } else {
            self.two_n() * self.b.powi(n as i32 - 1)
        }
    }
}

/// A point of the spectrum in both coordinates: `t = a_N cos(theta)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleCoordinate {
    theta: f64,
    t: f64,
    sin_theta: f64,
}

impl AngleCoordinate {
    pub fn from_t(t: f64, p: &SpectralParams) -> Result<Self> {
        let a = p.edge();
        if !p.contains(t) || t.is_nan() {
            return Err(Error::OutsideSpectrum { t, a });
        }
        let c = (t / a).clamp(-1.0, 1.0);
        // (a - t)(a + t) keeps precision near the endpoints
        let sin_theta = ((a - t) * (a + t)).max(0.0).sqrt() / a;
        Ok(AngleCoordinate {
            theta: c.acos(),
            t,
            sin_theta,
        })
    }

    pub fn from_theta(theta: f64, p: &SpectralParams) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::InvalidArgument(format!(
                "theta = {theta} outside [0, pi]"
            )));
        }
        Ok(AngleCoordinate {
            theta,
            t: p.edge() * theta.cos(),
            sin_theta: theta.sin().max(0.0),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn sin_theta(&self) -> f64 {
        self.sin_theta
    }

    pub fn cos_theta(&self) -> f64 {
        self.theta.cos()
    }
}
