use std::f64::consts::PI;

use super::kesten::angular_weight;
use super::{AngleCoordinate, SpectralParams};
use crate::error::{Error, Result};

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on `P_order` from the Tricomi initial guesses.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `int_lo^hi f(x) dx`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, lo: f64, hi: f64, mut f: F) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A quadrature rule for `lambda`: Gauss-Legendre in `theta` on `[0, pi]` after
/// `t = a_N cos(theta)`, with the angular density folded into the weights.
#[derive(Clone, Debug)]
pub struct LambdaRule {
    points: Vec<AngleCoordinate>,
    weights: Vec<f64>,
}

impl LambdaRule {
    pub fn new(order: usize, p: &SpectralParams) -> Self {
        let gl = GaussLegendre::new(order);
        let half = 0.5 * PI;
        let mut points = Vec::with_capacity(order);
        let mut weights = Vec::with_capacity(order);
        for (&x, &w) in gl.nodes().iter().zip(gl.weights()) {
            let theta = half * (1.0 + x);
            points.push(AngleCoordinate::from_theta(theta, p).expect("node inside [0, pi]"));
            weights.push(half * w * angular_weight(theta, p));
        }
        LambdaRule { points, weights }
    }

    pub fn order(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[AngleCoordinate] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<G: FnMut(f64) -> f64>(&self, mut g: G) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(pt, &w)| w * g(pt.t()))
            .sum()
    }
}

/// Order schedule for adaptive quadrature: start, then double up to `max_order`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadConfig {
    pub start_order: usize,
    pub max_order: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            start_order: 16,
            max_order: 4096,
        }
    }
}

/// `int g dlambda`, doubling the order until two successive estimates differ by
/// less than `tol`.
pub fn quad_lambda<G: FnMut(f64) -> f64>(g: G, p: &SpectralParams, tol: f64) -> Result<f64> {
    quad_lambda_with(g, p, tol, QuadConfig::default())
}

pub fn quad_lambda_with<G: FnMut(f64) -> f64>(
    mut g: G,
    p: &SpectralParams,
    tol: f64,
    cfg: QuadConfig,
) -> Result<f64> {
    let mut order = cfg.start_order.max(1);
    let mut prev = LambdaRule::new(order, p).integrate(&mut g);
    let mut delta = f64::INFINITY;
    while order * 2 <= cfg.max_order {
        order *= 2;
        let cur = LambdaRule::new(order, p).integrate(&mut g);
        delta = (cur - prev).abs();
        if delta < tol {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NoConvergence { order, delta })
}
