//! Pairings `<chi_j gamma chi_k, gamma>_2` three ways: exact group-algebra
//! arithmetic, the six-case formula, and two-dimensional quadrature of
//! `chi_j(t) chi_k(s) f(t, s)` against `lambda (x) lambda`.

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::closed::f_closed;
use crate::algebra::{
    lemma22_closed, rational_to_f64, rational_to_string, BetaVector, Epsilon, FreeGroupAlgebra,
};
use crate::error::{Error, Result};
use crate::spectral::{chi_table, LambdaRule, QuadConfig, SpectralParams};

/// Largest `j + k` for which the exact branch is computed.
pub const MAX_EXACT_TOTAL: usize = 6;
pub const DEFAULT_PAIRING_TOL: f64 = 1e-6;

fn ser_rational<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_to_string(q))
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingReport {
    pub rank: usize,
    pub j: usize,
    pub k: usize,
    #[serde(serialize_with = "ser_rational")]
    pub value_exact: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub value_case: BigRational,
    pub value_quad: f64,
    pub quad_error: f64,
    pub tolerance: f64,
    pub quad_order: usize,
    pub pass: bool,
}

/// `(<chi_j beta chi_k, beta>_2 / ||beta||^2, case value / ||beta||^2)` for
/// `beta = a_1 - a_1^-1`.
pub fn exact_pairing(
    alg: &FreeGroupAlgebra,
    j: usize,
    k: usize,
) -> Result<(BigRational, BigRational)> {
    if j + k > MAX_EXACT_TOTAL {
        return Err(Error::InvalidArgument(format!(
            "exact pairing limited to j + k <= {MAX_EXACT_TOTAL}, got {j} + {k}"
        )));
    }
    let beta = BetaVector::antisymmetric(alg.rank(), 1)?;
    let prod = alg.product(&[&alg.chi(j)?, beta.base(), &alg.chi(k)?])?;
    let norm2 = alg.norm_squared(beta.base())?;
    let exact = alg.inner_product(&prod, beta.base())? / &norm2;
    let case = lemma22_closed(Epsilon::Minus, j, k, &norm2) / &norm2;
    Ok((exact, case))
}

/// `f` sampled on a tensor-product `lambda` rule.
pub struct DensityQuadrature {
    rule: LambdaRule,
    values: Vec<f64>,
}

impl DensityQuadrature {
    pub fn new(order: usize, p: &SpectralParams) -> Result<Self> {
        let rule = LambdaRule::new(order, p);
        let pts = rule.points();
        let values: Vec<f64> = (0..order * order)
            .into_par_iter()
            .map(|idx| {
                let (i, l) = (idx / order, idx % order);
                f_closed(pts[i].t(), pts[l].t(), p).map(|d| d.value)
            })
            .collect::<Result<_>>()?;
        Ok(DensityQuadrature { rule, values })
    }

    pub fn order(&self) -> usize {
        self.rule.order()
    }

    /// `M[j][k] = int int chi_j(t) chi_k(s) f(t, s) dlambda dlambda`, `j, k <= max_degree`.
    pub fn chi_moments(&self, max_degree: usize, p: &SpectralParams) -> Vec<Vec<f64>> {
        let n = self.order();
        let w = self.rule.weights();
        let chis: Vec<Vec<f64>> = self
            .rule
            .points()
            .iter()
            .map(|pt| chi_table(max_degree, pt.t(), p))
            .collect();
        // rows[j][l] = sum_i w_i chi_j(t_i) f(t_i, s_l)
        let rows: Vec<Vec<f64>> = (0..=max_degree)
            .map(|j| {
                (0..n)
                    .map(|l| {
                        (0..n)
                            .map(|i| w[i] * chis[i][j] * self.values[i * n + l])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        rows.iter()
            .map(|row| {
                (0..=max_degree)
                    .map(|k| (0..n).map(|l| w[l] * chis[l][k] * row[l]).sum())
                    .collect()
            })
            .collect()
    }

    /// `int int g(t) h(s) f(t, s) dlambda dlambda`.
    pub fn integrate_separable<G: Fn(f64) -> f64, H: Fn(f64) -> f64>(&self, g: G, h: H) -> f64 {
        let n = self.order();
        let w = self.rule.weights();
        let pts = self.rule.points();
        let mut acc = 0.0;
        for i in 0..n {
            let gi = w[i] * g(pts[i].t());
            for l in 0..n {
                acc += gi * w[l] * h(pts[l].t()) * self.values[i * n + l];
            }
        }
        acc
    }
}

/// The moment matrix of `f` to degree `max_degree`, doubling the tensor order
/// until every entry moves by less than `tol`. Returns the matrix, the final
/// order, and the last change.
pub fn density_moments(
    max_degree: usize,
    p: &SpectralParams,
    tol: f64,
    cfg: QuadConfig,
) -> Result<(Vec<Vec<f64>>, usize, f64)> {
    let mut order = cfg.start_order.max(2);
    let mut prev = DensityQuadrature::new(order, p)?.chi_moments(max_degree, p);
    let mut delta = f64::INFINITY;
    while order * 2 <= cfg.max_order {
        order *= 2;
        let cur = DensityQuadrature::new(order, p)?.chi_moments(max_degree, p);
        delta = prev
            .iter()
            .flatten()
            .zip(cur.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if delta < tol {
            return Ok((cur, order, delta));
        }
        prev = cur;
    }
    Err(Error::NoConvergence { order, delta })
}

fn pairing_quad_config() -> QuadConfig {
    QuadConfig {
        start_order: 32,
        max_order: 512,
    }
}

/// All pairings with `j + k <= max_total`, sharing one quadrature grid.
/// The quadrature is converged to `tol / 100` and then compared with the case
/// value at `tol`.
pub fn pairing_sweep(
    alg: &FreeGroupAlgebra,
    p: &SpectralParams,
    max_total: usize,
    tol: f64,
) -> Result<Vec<PairingReport>> {
    if alg.rank() != p.rank() {
        return Err(Error::RankMismatch {
            left: alg.rank(),
            right: p.rank(),
        });
    }
    let (moments, order, _) = density_moments(max_total, p, tol / 100.0, pairing_quad_config())?;
    let pairs: Vec<(usize, usize)> = (0..=max_total)
        .flat_map(|t| (0..=t).map(move |j| (j, t - j)))
        .collect();
    pairs
        .par_iter()
        .map(|&(j, k)| {
            let (exact, case) = exact_pairing(alg, j, k)?;
            let quad = moments[j][k];
            let case_f = rational_to_f64(&case);
            let err = (quad - case_f).abs();
            Ok(PairingReport {
                rank: p.rank(),
                j,
                k,
                pass: exact == case && err <= tol,
                value_exact: exact,
                value_case: case,
                value_quad: quad,
                quad_error: err,
                tolerance: tol,
                quad_order: order,
            })
        })
        .collect()
}

/// A single pairing; see [`pairing_sweep`].
pub fn pairing_check(
    alg: &FreeGroupAlgebra,
    j: usize,
    k: usize,
    p: &SpectralParams,
    tol: f64,
) -> Result<PairingReport> {
    let all = pairing_sweep(alg, p, j + k, tol)?;
    Ok(all
        .into_iter()
        .find(|r| r.j == j && r.k == k)
        .expect("sweep covers (j, k)"))
}
