//! Shared inputs for the criterion benchmarks.

use radial_masa_core::{BetaVector, FreeGroupAlgebra, SpectralParams};

pub fn algebra(rank: usize) -> FreeGroupAlgebra {
    FreeGroupAlgebra::new(rank).expect("rank >= 2")
}

pub fn params(rank: usize) -> SpectralParams {
    SpectralParams::new(rank).expect("rank >= 2")
}

pub fn antisymmetric_beta(rank: usize) -> BetaVector {
    BetaVector::antisymmetric(rank, 1).expect("valid beta")
}

/// Evenly spaced interior points of `(-a_N, a_N)`.
pub fn sample_points(count: usize, p: &SpectralParams) -> Vec<f64> {
    let a = p.edge();
    (0..count)
        .map(|i| -a + 2.0 * a * (i as f64 + 0.5) / count as f64)
        .collect()
}
