//! Exact and numerical verification toolkit for the radial (Laplacian) masa
//! in the free group factors.
//!
//! - [`algebra`]: exact rational arithmetic in the group algebra of `F_N`,
//!   with brute-force checks of the length-1 vector identities.
//! - [`spectral`]: the radial polynomials `chi_n(t)`, the Kesten measure on
//!   `[-a_N, a_N]`, quadrature against it and a closed-form trigonometric sum.
//! - [`density`]: the left-right density `f(t, s)` by truncated series and by
//!   closed form, its pairings with `chi_j (x) chi_k`, and zero-set scans.

pub mod algebra;
pub mod density;
pub mod error;
pub mod spectral;

pub use algebra::{BetaVector, Epsilon, FreeGroupAlgebra, GroupAlgebraElement, Letter, Word};
pub use density::{DensityPoint, Method, PairingReport};
pub use error::{Error, Result};
pub use spectral::{AngleCoordinate, SpectralParams};
