//! Exact arithmetic in the rational group algebra of the free group `F_N`.
//!
//! Everything here is an exact identity check: coefficients are arbitrary
//! precision rationals and elements compare structurally.

mod beta;
mod element;
mod lemmas;
mod word;

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub use beta::{BetaVector, Epsilon};
pub use element::{rational, rational_to_f64, rational_to_string, GroupAlgebraElement};
pub use lemmas::{
    lemma21_inner_closed, lemma22_closed, sweep_lemma21_expansion, sweep_lemma21_inner,
    sweep_lemma22, verify_lemma21_expansion, verify_lemma21_inner, verify_lemma22, CheckReport,
    Perturbation, XiTable,
};
pub use word::{Letter, Word};

use crate::error::{Error, Result};

/// Default limit on pairwise word multiplications in a single product.
pub const DEFAULT_PAIR_CAP: u128 = 100_000_000;
/// Default limit on the support size of a materialized `chi_n`.
pub const DEFAULT_SUPPORT_CAP: u128 = 10_000_000;

/// The group algebra `Q[F_N]` together with its resource limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeGroupAlgebra {
    rank: usize,
    pair_cap: u128,
    support_cap: u128,
}

impl FreeGroupAlgebra {
    pub fn new(rank: usize) -> Result<Self> {
        if rank < 2 {
            return Err(Error::InvalidRank(rank));
        }
        Ok(FreeGroupAlgebra {
            rank,
            pair_cap: DEFAULT_PAIR_CAP,
            support_cap: DEFAULT_SUPPORT_CAP,
        })
    }

    pub fn with_pair_cap(mut self, cap: u128) -> Self {
        self.pair_cap = cap;
        self
    }

    pub fn with_support_cap(mut self, cap: u128) -> Self {
        self.support_cap = cap;
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn pair_cap(&self) -> u128 {
        self.pair_cap
    }

    pub fn zero(&self) -> GroupAlgebraElement {
        GroupAlgebraElement::zero(self.rank)
    }

    pub fn one(&self) -> GroupAlgebraElement {
        GroupAlgebraElement::one(self.rank)
    }

    /// Number of reduced words of length `n`.
    pub fn sphere_size(&self, n: usize) -> u128 {
        if n == 0 {
            return 1;
        }
        let r = self.rank as u128;
        (2 * r).saturating_mul((2 * r - 1).saturating_pow(n as u32 - 1))
    }

    /// `chi_n`: the sum of all reduced words of length `n`.
    pub fn chi(&self, n: usize) -> Result<GroupAlgebraElement> {
        let size = self.sphere_size(n);
        if size > self.support_cap {
            return Err(Error::ResourceCap {
                what: "chi support",
                needed: size,
                cap: self.support_cap,
            });
        }
        let terms: HashMap<Word, BigRational> = Word::all_of_length(n, self.rank)
            .into_iter()
            .map(|w| (w, BigRational::one()))
            .collect();
        Ok(GroupAlgebraElement::from_map_unchecked(self.rank, terms))
    }

    /// Bilinear extension of word concatenation.
    pub fn multiply(
        &self,
        x: &GroupAlgebraElement,
        y: &GroupAlgebraElement,
    ) -> Result<GroupAlgebraElement> {
        self.check(x)?;
        self.check(y)?;
        let pairs = x.support_len() as u128 * y.support_len() as u128;
        if pairs > self.pair_cap {
            return Err(Error::ResourceCap {
                what: "term pairs in product",
                needed: pairs,
                cap: self.pair_cap,
            });
        }
        let mut out: HashMap<Word, BigRational> =
            HashMap::with_capacity(pairs.min(1 << 20) as usize);
        for (u, c) in x.terms() {
            for (v, d) in y.terms() {
                let w = u.concat(v);
                let p = c * d;
                out.entry(w).and_modify(|acc| *acc += &p).or_insert(p);
            }
        }
        Ok(GroupAlgebraElement::from_map_unchecked(self.rank, out))
    }

    /// Left-to-right product of several factors.
    pub fn product(&self, factors: &[&GroupAlgebraElement]) -> Result<GroupAlgebraElement> {
        let mut acc = self.one();
        for f in factors {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    /// `<x, y>_2 = trace(y* x)`.
    pub fn inner_product(
        &self,
        x: &GroupAlgebraElement,
        y: &GroupAlgebraElement,
    ) -> Result<BigRational> {
        self.check(x)?;
        self.check(y)?;
        // trace(y* x) = sum_w x_w conj(y_w); coefficients are real.
        let (small, large) = if x.support_len() <= y.support_len() {
            (x, y)
        } else {
            (y, x)
        };
        let mut acc = BigRational::zero();
        for (w, c) in small.terms() {
            if let Some(d) = large.get(w) {
                acc += c * d;
            }
        }
        Ok(acc)
    }

    pub fn norm_squared(&self, x: &GroupAlgebraElement) -> Result<BigRational> {
        self.inner_product(x, x)
    }

    /// `xi_{r,s} = q_{r+s+1}(chi_r xi chi_s)` for `r, s >= 0`, zero otherwise.
    /// Only defined here for `xi` homogeneous of length 1.
    pub fn xi_rs(&self, xi: &GroupAlgebraElement, r: i64, s: i64) -> Result<GroupAlgebraElement> {
        self.check(xi)?;
        if xi.is_zero() || xi.lengths() != [1] {
            return Err(Error::NotLengthOne);
        }
        if r < 0 || s < 0 {
            return Ok(self.zero());
        }
        let (r, s) = (r as usize, s as usize);
        let full = self.product(&[&self.chi(r)?, xi, &self.chi(s)?])?;
        Ok(full.project_length(r + s + 1))
    }

    /// `trace(chi_1^k)`, the number of closed walks of length `k` at the
    /// identity of the Cayley graph. Computed as `trace(chi_1^ceil(k/2) chi_1^floor(k/2))`.
    pub fn moment(&self, k: usize) -> Result<BigRational> {
        let chi1 = self.chi(1)?;
        let mut powers = vec![self.one()];
        for i in 1..=k.div_ceil(2) {
            let next = self.multiply(&powers[i - 1], &chi1)?;
            powers.push(next);
        }
        powers[k.div_ceil(2)].trace_of_product(&powers[k / 2])
    }

    fn check(&self, x: &GroupAlgebraElement) -> Result<()> {
        if x.rank() != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: x.rank(),
            });
        }
        Ok(())
    }
}

/// `2N (2N-1)^(n-1)` for `n >= 1`, `1` for `n = 0`: the exact value of `||chi_n||_2^2`.
pub fn chi_norm_squared(rank: usize, n: usize) -> BigRational {
    if n == 0 {
        return BigRational::one();
    }
    let b = rational(2 * rank as i64 - 1);
    let mut acc = rational(2 * rank as i64);
    for _ in 1..n {
        acc *= &b;
    }
    acc
}
