use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::element::{rational, GroupAlgebraElement};
use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// Symmetry sign of a length-1 vector: `c_{w^-1} = eps * c_w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Epsilon {
    #[serde(rename = "-1")]
    Minus,
    #[serde(rename = "+1")]
    Plus,
}

impl Epsilon {
    pub const BOTH: [Epsilon; 2] = [Epsilon::Minus, Epsilon::Plus];

    pub fn value(self) -> i64 {
        match self {
            Epsilon::Minus => -1,
            Epsilon::Plus => 1,
        }
    }

    pub fn as_rational(self) -> BigRational {
        rational(self.value())
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Epsilon::Minus => "-1",
            Epsilon::Plus => "+1",
        })
    }
}

/// A length-1 vector `beta = sum c_w w` with `c_{w^-1} = eps c_w`, orthogonal
/// to `chi_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaVector {
    base: GroupAlgebraElement,
    epsilon: Epsilon,
}

impl BetaVector {
    pub fn new(base: GroupAlgebraElement, epsilon: Epsilon) -> Result<Self> {
        if base.is_zero() {
            return Err(Error::InvalidBeta("beta must be nonzero".into()));
        }
        if base.lengths() != [1] {
            return Err(Error::InvalidBeta(
                "beta must be supported on words of length 1".into(),
            ));
        }
        let eps = epsilon.as_rational();
        for (w, c) in base.terms() {
            let mirrored = base.coeff(&w.inverse());
            if mirrored != c * &eps {
                return Err(Error::InvalidBeta(format!(
                    "coefficient symmetry c(w^-1) = {epsilon} c(w) fails at {w}"
                )));
            }
        }
        let total = base
            .terms()
            .fold(BigRational::zero(), |acc, (_, c)| acc + c);
        if !total.is_zero() {
            return Err(Error::InvalidBeta(format!(
                "beta is not orthogonal to chi_1 (coefficient sum {total})"
            )));
        }
        Ok(BetaVector { base, epsilon })
    }

    /// `a_g - a_g^-1`.
    pub fn antisymmetric(rank: usize, g: usize) -> Result<Self> {
        let base = GroupAlgebraElement::from_terms(
            rank,
            [
                (Word::letter(Letter::gen(g)), rational(1)),
                (Word::letter(Letter::inv_gen(g)), rational(-1)),
            ],
        )?;
        Self::new(base, Epsilon::Minus)
    }

    /// `a_g + a_g^-1 - a_h - a_h^-1`.
    pub fn symmetric_pair(rank: usize, g: usize, h: usize) -> Result<Self> {
        let base = GroupAlgebraElement::from_terms(
            rank,
            [
                (Word::letter(Letter::gen(g)), rational(1)),
                (Word::letter(Letter::inv_gen(g)), rational(1)),
                (Word::letter(Letter::gen(h)), rational(-1)),
                (Word::letter(Letter::inv_gen(h)), rational(-1)),
            ],
        )?;
        Self::new(base, Epsilon::Plus)
    }

    /// The standard test vectors for a sign: `a_1 - a_1^-1`, `a_2 - a_2^-1` for
    /// `eps = -1`; `a_g + a_g^-1 - a_{g+1} - a_{g+1}^-1` for `eps = +1`.
    ///
    /// For `eps = +1` the admissible space has dimension `N - 1`, so rank 2
    /// yields a single vector.
    pub fn standard_family(rank: usize, epsilon: Epsilon) -> Result<Vec<Self>> {
        match epsilon {
            Epsilon::Minus => Ok(vec![
                Self::antisymmetric(rank, 1)?,
                Self::antisymmetric(rank, 2)?,
            ]),
            Epsilon::Plus => (1..rank.min(3))
                .map(|g| Self::symmetric_pair(rank, g, g + 1))
                .collect(),
        }
    }

    pub fn base(&self) -> &GroupAlgebraElement {
        &self.base
    }

    pub fn epsilon(&self) -> Epsilon {
        self.epsilon
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    /// Short label such as `a1 - a1^-1`.
    pub fn label(&self) -> String {
        let mut out = String::new();
        for (i, (w, c)) in self.base.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag != rational(1) {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&w.to_string());
        }
        out
    }
}
