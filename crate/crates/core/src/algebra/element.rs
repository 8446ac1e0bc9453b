use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::word::Word;
use crate::error::{Error, Result};

/// Renders a rational as `p/q` with `q >= 1`.
pub fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Nearest double; NaN if the value overflows.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// A finitely supported element of the rational group algebra `Q[F_N]`.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    rank: usize,
    terms: HashMap<Word, BigRational>,
}

impl GroupAlgebraElement {
    pub fn zero(rank: usize) -> Self {
        GroupAlgebraElement {
            rank,
            terms: HashMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::from_word(rank, Word::identity())
    }

    pub fn from_word(rank: usize, w: Word) -> Self {
        let mut terms = HashMap::with_capacity(1);
        terms.insert(w, BigRational::one());
        GroupAlgebraElement { rank, terms }
    }

    /// Builds an element from `(word, coefficient)` pairs, summing repeats and
    /// dropping zeros. Words must be reduced and use generators `<= rank`.
    pub fn from_terms<I>(rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, BigRational)>,
    {
        let mut out = Self::zero(rank);
        for (w, c) in terms {
            if !w.is_reduced() {
                return Err(Error::InvalidArgument(format!("word {w} is not reduced")));
            }
            if w.max_generator() > rank {
                return Err(Error::GeneratorOutOfRange {
                    index: w.max_generator(),
                    rank,
                });
            }
            out.add_term(w, c);
        }
        Ok(out)
    }

    pub(crate) fn from_map_unchecked(rank: usize, mut terms: HashMap<Word, BigRational>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        GroupAlgebraElement { rank, terms }
    }

    pub(crate) fn add_term(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn get(&self, w: &Word) -> Option<&BigRational> {
        self.terms.get(w)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    /// Terms sorted by word, for deterministic output.
    pub fn sorted_terms(&self) -> Vec<(&Word, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| (a.0.len(), a.0).cmp(&(b.0.len(), b.0)));
        v
    }

    /// Distinct word lengths present in the support, ascending.
    pub fn lengths(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().map(Word::len).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The `*` operation: invert words, conjugate coefficients (a no-op over Q).
    pub fn adjoint(&self) -> Self {
        GroupAlgebraElement {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.inverse(), c.clone()))
                .collect(),
        }
    }

    /// The trace: coefficient of the identity.
    pub fn trace(&self) -> BigRational {
        self.coeff(&Word::identity())
    }

    /// Keeps only the terms of word length `l`.
    pub fn project_length(&self, l: usize) -> Self {
        GroupAlgebraElement {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == l)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero(self.rank);
        }
        GroupAlgebraElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_rank(self, other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_rank(self, other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        Ok(out)
    }

    /// `trace(self * other)` without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> Result<BigRational> {
        check_rank(self, other)?;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = BigRational::zero();
        for (w, c) in &small.terms {
            if let Some(d) = large.terms.get(&w.inverse()) {
                acc += c * d;
            }
        }
        Ok(acc)
    }

    /// JSON object `{word: "p/q"}` with words in (length, lexicographic) order.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(w, c)| (w.to_string(), rational_to_string(c).into()))
            .collect();
        serde_json::Value::Object(map)
    }

    /// Terms keyed by display string; handy in tests.
    pub fn to_string_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(w, c)| (w.to_string(), rational_to_string(c)))
            .collect()
    }
}

pub(crate) fn check_rank(x: &GroupAlgebraElement, y: &GroupAlgebraElement) -> Result<()> {
    if x.rank != y.rank {
        return Err(Error::RankMismatch {
            left: x.rank,
            right: y.rank,
        });
    }
    Ok(())
}

// Operator impls panic on rank mismatch; use the `try_*` methods where ranks
// are not known to agree.
impl Add for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn add(self, rhs: Self) -> GroupAlgebraElement {
        self.try_add(rhs).expect("rank mismatch in addition")
    }
}

impl Sub for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn sub(self, rhs: Self) -> GroupAlgebraElement {
        self.try_sub(rhs).expect("rank mismatch in subtraction")
    }
}

impl Neg for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn neg(self) -> GroupAlgebraElement {
        GroupAlgebraElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Mul<&BigRational> for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn mul(self, k: &BigRational) -> GroupAlgebraElement {
        self.scale(k)
    }
}
