use std::fmt;

use crate::error::{Error, Result};

/// A generator `a_i` (positive) or its inverse `a_i^-1` (negative). Never zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i32);

// a_1 < a_1^-1 < a_2 < a_2^-1 < ...
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.generator(), self.0 < 0).cmp(&(other.generator(), other.0 < 0))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Letter {
    pub fn new(generator: usize, exponent: i8) -> Result<Self> {
        if generator == 0 || !(exponent == 1 || exponent == -1) {
            return Err(Error::InvalidArgument(format!(
                "letter needs generator >= 1 and exponent +-1, got ({generator}, {exponent})"
            )));
        }
        Ok(Letter(generator as i32 * exponent as i32))
    }

    pub fn gen(generator: usize) -> Self {
        assert!(generator >= 1);
        Letter(generator as i32)
    }

    pub fn inv_gen(generator: usize) -> Self {
        assert!(generator >= 1);
        Letter(-(generator as i32))
    }

    pub fn generator(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn exponent(self) -> i8 {
        self.0.signum() as i8
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// All `2N` letters of rank `N`, ordered a_1, a_1^-1, a_2, a_2^-1, ...
    pub fn all(rank: usize) -> impl Iterator<Item = Letter> {
        (1..=rank).flat_map(|g| [Letter::gen(g), Letter::inv_gen(g)])
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 > 0 {
            write!(f, "a{}", self.0)
        } else {
            write!(f, "a{}^-1", -self.0)
        }
    }
}

/// A reduced word in the free group. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Freely reduces `letters`.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Same as [`Word::is_identity`].
    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Largest generator index used, 0 for the identity.
    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.generator()).max().unwrap_or(0)
    }

    /// Free-group product: concatenate and cancel at the junction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut cancel = 0;
        let (u, v) = (&self.0, &other.0);
        while cancel < u.len() && cancel < v.len() && u[u.len() - 1 - cancel] == v[cancel].inverse()
        {
            cancel += 1;
        }
        let mut out = Vec::with_capacity(u.len() + v.len() - 2 * cancel);
        out.extend_from_slice(&u[..u.len() - cancel]);
        out.extend_from_slice(&v[cancel..]);
        Word(out)
    }

    /// Every reduced word of length `n` over `rank` generators, in lexicographic
    /// letter order.
    pub fn all_of_length(n: usize, rank: usize) -> Vec<Word> {
        let mut words = vec![Word::identity()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(words.len() * (2 * rank - 1).max(1));
            for w in &words {
                for l in Letter::all(rank) {
                    if w.0.last() == Some(&l.inverse()) {
                        continue;
                    }
                    let mut letters = Vec::with_capacity(w.len() + 1);
                    letters.extend_from_slice(&w.0);
                    letters.push(l);
                    next.push(Word(letters));
                }
            }
            words = next;
        }
        words
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
