//! Freely reduced words over abstract generators.
//!
//! Commutators follow `[u, v] = u⁻¹ v⁻¹ u v` and conjugation `uᵛ = v⁻¹ u v`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Position of a generator in a presentation's generator list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Generator(pub usize);

/// A generator or its inverse. Serialized as `[index, sign]` with sign `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "(usize, i8)", try_from = "(usize, i8)")]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(generator: usize, sign: i8) -> Letter {
        Letter { generator, inverse: sign < 0 }
    }

    pub const fn pos(generator: usize) -> Letter {
        Letter { generator, inverse: false }
    }

    pub const fn neg(generator: usize) -> Letter {
        Letter { generator, inverse: true }
    }

    pub const fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub const fn inverted(self) -> Letter {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    /// Column of this letter in a coset table: `2g` for `g`, `2g + 1` for `g⁻¹`.
    pub const fn column(self) -> usize {
        2 * self.generator + self.inverse as usize
    }
}

impl From<Letter> for (usize, i8) {
    fn from(l: Letter) -> Self {
        (l.generator, l.sign())
    }
}

impl TryFrom<(usize, i8)> for Letter {
    type Error = String;

    fn try_from((generator, sign): (usize, i8)) -> Result<Self, Self::Error> {
        match sign {
            1 | -1 => Ok(Letter::new(generator, sign)),
            other => Err(format!("letter sign must be 1 or -1, got {other}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("generator index {index} out of range for {num_generators} generators")]
    GeneratorOutOfRange { index: usize, num_generators: usize },
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Word::reduce(Vec::<Letter>::deserialize(deserializer)?))
    }
}

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Word {
        Word(vec![Letter::pos(g)])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(&last) if last == l.inverted() => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
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

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        // only the junction can cancel
        let mut k = 0;
        while k < self.0.len()
            && k < other.0.len()
            && self.0[self.0.len() - 1 - k] == other.0[k].inverted()
        {
            k += 1;
        }
        let mut letters = Vec::with_capacity(self.0.len() + other.0.len() - 2 * k);
        letters.extend_from_slice(&self.0[..self.0.len() - k]);
        letters.extend_from_slice(&other.0[k..]);
        Word(letters)
    }

    /// `[self, other] = self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Word) -> Word {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    /// `otherⁱⁿᵛ self other`, i.e. `self` conjugated by `other`.
    pub fn conjugate(&self, by: &Word) -> Word {
        by.inverse().mul(self).mul(by)
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Signed count of each generator; the abelianization image of the word.
    pub fn exponent_sums(&self, num_generators: usize) -> Result<Vec<i64>, WordError> {
        let mut sums = vec![0i64; num_generators];
        for l in &self.0 {
            let slot = sums.get_mut(l.generator).ok_or(WordError::GeneratorOutOfRange {
                index: l.generator,
                num_generators,
            })?;
            *slot += l.sign() as i64;
        }
        Ok(sums)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    /// Renames generators through `f`; the result is re-reduced.
    pub fn map_generators(&self, mut f: impl FnMut(usize) -> usize) -> Word {
        Word::reduce(self.0.iter().map(|l| Letter { generator: f(l.generator), inverse: l.inverse }))
    }

    /// Maximal runs of one letter, as `(generator, exponent)` pairs.
    pub fn syllables(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for l in &self.0 {
            match out.last_mut() {
                Some((g, e)) if *g == l.generator && (*e < 0) == l.inverse => *e += l.sign() as i64,
                _ => out.push((l.generator, l.sign() as i64)),
            }
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, e)) in self.syllables().into_iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{g}")?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: usize = 0;
    const B: usize = 1;

    fn w(letters: &[(usize, i8)]) -> Word {
        Word::reduce(letters.iter().map(|&(g, s)| Letter::new(g, s)))
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(Word::reduce([]), Word::identity());
        assert_eq!(w(&[(A, 1), (A, -1)]), Word::identity());
        assert_eq!(w(&[(A, 1), (B, 1), (B, -1), (A, 1)]).letters(), &[Letter::pos(A), Letter::pos(A)]);
    }

    #[test]
    fn invert_examples() {
        assert_eq!(Word::identity().inverse(), Word::identity());
        assert_eq!(w(&[(A, 1)]).inverse(), w(&[(A, -1)]));
        assert_eq!(w(&[(A, 1), (B, -1)]).inverse(), w(&[(B, 1), (A, -1)]));
    }

    #[test]
    fn multiply_examples() {
        let x = w(&[(A, 1), (B, -1)]);
        assert_eq!(Word::identity().mul(&x), x);
        assert_eq!(w(&[(A, 1)]).mul(&w(&[(A, -1)])), Word::identity());
        assert_eq!(w(&[(A, 1)]).mul(&w(&[(B, 1)])), w(&[(A, 1), (B, 1)]));
        // cancellation across the junction goes deeper than one letter
        assert_eq!(w(&[(A, 1), (B, 1)]).mul(&w(&[(B, -1), (A, -1), (B, 1)])), w(&[(B, 1)]));
    }

    #[test]
    fn commutator_examples() {
        let x = w(&[(A, 1), (B, -1), (A, 1)]);
        assert_eq!(x.commutator(&x), Word::identity());
        assert_eq!(
            Word::generator(A).commutator(&Word::generator(B)),
            w(&[(A, -1), (B, -1), (A, 1), (B, 1)])
        );
        assert_eq!(Word::identity().commutator(&x), Word::identity());
    }

    #[test]
    fn power_examples() {
        let a = Word::generator(A);
        assert_eq!(a.pow(0), Word::identity());
        assert_eq!(a.pow(3), w(&[(A, 1), (A, 1), (A, 1)]));
        assert_eq!(a.pow(-2), w(&[(A, -1), (A, -1)]));
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(Word::identity().exponent_sums(2).unwrap(), vec![0, 0]);
        let c = Word::generator(A).commutator(&Word::generator(B));
        assert_eq!(c.exponent_sums(2).unwrap(), vec![0, 0]);
        assert_eq!(Word::generator(A).pow(4).exponent_sums(2).unwrap(), vec![4, 0]);
        assert_eq!(
            Word::generator(B).exponent_sums(1),
            Err(WordError::GeneratorOutOfRange { index: 1, num_generators: 1 })
        );
    }

    #[test]
    fn syllables_compress_runs() {
        let x = w(&[(A, 1), (A, 1), (B, -1), (B, -1), (B, -1), (A, 1)]);
        assert_eq!(x.syllables(), vec![(A, 2), (B, -3), (A, 1)]);
        assert_eq!(x.to_string(), "x0^2*x1^-3*x0");
    }

    #[test]
    fn letter_serde_is_index_sign_pair() {
        let x = w(&[(A, 1), (B, -1)]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, "[[0,1],[1,-1]]");
        assert_eq!(serde_json::from_str::<Word>(&s).unwrap(), x);
        assert!(serde_json::from_str::<Word>("[[0,2]]").is_err());
        // deserialization reduces
        assert_eq!(serde_json::from_str::<Word>("[[0,1],[0,-1]]").unwrap(), Word::identity());
    }
}
