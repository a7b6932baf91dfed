use std::fmt;

use serde::{Deserialize, Serialize};

/// Freely reduced word in the generators `x_0, x_1, ...`, stored as
/// `(generator, exponent)` syllables.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<(usize, i64)>", into = "Vec<(usize, i64)>")]
pub struct Word {
    letters: Vec<(usize, i64)>,
}

impl From<Vec<(usize, i64)>> for Word {
    fn from(v: Vec<(usize, i64)>) -> Self {
        Word::from_letters(v)
    }
}

impl From<Word> for Vec<(usize, i64)> {
    fn from(w: Word) -> Self {
        w.letters
    }
}

impl Word {
    pub fn identity() -> Self {
        Word {
            letters: Vec::new(),
        }
    }

    pub fn gen(k: usize) -> Self {
        Word {
            letters: vec![(k, 1)],
        }
    }

    pub fn gen_pow(k: usize, e: i64) -> Self {
        Word::from_letters([(k, e)])
    }

    pub fn from_letters<I: IntoIterator<Item = (usize, i64)>>(it: I) -> Self {
        let mut w = Word::identity();
        for (g, e) in it {
            w.push(g, e);
        }
        w
    }

    fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((g, e));
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of absolute exponents.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|&(g, _)| g).max()
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn mul(&self, other: &Word) -> Self {
        let mut w = self.clone();
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..e.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    pub fn commutator(a: &Word, b: &Word) -> Self {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    /// Image in the abelianization `Z^g`.
    pub fn exponent_sums(&self, num_generators: usize) -> Vec<i64> {
        let mut v = vec![0; num_generators];
        for &(g, e) in &self.letters {
            v[g] += e;
        }
        v
    }

    /// Degree under the homomorphism sending `x_k` to `weights[k]`.
    pub fn weight(&self, weights: &[i64]) -> i64 {
        self.letters.iter().map(|&(g, e)| weights[g] * e).sum()
    }

    /// Iterate over single letters `x_g^{±1}`, expanding powers.
    pub fn unit_letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.letters
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n((g, e.signum()), e.unsigned_abs() as usize))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, &(g, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if e == 1 {
                write!(f, "x{g}")?;
            } else {
                write!(f, "x{g}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let w = Word::from_letters([(0, 1), (1, 2), (1, -2), (0, 1)]);
        assert_eq!(w.letters(), &[(0, 2)]);
        let x = Word::from_letters([(0, 1), (1, -1)]);
        assert!(x.mul(&x.inverse()).is_identity());
    }

    #[test]
    fn serde_reduces() {
        let w: Word = serde_json::from_str("[[0,1],[0,-1],[1,3]]").unwrap();
        assert_eq!(w.letters(), &[(1, 3)]);
        assert_eq!(serde_json::to_string(&w).unwrap(), "[[1,3]]");
    }

    #[test]
    fn pow_and_weight() {
        let w = Word::from_letters([(0, 1), (1, -1)]).pow(-2);
        assert_eq!(w.letters(), &[(1, 1), (0, -1), (1, 1), (0, -1)]);
        assert_eq!(w.weight(&[3, 2]), -2);
        assert_eq!(w.unit_letters().count(), 4);
    }
}
