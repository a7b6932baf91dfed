use std::collections::BTreeMap;

use super::word::Word;

/// Element of the integral group ring of a free group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeGroupRingElt {
    terms: BTreeMap<Word, i64>,
}

impl FreeGroupRingElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_word(w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(w, 1);
        e
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Word, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    /// Left multiplication by a group element.
    pub fn left_mul(&self, g: &Word) -> Self {
        let mut out = Self::zero();
        for (w, &c) in &self.terms {
            out.add_term(g.mul(w), c);
        }
        out
    }

    /// Right multiplication by a group element.
    pub fn right_mul(&self, g: &Word) -> Self {
        let mut out = Self::zero();
        for (w, &c) in &self.terms {
            out.add_term(w.mul(g), c);
        }
        out
    }

    /// Image under a homomorphism into any ring, given a word evaluator.
    pub fn map<T, F>(
        &self,
        mut eval: F,
        zero: T,
        add: impl Fn(T, T) -> T,
        scale: impl Fn(i64, T) -> T,
    ) -> T
    where
        F: FnMut(&Word) -> T,
    {
        let mut acc = zero;
        for (w, &c) in &self.terms {
            acc = add(acc, scale(c, eval(w)));
        }
        acc
    }
}

/// Free Fox derivative `∂w/∂x_k`.
pub fn fox_derivative(w: &Word, k: usize) -> FreeGroupRingElt {
    let mut out = FreeGroupRingElt::zero();
    let mut prefix = Word::identity();
    for (g, e) in w.unit_letters() {
        if g == k {
            if e > 0 {
                out.add_term(prefix.clone(), 1);
            } else {
                out.add_term(prefix.mul(&Word::gen_pow(k, -1)), -1);
            }
        }
        prefix = prefix.mul(&Word::gen_pow(g, e));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(l: &[(usize, i64)]) -> Word {
        Word::from_letters(l.iter().copied())
    }

    #[test]
    fn product_rule_base() {
        let d = fox_derivative(&w(&[(0, 1), (1, 1)]), 0);
        assert_eq!(d, FreeGroupRingElt::from_word(Word::identity()));
    }

    #[test]
    fn inverse_rule() {
        let d = fox_derivative(&w(&[(0, -1)]), 0);
        let mut expect = FreeGroupRingElt::zero();
        expect.add_term(w(&[(0, -1)]), -1);
        assert_eq!(d, expect);
    }

    #[test]
    fn conjugate() {
        let d = fox_derivative(&w(&[(0, 1), (1, 1), (0, -1)]), 0);
        let mut expect = FreeGroupRingElt::zero();
        expect.add_term(Word::identity(), 1);
        expect.add_term(w(&[(0, 1), (1, 1), (0, -1)]), -1);
        assert_eq!(d, expect);
    }

    #[test]
    fn powers_expand() {
        // ∂(x^3)/∂x = 1 + x + x^2
        let d = fox_derivative(&w(&[(0, 3)]), 0);
        assert_eq!(d.terms().len(), 3);
        // ∂(x^-2)/∂x = -x^-1 - x^-2
        let d = fox_derivative(&w(&[(0, -2)]), 0);
        let mut expect = FreeGroupRingElt::zero();
        expect.add_term(w(&[(0, -1)]), -1);
        expect.add_term(w(&[(0, -2)]), -1);
        assert_eq!(d, expect);
    }

    #[test]
    fn cancelling_terms_vanish() {
        // ∂(x y x^-1)/∂x: 1 - x y x^-1, and for w = x x^-1 (reduced to 1) derivative is 0
        let d = fox_derivative(&Word::identity(), 0);
        assert!(d.is_zero());
        let mut e = FreeGroupRingElt::zero();
        e.add_term(Word::gen(1), 2);
        e.add_term(Word::gen(1), -2);
        assert!(e.is_zero());
    }
}
