use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::alexmod::FinAbT;
use crate::error::{Error, Result};

/// A character `χ` of `Tor H_1(L_n)`: `χ(e_i) = exp(2πi a_i / d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    pub exponents: Vec<u64>,
    /// Smallest `ℓ | n` with `t^ℓ χ = χ`.
    pub order: usize,
}

/// The finite group `H/(t^n - 1)` together with the dual `t`-action on
/// character exponent vectors.
#[derive(Clone, Debug)]
pub struct CharacterGroup {
    h: FinAbT,
    moduli: Vec<u64>,
    exponent: u64,
    /// `(tχ)` exponents: `a'_i = Σ_j dual[i][j] a_j mod d_i`.
    dual: Vec<Vec<u64>>,
}

impl CharacterGroup {
    pub fn new(h: FinAbT) -> Result<Self> {
        if h.free_rank > 0 {
            return Err(Error::InfiniteFamily { n: h.n });
        }
        let moduli: Vec<u64> = h
            .invariant_factors
            .iter()
            .map(|d| {
                d.to_u64().ok_or_else(|| Error::Intractable {
                    size: format!("invariant factor {d}"),
                    cap: u64::MAX,
                })
            })
            .collect::<Result<_>>()?;
        let exponent = moduli.last().copied().unwrap_or(1);
        let k = moduli.len();
        let dual = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        let m = &h.t_matrix[i][j];
                        let v: BigInt = (m * BigInt::from(moduli[i])) / BigInt::from(moduli[j]);
                        v.mod_floor(&BigInt::from(moduli[i])).to_u64().unwrap()
                    })
                    .collect()
            })
            .collect();
        Ok(CharacterGroup {
            h,
            moduli,
            exponent,
            dual,
        })
    }

    pub fn n(&self) -> usize {
        self.h.n
    }

    pub fn homology(&self) -> &FinAbT {
        &self.h
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Exponent of the group (lcm of the invariant factors).
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Number of characters, i.e. `|Tor H_1(L_n)|`.
    pub fn size(&self) -> u128 {
        self.moduli.iter().map(|&d| d as u128).product()
    }

    pub fn trivial(&self) -> Character {
        Character {
            exponents: vec![0; self.moduli.len()],
            order: 1,
        }
    }

    /// `t χ`, i.e. `h ↦ χ(t h)`.
    pub fn shift_exponents(&self, a: &[u64]) -> Vec<u64> {
        (0..a.len())
            .map(|i| {
                let d = self.moduli[i] as u128;
                (self.dual[i]
                    .iter()
                    .zip(a)
                    .map(|(&m, &x)| (m as u128 * x as u128) % d)
                    .sum::<u128>()
                    % d) as u64
            })
            .collect()
    }

    pub fn shift_pow(&self, a: &[u64], k: usize) -> Vec<u64> {
        let mut x = a.to_vec();
        for _ in 0..k % self.n() {
            x = self.shift_exponents(&x);
        }
        x
    }

    /// Size of the `t`-orbit, which equals the order of the character.
    pub fn orbit_size(&self, a: &[u64]) -> usize {
        let mut x = self.shift_exponents(a);
        let mut k = 1;
        while x != a {
            x = self.shift_exponents(&x);
            k += 1;
        }
        k
    }

    pub fn character(&self, exponents: Vec<u64>) -> Result<Character> {
        if exponents.len() != self.moduli.len()
            || exponents.iter().zip(&self.moduli).any(|(a, d)| a >= d)
        {
            return Err(Error::Parse(format!(
                "exponents {exponents:?} do not fit moduli {:?}",
                self.moduli
            )));
        }
        let order = self.orbit_size(&exponents);
        Ok(Character { exponents, order })
    }

    pub fn orbit(&self, chi: &Character) -> Vec<Vec<u64>> {
        let mut out = vec![chi.exponents.clone()];
        let mut x = self.shift_exponents(&chi.exponents);
        while x != chi.exponents {
            out.push(x.clone());
            x = self.shift_exponents(&x);
        }
        out
    }

    pub fn is_orbit_representative(&self, chi: &Character) -> bool {
        self.orbit(chi).iter().all(|x| *x >= chi.exponents)
    }

    /// `χ(h)` as an exponent `e` with `χ(h) = exp(2πi e / exponent)`.
    pub fn value_exponent(&self, exponents: &[u64], h: &[BigInt]) -> u64 {
        let e = self.exponent as u128;
        let mut acc: u128 = 0;
        for ((&a, &d), x) in exponents.iter().zip(&self.moduli).zip(h) {
            if a == 0 {
                continue;
            }
            let x = x.mod_floor(&BigInt::from(d)).to_u64().unwrap() as u128;
            acc = (acc + (a as u128 * x % d as u128) * (e / d as u128)) % e;
        }
        acc as u64
    }

    /// Exponents of `χ_i = (t^i χ) · χ^{-1}`.
    pub fn twisted_difference(&self, chi: &Character, i: usize) -> Vec<u64> {
        let s = self.shift_pow(&chi.exponents, i);
        s.iter()
            .zip(&chi.exponents)
            .zip(&self.moduli)
            .map(|((&a, &b), &d)| (a + d - b) % d)
            .collect()
    }

    /// Enumerate all characters lexicographically with their orders.
    pub fn enumerate(&self) -> CharacterIter<'_> {
        CharacterIter {
            group: self,
            next: Some(vec![0; self.moduli.len()]),
        }
    }

    /// Orbit representatives (lexicographically smallest) of the given order.
    pub fn orbit_representatives(&self, order: usize) -> Vec<Character> {
        self.enumerate()
            .filter(|c| c.order == order && self.is_orbit_representative(c))
            .collect()
    }

    /// `χ' = t^k χ` for some `k`.
    pub fn conjugate_classes_equal(&self, a: &Character, b: &Character) -> bool {
        self.orbit(a).contains(&b.exponents)
    }
}

pub struct CharacterIter<'a> {
    group: &'a CharacterGroup,
    next: Option<Vec<u64>>,
}

impl Iterator for CharacterIter<'_> {
    type Item = Character;
    fn next(&mut self) -> Option<Character> {
        let cur = self.next.take()?;
        let mut nxt = cur.clone();
        let mut i = nxt.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            nxt[i] += 1;
            if nxt[i] < self.group.moduli[i] {
                self.next = Some(nxt);
                break;
            }
            nxt[i] = 0;
        }
        let order = self.group.orbit_size(&cur);
        Some(Character {
            exponents: cur,
            order,
        })
    }
}

pub fn is_trivial(chi: &Character) -> bool {
    chi.exponents.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexmod::branched_homology;
    use crate::knotio::knot_by_name;

    fn group(name: &str, n: usize) -> CharacterGroup {
        CharacterGroup::new(branched_homology(&knot_by_name(name).unwrap(), n)).unwrap()
    }

    #[test]
    fn figure_eight_double_cover() {
        let g = group("4_1", 2);
        let all: Vec<Character> = g.enumerate().collect();
        assert_eq!(all.len(), 5);
        assert_eq!(all.iter().filter(|c| c.order == 1).count(), 1);
        assert_eq!(all.iter().filter(|c| c.order == 2).count(), 4);
        let reps = g.orbit_representatives(2);
        assert_eq!(reps.len(), 2);
        assert!(!g.conjugate_classes_equal(&reps[0], &reps[1]));
        assert!(g.conjugate_classes_equal(&reps[0], &reps[0]));
        let shifted = g.character(g.shift_exponents(&reps[0].exponents)).unwrap();
        assert!(g.conjugate_classes_equal(&reps[0], &shifted));
    }

    #[test]
    fn trefoil_triple_cover() {
        let g = group("3_1", 3);
        let all: Vec<Character> = g.enumerate().collect();
        assert_eq!(all.len(), 4);
        assert_eq!(all.iter().filter(|c| c.order == 3).count(), 3);
        assert_eq!(g.orbit_representatives(3).len(), 1);
    }

    #[test]
    fn unknot_has_only_trivial_character() {
        let g = CharacterGroup::new(branched_homology(
            &crate::knotio::KnotPresentation::unknot(),
            4,
        ))
        .unwrap();
        let all: Vec<Character> = g.enumerate().collect();
        assert_eq!(all, vec![g.trivial()]);
    }

    #[test]
    fn infinite_family_rejected() {
        let h = branched_homology(&knot_by_name("3_1").unwrap(), 6);
        assert_eq!(
            CharacterGroup::new(h).err(),
            Some(Error::InfiniteFamily { n: 6 })
        );
    }

    #[test]
    fn shift_is_a_character_automorphism() {
        // χ(t h) computed two ways
        let g = group("5_2", 3);
        let h = g.homology();
        for chi in g.enumerate() {
            let t_chi = g.shift_exponents(&chi.exponents);
            for i in 0..h.rank() {
                let mut e = h.zero();
                e[i] = BigInt::from(1);
                let the = h.apply_t(&e);
                assert_eq!(
                    g.value_exponent(&chi.exponents, &the),
                    g.value_exponent(&t_chi, &e)
                );
            }
        }
    }
}
