use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::alexmod::{
    alexander_poly, betti_and_torsion, torsion_order_resultant, Count, LaurentPoly,
};
use crate::error::{Error, Result};
use crate::knotio::KnotPresentation;

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Prime factors with multiplicity, ascending.
pub fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn mobius(n: usize) -> i64 {
    let f = prime_factors(n);
    if f.windows(2).any(|w| w[0] == w[1]) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `b_1(L_d)` and `|Tor H_1(L_d)|` for one knot, with the resultant as the
/// fast path and Smith form when the resultant vanishes.
pub struct CoverData<'a> {
    p: &'a KnotPresentation,
    delta: Option<LaurentPoly>,
}

impl<'a> CoverData<'a> {
    pub fn new(p: &'a KnotPresentation) -> Self {
        let delta = if p.deficiency() == 1 {
            alexander_poly(p).ok()
        } else {
            None
        };
        CoverData { p, delta }
    }

    pub fn betti_torsion(&self, d: usize) -> (usize, BigInt) {
        if let Some(delta) = &self.delta {
            if let Count::Finite(x) = torsion_order_resultant(delta, d) {
                return (0, x);
            }
        }
        betti_and_torsion(self.p, d)
    }
}

/// Conjugacy classes of irreducible metabelian `SL(n, ℂ)` representations.
///
/// These correspond to `t`-orbits of characters of `H_1(L_n)` of order
/// exactly `n`. The count is done over components of the character group:
/// with `b = b_1(L_n)`, only the `d | n` with `b_1(L_d) = b` contribute
/// top-dimensional components, and those are counted by Möbius inversion.
pub fn count_classes(p: &KnotPresentation, n: usize) -> Count {
    assert!(n >= 1);
    let data = CoverData::new(p);
    let (b, _) = data.betti_torsion(n);
    let mut s = BigInt::zero();
    for d in divisors(n) {
        let mu = mobius(n / d);
        if mu == 0 {
            continue;
        }
        let (bd, tor) = data.betti_torsion(d);
        if bd == b {
            s += tor * mu;
        }
    }
    if b > 0 {
        return if s.is_positive() {
            Count::Infinite
        } else {
            Count::Finite(BigInt::zero())
        };
    }
    let (q, r) = s.div_rem(&BigInt::from(n));
    debug_assert!(r.is_zero(), "order-n characters come in orbits of size n");
    Count::Finite(q)
}

/// Lower bound `⌈(|Tor H_1(L_n)| - Σ_i |Tor H_1(L_{n/p_i})|) / n⌉`, clamped
/// at zero, where `n = p_1 ⋯ p_k` with primes repeated.
pub fn rn_lower_bound(p: &KnotPresentation, n: usize) -> Result<BigInt> {
    assert!(n >= 1);
    let data = CoverData::new(p);
    let tor = |d: usize| -> Result<BigInt> {
        let (b, t) = data.betti_torsion(d);
        if b > 0 {
            Err(Error::InfiniteFamily { n: d })
        } else {
            Ok(t)
        }
    };
    let mut s = tor(n)?;
    for q in prime_factors(n) {
        s -= tor(n / q)?;
    }
    if !s.is_positive() {
        return Ok(BigInt::zero());
    }
    Ok(s.div_ceil(&BigInt::from(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexmod::branched_homology;
    use crate::knotio::{knot_by_name, torus_knot};
    use crate::metab::CharacterGroup;

    #[test]
    fn arithmetic_helpers() {
        assert_eq!(prime_factors(12), vec![2, 2, 3]);
        assert_eq!(prime_factors(1), Vec::<usize>::new());
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(
            (1..=10).map(mobius).collect::<Vec<_>>(),
            vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
        );
    }

    #[test]
    fn table_values_for_figure_eight() {
        let p = knot_by_name("4_1").unwrap();
        assert_eq!(count_classes(&p, 7), Count::Finite(120.into()));
        assert_eq!(count_classes(&p, 21), Count::Finite(28_527_320.into()));
    }

    #[test]
    fn torus_3_5() {
        let p = torus_knot(3, 5).unwrap();
        assert_eq!(count_classes(&p, 3), Count::Finite(8.into()));
        assert_eq!(count_classes(&p, 5), Count::Finite(16.into()));
        let k = knot_by_name("10_153").unwrap();
        assert_eq!(count_classes(&k, 3), Count::Finite(16.into()));
        assert_eq!(count_classes(&k, 5), Count::Finite(24.into()));
    }

    #[test]
    fn trefoil_pattern() {
        let p = knot_by_name("3_1").unwrap();
        let nonzero: Vec<usize> = (1..=24)
            .filter(|&n| n > 1 && count_classes(&p, n) != Count::Finite(BigInt::zero()))
            .collect();
        assert_eq!(nonzero, vec![2, 3, 6]);
        assert_eq!(count_classes(&p, 6), Count::Infinite);
        assert_eq!(count_classes(&p, 2), Count::Finite(1.into()));
        assert_eq!(count_classes(&p, 3), Count::Finite(1.into()));
    }

    #[test]
    fn brute_force_oracle() {
        for name in ["unknot", "3_1", "4_1", "5_1", "5_2"] {
            let p = knot_by_name(name).unwrap();
            for n in 1..=6 {
                let h = branched_homology(&p, n);
                if h.free_rank > 0 {
                    continue;
                }
                let g = CharacterGroup::new(h).unwrap();
                let brute = g.enumerate().filter(|c| c.order == n).count();
                assert_eq!(brute % n, 0);
                assert_eq!(
                    count_classes(&p, n),
                    Count::Finite((brute / n).into()),
                    "{name} n={n}"
                );
            }
        }
    }

    #[test]
    fn lower_bound() {
        let p = knot_by_name("4_1").unwrap();
        let b6 = rn_lower_bound(&p, 6).unwrap();
        let data = CoverData::new(&p);
        let t = |d| data.betti_torsion(d).1;
        let expect = (t(6) - t(3) - t(2)).div_ceil(&BigInt::from(6));
        assert_eq!(b6, expect);
        assert!(b6 <= BigInt::from(50));
        for n in [2usize, 3, 5, 7, 11, 13] {
            assert_eq!(
                Count::Finite(rn_lower_bound(&p, n).unwrap()),
                count_classes(&p, n)
            );
        }
        let u = KnotPresentation::unknot();
        for n in 2..8 {
            assert_eq!(rn_lower_bound(&u, n).unwrap(), BigInt::zero());
        }
        let t31 = knot_by_name("3_1").unwrap();
        assert_eq!(
            rn_lower_bound(&t31, 6).err(),
            Some(Error::InfiniteFamily { n: 6 })
        );
    }
}
