use num_integer::Integer;

use super::presentation::{KnotPresentation, Source};
use super::word::Word;
use crate::error::{Error, Result};

/// `⟨x, y | x^p y^{-q}⟩` with meridian `x^s y^r`, `rp + sq = 1`, taking the
/// smallest nonnegative `s`, and longitude `x^p μ^{-pq}`.
pub fn torus_knot(p: i64, q: i64) -> Result<KnotPresentation> {
    if p < 2 || q < 2 {
        return Err(Error::InvalidPresentation(format!(
            "torus knot needs p, q >= 2, got ({p}, {q})"
        )));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    // s ≡ q^{-1} (mod p)
    let s = (0..p)
        .find(|s| (s * q).rem_euclid(p) == 1)
        .expect("q invertible mod p");
    let r = (1 - s * q) / p;
    let (x, y) = (0, 1);
    let relator = Word::from_letters([(x, p), (y, -q)]);
    let meridian = Word::from_letters([(x, s), (y, r)]);
    let longitude = Word::gen_pow(x, p).mul(&meridian.pow(-p * q));
    KnotPresentation::new(2, vec![relator], meridian, Some(longitude), Source::Torus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_torus() {
        let k = torus_knot(2, 3).unwrap();
        assert_eq!(k.meridian().letters(), &[(0, 1), (1, -1)]);
        assert_eq!(k.weights(), &[3, 2]);
        assert_eq!(k.degree(k.longitude().unwrap()), 0);
    }

    #[test]
    fn bezout_identity() {
        for (p, q) in [(2, 3), (3, 5), (2, 9), (5, 3), (4, 7)] {
            let k = torus_knot(p, q).unwrap();
            assert_eq!(k.degree(k.meridian()), 1);
            assert_eq!(k.degree(k.longitude().unwrap()), 0);
        }
    }

    #[test]
    fn not_coprime() {
        assert_eq!(torus_knot(2, 2), Err(Error::NotCoprime { p: 2, q: 2 }));
        assert_eq!(torus_knot(4, 6), Err(Error::NotCoprime { p: 4, q: 6 }));
    }
}
