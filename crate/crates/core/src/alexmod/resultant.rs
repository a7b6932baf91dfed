use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::laurent::LaurentPoly;
use crate::bareiss;

/// A count or order that may be infinite.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Count {
    Finite(BigInt),
    Infinite,
}

impl Count {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Count::Finite(x) => Some(x),
            Count::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Count::Infinite)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(x) => write!(f, "{x}"),
            Count::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Count::Finite(x) => match x.to_i64() {
                Some(v) => s.serialize_i64(v),
                None => s.serialize_str(&x.to_string()),
            },
            Count::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Resultant of two integer polynomials given densely, constant term first.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let m = f.len() - 1;
    let n = g.len() - 1;
    if m == 0 {
        return num_traits::pow(f[0].clone(), n);
    }
    if n == 0 {
        return num_traits::pow(g[0].clone(), m);
    }
    let size = m + n;
    let mut s = vec![vec![BigInt::zero(); size]; size];
    // rows hold coefficients from the leading term down
    for i in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            s[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            s[n + i][i + j] = c.clone();
        }
    }
    bareiss::det(&s)
}

/// `|Res(Δ, t^n - 1)|`, the order of `H_1(L_n)` when finite.
pub fn torsion_order_resultant(delta: &LaurentPoly, n: usize) -> Count {
    assert!(!delta.is_zero(), "Δ must be nonzero");
    assert!(n >= 1);
    let (_, f) = delta.dense();
    let mut g = vec![BigInt::zero(); n + 1];
    g[0] = BigInt::from(-1);
    g[n] = BigInt::from(1);
    let r = resultant(&f, &g).abs();
    if r.is_zero() {
        Count::Infinite
    } else {
        Count::Finite(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(0, c.iter().copied())
    }

    #[test]
    fn figure_eight_lucas() {
        // |H_1(L_n)| = L_{2n} - 2 for the figure-eight knot
        let d = p(&[1, -3, 1]);
        let mut lucas = vec![BigInt::from(2), BigInt::from(1)];
        for i in 2..=60 {
            let x = &lucas[i - 1] + &lucas[i - 2];
            lucas.push(x);
        }
        for n in 1..=30 {
            let expect = &lucas[2 * n] - BigInt::from(2);
            assert_eq!(
                torsion_order_resultant(&d, n),
                Count::Finite(expect),
                "n={n}"
            );
        }
    }

    #[test]
    fn trefoil_pattern() {
        let d = p(&[1, -1, 1]);
        assert_eq!(
            torsion_order_resultant(&d, 2),
            Count::Finite(BigInt::from(3))
        );
        assert_eq!(
            torsion_order_resultant(&d, 3),
            Count::Finite(BigInt::from(4))
        );
        assert_eq!(torsion_order_resultant(&d, 6), Count::Infinite);
        assert_eq!(
            torsion_order_resultant(&LaurentPoly::one(), 7),
            Count::Finite(BigInt::from(1))
        );
    }

    #[test]
    fn matches_root_product() {
        // Res(f, t^n - 1) = ± ∏ f(ζ^j) checked numerically
        let d = p(&[2, -3, 2]);
        for n in 1..=8 {
            let prod: f64 = (0..n)
                .map(|j| {
                    let z = num_complex::Complex64::from_polar(
                        1.0,
                        2.0 * std::f64::consts::PI * j as f64 / n as f64,
                    );
                    d.eval_c64(z).norm()
                })
                .product();
            let r = torsion_order_resultant(&d, n);
            let v = r.finite().unwrap().to_f64().unwrap();
            assert!(
                (v - prod).abs() < 1e-6 * prod.max(1.0),
                "n={n}: {v} vs {prod}"
            );
        }
    }
}
