use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::laurent::LaurentPoly;
use super::resultant::{torsion_order_resultant, Count};
use crate::alexmod::alexander_poly;
use crate::error::Result;
use crate::knotio::KnotPresentation;

/// Natural logarithm of a positive big integer.
pub fn ln_big(x: &BigInt) -> f64 {
    assert!(x.is_positive());
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 60;
    let top: BigInt = x >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Roots of a nonzero polynomial via companion-matrix eigenvalues.
pub fn roots(delta: &LaurentPoly) -> Vec<num_complex::Complex64> {
    let (_, c) = delta.dense();
    let c: Vec<f64> = c.iter().map(|x| x.to_f64().unwrap()).collect();
    let mut lo = 0;
    while lo < c.len() && c[lo] == 0.0 {
        lo += 1;
    }
    let c = &c[lo..];
    let d = c.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let lead = c[d];
    let comp = DMatrix::from_fn(d, d, |i, j| {
        if j == d - 1 {
            -c[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    comp.complex_eigenvalues().iter().copied().collect()
}

/// Mahler measure `|lead| · ∏ max(1, |root|)`.
pub fn mahler(delta: &LaurentPoly) -> f64 {
    assert!(!delta.is_zero());
    let lead = delta.leading().unwrap().abs().to_f64().unwrap();
    roots(delta)
        .iter()
        .map(|z| z.norm().max(1.0))
        .product::<f64>()
        * lead
}

/// `ln |Tor H_1(L_n)| / n`, or `None` when `b_1(L_n) > 0`.
pub fn sw_ratio_poly(delta: &LaurentPoly, n: usize) -> Option<f64> {
    match torsion_order_resultant(delta, n) {
        Count::Finite(x) => {
            if x.is_zero() {
                None
            } else {
                Some(ln_big(&x) / n as f64)
            }
        }
        Count::Infinite => None,
    }
}

pub fn sw_ratio(p: &KnotPresentation, n: usize) -> Result<Option<f64>> {
    Ok(sw_ratio_poly(&alexander_poly(p)?, n))
}
