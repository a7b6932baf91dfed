use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::laurent::LaurentPoly;
use crate::bareiss;
use crate::error::{Error, Result};
use crate::knotio::{KnotPresentation, Word};

/// Abelianized Fox derivative `∂w/∂x_k` under `x_j ↦ t^{sign·ε_j}`.
pub fn fox_abelian(w: &Word, k: usize, weights: &[i64], sign: i64) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    let mut deg = 0i64;
    for (g, e) in w.unit_letters() {
        let step = sign * weights[g];
        if g == k {
            if e > 0 {
                p.add_term(deg, BigInt::one());
            } else {
                p.add_term(deg - step, -BigInt::one());
            }
        }
        deg += e * step;
    }
    p
}

/// Alexander matrix: entry `(j, k)` is `∂r_j/∂x_k` with `t` the meridian image.
pub fn alexander_matrix(p: &KnotPresentation) -> Vec<Vec<LaurentPoly>> {
    let g = p.num_generators();
    p.relators()
        .iter()
        .map(|r| (0..g).map(|k| fox_abelian(r, k, p.weights(), 1)).collect())
        .collect()
}

const MINOR_CAP: usize = 20_000;

fn binomial(n: usize, k: usize) -> usize {
    let mut r: usize = 1;
    for i in 0..k.min(n - k) {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

fn row_subsets(r: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, r: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            rec(i + 1, r, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, r, k, &mut Vec::new(), &mut out);
    out
}

/// Alexander polynomial normalized to lowest degree 0 with positive leading
/// coefficient.
///
/// Deleting a column of weight `ε` multiplies the first elementary ideal by
/// `(t^ε - 1)/(t - 1)`; that factor is divided out. For presentations with
/// more than `g - 1` relators the gcd of all maximal minors is taken.
pub fn alexander_poly(p: &KnotPresentation) -> Result<LaurentPoly> {
    let g = p.num_generators();
    let m = alexander_matrix(p);
    let w = p.weights();
    let col = (0..g)
        .filter(|&k| w[k] != 0)
        .min_by_key(|&k| (w[k].abs(), k))
        .expect("some generator has nonzero weight");
    let keep: Vec<usize> = (0..g).filter(|&k| k != col).collect();
    let size = g - 1;
    if m.len() < size {
        return Err(Error::NormalizationFailure(
            "too few relators for a knot group".into(),
        ));
    }
    if binomial(m.len(), size) > MINOR_CAP {
        return Err(Error::Intractable {
            size: format!("{} maximal minors", binomial(m.len(), size)),
            cap: MINOR_CAP as u64,
        });
    }
    let mut ideal = LaurentPoly::zero();
    for rows in row_subsets(m.len(), size) {
        let minor: Vec<Vec<LaurentPoly>> = rows
            .iter()
            .map(|&i| keep.iter().map(|&k| m[i][k].clone()).collect())
            .collect();
        let d = bareiss::det(&minor);
        ideal = ideal.gcd(&d);
        if ideal.is_unit() {
            break;
        }
    }
    let corrected = (&ideal * &LaurentPoly::t_pow_minus_one(1))
        .div_exact(&LaurentPoly::t_pow_minus_one(w[col]))
        .ok_or_else(|| {
            Error::NormalizationFailure("minor not divisible by the weight factor".into())
        })?;
    let delta = corrected.normalized();
    let at_one = delta.eval_int(&BigInt::one()).unwrap_or_default();
    if !at_one.abs().is_one() {
        return Err(Error::NormalizationFailure(format!(
            "Δ(1) = {at_one}, expected ±1"
        )));
    }
    if !delta.associate(&delta.substitute(1, -1)) {
        return Err(Error::NormalizationFailure(format!(
            "Δ = {delta} is not symmetric"
        )));
    }
    Ok(delta)
}
