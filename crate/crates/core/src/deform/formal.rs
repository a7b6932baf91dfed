use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::cocycles::Cochain1;
use crate::error::{Error, Result};
use crate::knotio::{KnotPresentation, Word};
use crate::linalg::{lstsq, Mat, Scalar, RANK_TOL};
use crate::rep::Representation;
use crate::twisted::{adjoint_rep, sl_coords, TwistedComplex};

/// Residual above which an order is declared obstructed.
pub const OBSTRUCTION_TOL: f64 = 1e-7;

/// Truncated power series in `t` with matrix coefficients.
type Series = Vec<DMatrix<Complex64>>;

fn series_mul(a: &Series, b: &Series) -> Series {
    let k = a.len();
    let n = a[0].nrows();
    let mut out = vec![DMatrix::zeros(n, n); k];
    for i in 0..k {
        for j in 0..k - i {
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

/// `exp(a)` for `a` with zero constant term.
fn series_exp(a: &Series) -> Series {
    let k = a.len();
    let n = a[0].nrows();
    let mut unit = vec![DMatrix::zeros(n, n); k];
    unit[0] = DMatrix::identity(n, n);
    let mut out = unit.clone();
    let mut term = unit;
    for m in 1..k {
        term = series_mul(&term, a);
        for c in term.iter_mut() {
            *c /= Complex64::new(m as f64, 0.0);
        }
        for (o, c) in out.iter_mut().zip(&term) {
            *o += c;
        }
    }
    out
}

fn letter_series(
    alpha: &[DMatrix<Complex64>],
    alpha_inv: &[DMatrix<Complex64>],
    terms: &[Cochain1],
    len: usize,
    g: usize,
    sign: i64,
) -> Series {
    let n = alpha[g].nrows();
    let s = if sign > 0 { 1.0 } else { -1.0 };
    let mut a = vec![DMatrix::zeros(n, n); len];
    for (i, c) in terms.iter().enumerate().take(len - 1) {
        a[i + 1] = c.values[g].to_nalgebra() * Complex64::new(s, 0.0);
    }
    let e = series_exp(&a);
    if sign > 0 {
        e.into_iter().map(|m| m * &alpha[g]).collect()
    } else {
        e.into_iter().map(|m| &alpha_inv[g] * m).collect()
    }
}

fn relator_series(
    alpha: &[DMatrix<Complex64>],
    alpha_inv: &[DMatrix<Complex64>],
    terms: &[Cochain1],
    len: usize,
    r: &Word,
) -> Series {
    let n = alpha[0].nrows();
    let mut acc = vec![DMatrix::zeros(n, n); len];
    acc[0] = DMatrix::identity(n, n);
    for (g, e) in r.unit_letters() {
        acc = series_mul(&acc, &letter_series(alpha, alpha_inv, terms, len, g, e));
    }
    acc
}

/// Coefficients `a_1, …, a_K` of `ρ_t(x) = exp(Σ t^i a_i(x)) α(x)` solving
/// the relators to order `K`.
#[derive(Clone, Debug, Serialize)]
pub struct FormalSeries {
    pub order: usize,
    pub terms: Vec<Cochain1>,
    /// Largest relator coefficient at each order `1..=K`.
    pub residuals: Vec<f64>,
}

/// Solve for the higher-order terms by least squares order by order; an
/// order whose residual exceeds [`OBSTRUCTION_TOL`] is obstructed.
pub fn solve_formal<T: Scalar>(
    p: &KnotPresentation,
    rep: &Representation<T>,
    a1: &Cochain1,
    order: usize,
) -> Result<FormalSeries> {
    let rep = rep.to_float();
    let n = rep.dim();
    let alpha: Vec<DMatrix<Complex64>> = rep.images().iter().map(Mat::to_nalgebra).collect();
    let alpha_inv: Vec<DMatrix<Complex64>> = (0..rep.num_generators())
        .map(|i| rep.inverse_image(i).to_nalgebra())
        .collect();
    let d1 = TwistedComplex::new(p, &adjoint_rep(&rep)?).d1.to_nalgebra();

    let coefficient = |terms: &[Cochain1], k: usize| -> Vec<DMatrix<Complex64>> {
        p.relators()
            .iter()
            .map(|r| relator_series(&alpha, &alpha_inv, terms, k + 1, r)[k].clone())
            .collect()
    };
    let worst = |c: &[DMatrix<Complex64>]| c.iter().map(|m| m.norm()).fold(0.0, f64::max);

    let mut terms = vec![a1.clone()];
    let first = worst(&coefficient(&terms, 1));
    if first > OBSTRUCTION_TOL {
        return Err(Error::ObstructionNonzero {
            order: 1,
            residual: first,
        });
    }
    let mut residuals = vec![first];
    for k in 2..=order {
        let c = coefficient(&terms, k);
        let rhs: Vec<Complex64> = c
            .iter()
            .flat_map(|m| sl_coords(&Mat::from_nalgebra(m)))
            .map(|z| -z)
            .collect();
        let x = lstsq(&d1, &DVector::from_vec(rhs), RANK_TOL);
        terms.push(Cochain1::from_sl_coords(n, &x));
        let res = worst(&coefficient(&terms, k));
        if res > OBSTRUCTION_TOL {
            return Err(Error::ObstructionNonzero {
                order: k,
                residual: res,
            });
        }
        residuals.push(res);
    }
    Ok(FormalSeries {
        order,
        terms,
        residuals,
    })
}

impl FormalSeries {
    /// Images of the truncated series at a numerical `t`.
    pub fn evaluate(&self, rep: &Representation<Complex64>, t: f64) -> Vec<DMatrix<Complex64>> {
        (0..rep.num_generators())
            .map(|g| {
                let mut a = DMatrix::zeros(rep.dim(), rep.dim());
                for (i, c) in self.terms.iter().enumerate() {
                    a += c.values[g].to_nalgebra() * Complex64::new(t.powi(i as i32 + 1), 0.0);
                }
                a.exp() * rep.image(g).to_nalgebra()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::cocycles::cocycle_spaces;
    use crate::knotio::knot_by_name;
    use crate::metab::metabelian_reps;

    #[test]
    fn exp_series_matches_matrix_exp() {
        let a = DMatrix::from_row_slice(
            2,
            2,
            &[0.1, 0.3, -0.2, -0.1].map(|x| Complex64::new(x, 0.05)),
        );
        let s = series_exp(&vec![
            DMatrix::zeros(2, 2),
            a.clone(),
            DMatrix::zeros(2, 2),
            DMatrix::zeros(2, 2),
            DMatrix::zeros(2, 2),
            DMatrix::zeros(2, 2),
        ]);
        // at t = 1 the truncated sum is within the first omitted term
        let sum: DMatrix<Complex64> = s.iter().sum();
        assert!((sum - a.exp()).norm() < 1e-4);
    }

    #[test]
    fn figure_eight_order_four() {
        let p = knot_by_name("4_1").unwrap();
        for (_, a) in metabelian_reps(&p, 2).unwrap() {
            let s = cocycle_spaces(&p, &a).unwrap();
            let f = solve_formal(&p, &a, &s.h1[0], 4).unwrap();
            assert_eq!(f.residuals.len(), 4);
            assert!(f.residuals.iter().all(|&r| r <= 1e-9), "{:?}", f.residuals);
            // relators hold to fifth order at small t
            let rep = a.to_float();
            let t = 0.01;
            let imgs = f.evaluate(&rep, t);
            let ev = Representation::new(
                2,
                imgs.iter().map(Mat::from_nalgebra).collect(),
                crate::rep::Provenance::Manual,
            )
            .unwrap();
            assert!(ev.relator_residual(&p) < 1e-7);
        }
    }

    #[test]
    fn trefoil_order_three() {
        let p = knot_by_name("3_1").unwrap();
        for (_, a) in metabelian_reps(&p, 3).unwrap() {
            let s = cocycle_spaces(&p, &a).unwrap();
            assert_eq!(s.h1.len(), 2);
            for h in &s.h1 {
                let f = solve_formal(&p, &a, h, 3).unwrap();
                assert!(f.residuals.iter().all(|&r| r <= 1e-9), "{:?}", f.residuals);
            }
        }
    }

    #[test]
    fn non_cocycle_rejected() {
        let p = knot_by_name("4_1").unwrap();
        let (_, a) = &metabelian_reps(&p, 2).unwrap()[0];
        let mut bad = Cochain1::zero(2, p.num_generators());
        bad.values[0] = Mat::diag(&[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
        assert!(matches!(
            solve_formal(&p, a, &bad, 2),
            Err(Error::ObstructionNonzero { order: 1, .. })
        ));
    }
}
