use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::knotio::{KnotPresentation, Word};
use crate::linalg::{svd_nullspace, svd_rank, Mat, Scalar, RANK_TOL};
use crate::rep::Representation;
use crate::twisted::{adjoint_rep, sl_basis, sl_matrix, TwistedComplex};

/// A 1-cochain with values in `sl(n)`, one trace-zero matrix per generator.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cochain1 {
    pub values: Vec<Mat<Complex64>>,
}

impl Cochain1 {
    pub fn zero(n: usize, g: usize) -> Self {
        Cochain1 {
            values: vec![Mat::zeros(n, n); g],
        }
    }

    pub fn dim(&self) -> usize {
        self.values.first().map_or(0, |m| m.rows())
    }

    /// Entries of all matrices, generator by generator, row-major.
    pub fn flatten(&self) -> DVector<Complex64> {
        let n = self.dim();
        DVector::from_iterator(
            self.values.len() * n * n,
            self.values
                .iter()
                .flat_map(|m| m.to_rows().into_iter().flatten()),
        )
    }

    pub fn from_flat(n: usize, v: &DVector<Complex64>) -> Self {
        let g = v.len() / (n * n);
        let values = (0..g)
            .map(|i| Mat::from_fn(n, n, |r, c| v[i * n * n + r * n + c]))
            .collect();
        Cochain1 { values }
    }

    /// From `sl(n)` coordinates in the adjoint basis, `n² - 1` per generator.
    pub fn from_sl_coords(n: usize, v: &DVector<Complex64>) -> Self {
        let d = n * n - 1;
        let g = v.len().checked_div(d).unwrap_or(0);
        let values = (0..g)
            .map(|i| sl_matrix(n, &v.as_slice()[i * d..(i + 1) * d]))
            .collect();
        Cochain1 { values }
    }

    pub fn sl_coords(&self) -> DVector<Complex64> {
        let coords: Vec<Complex64> = self
            .values
            .iter()
            .flat_map(crate::twisted::sl_coords)
            .collect();
        DVector::from_vec(coords)
    }

    pub fn scale(&self, s: f64) -> Self {
        let s = Complex64::new(s, 0.0);
        Cochain1 {
            values: self.values.iter().map(|m| m.scale(&s)).collect(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.flatten().norm()
    }

    /// Value on a word by `a(vw) = a(v) + ρ(v) a(w) ρ(v)^{-1}`.
    pub fn eval(&self, rep: &Representation<Complex64>, w: &Word) -> Mat<Complex64> {
        let n = self.dim();
        let mut acc = Mat::zeros(n, n);
        let mut prefix = Mat::identity(n);
        let mut prefix_inv = Mat::identity(n);
        for (g, e) in w.unit_letters() {
            if e > 0 {
                acc = acc.add(&prefix.mul(&self.values[g]).mul(&prefix_inv));
                prefix = prefix.mul(rep.image(g));
                prefix_inv = rep.inverse_image(g).mul(&prefix_inv);
            } else {
                prefix = prefix.mul(rep.inverse_image(g));
                prefix_inv = rep.image(g).mul(&prefix_inv);
                acc = acc.sub(&prefix.mul(&self.values[g]).mul(&prefix_inv));
            }
        }
        acc
    }
}

/// Orthonormal basis of the span of `cols`.
pub fn orthonormal_span(
    cols: &[DVector<Complex64>],
    len: usize,
) -> Result<Vec<DVector<Complex64>>> {
    if cols.is_empty() {
        return Ok(Vec::new());
    }
    let m = DMatrix::from_columns(cols);
    debug_assert_eq!(m.nrows(), len);
    svd_rank(&m, RANK_TOL)?;
    let svd = m.svd(true, false);
    let u = svd.u.expect("requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    Ok(svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|&(_, &s)| smax > 0.0 && s >= RANK_TOL * smax)
        .map(|(i, _)| u.column(i).into_owned())
        .collect())
}

/// Remove the components along an orthonormal family.
pub fn project_out(v: &DVector<Complex64>, basis: &[DVector<Complex64>]) -> DVector<Complex64> {
    let mut out = v.clone();
    for b in basis {
        let c = b.dotc(&out);
        out -= b * c;
    }
    out
}

/// `Z^1`, `B^1` and `H^1` representatives orthogonal to `B^1`, all
/// orthonormal for the Frobenius inner product on cochains.
#[derive(Clone, Debug)]
pub struct CocycleSpaces {
    pub n: usize,
    pub z1: Vec<Cochain1>,
    pub b1: Vec<Cochain1>,
    pub h1: Vec<Cochain1>,
}

impl CocycleSpaces {
    pub fn flat(v: &[Cochain1]) -> Vec<DVector<Complex64>> {
        v.iter().map(Cochain1::flatten).collect()
    }
}

pub fn cocycle_spaces<T: Scalar>(
    p: &KnotPresentation,
    rep: &Representation<T>,
) -> Result<CocycleSpaces> {
    cocycle_spaces_for(p.relators(), rep)
}

/// Cocycle spaces of an arbitrary presentation with generators from `rep`.
pub fn cocycle_spaces_for<T: Scalar>(
    relators: &[Word],
    rep: &Representation<T>,
) -> Result<CocycleSpaces> {
    let alpha = rep.to_float();
    let n = alpha.dim();
    let g = alpha.num_generators();
    let len = g * n * n;
    let ad = adjoint_rep(&alpha)?;
    let cx = TwistedComplex::from_relators(relators, &ad);
    let z1_raw: Vec<DVector<Complex64>> = svd_nullspace(&cx.d1.to_nalgebra(), RANK_TOL)?
        .iter()
        .map(|v| Cochain1::from_sl_coords(n, v).flatten())
        .collect();
    let z1 = orthonormal_span(&z1_raw, len)?;
    let b1 = orthonormal_span(&coboundary_columns(&alpha), len)?;
    let residual: Vec<DVector<Complex64>> = z1.iter().map(|v| project_out(v, &b1)).collect();
    let h1 = orthonormal_span(&residual, len)?;
    let wrap = |v: Vec<DVector<Complex64>>| v.iter().map(|x| Cochain1::from_flat(n, x)).collect();
    Ok(CocycleSpaces {
        n,
        z1: wrap(z1),
        b1: wrap(b1),
        h1: wrap(h1),
    })
}

/// `x ↦ X - ρ(x) X ρ(x)^{-1}` for each basis element `X` of `sl(n)`.
pub fn coboundary_columns(rep: &Representation<Complex64>) -> Vec<DVector<Complex64>> {
    let n = rep.dim();
    sl_basis::<Complex64>(n)
        .iter()
        .map(|x| coboundary(rep, x).flatten())
        .collect()
}

pub fn coboundary(rep: &Representation<Complex64>, x: &Mat<Complex64>) -> Cochain1 {
    let values = (0..rep.num_generators())
        .map(|i| x.sub(&rep.image(i).mul(x).mul(rep.inverse_image(i))))
        .collect();
    Cochain1 { values }
}

/// Largest `‖a(r)‖` over relators.
pub fn cocycle_residual(
    p: &KnotPresentation,
    rep: &Representation<Complex64>,
    a: &Cochain1,
) -> f64 {
    p.relators()
        .iter()
        .map(|r| a.eval(rep, r).frobenius_norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotio::knot_by_name;
    use crate::metab::metabelian_reps;

    #[test]
    fn figure_eight_dimensions() {
        let p = knot_by_name("4_1").unwrap();
        for (_, a) in metabelian_reps(&p, 2).unwrap() {
            let s = cocycle_spaces(&p, &a).unwrap();
            assert_eq!((s.z1.len(), s.b1.len(), s.h1.len()), (4, 3, 1));
            let f = a.to_float();
            for z in s.z1.iter().chain(&s.b1).chain(&s.h1) {
                assert!(cocycle_residual(&p, &f, z) < 1e-10);
                assert!(z.values.iter().all(|m| m.trace().norm() < 1e-12));
            }
            let h = s.h1[0].flatten();
            for b in CocycleSpaces::flat(&s.b1) {
                assert!(b.dotc(&h).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn boundary_torus() {
        // ⟨μ, λ | [μ, λ]⟩ with a regular abelian image
        let p = knot_by_name("4_1").unwrap();
        for n in [2usize, 3] {
            let (_, a) = &metabelian_reps(&p, n).unwrap()[0];
            let f = a.to_float();
            let mu = f.eval(p.meridian());
            let la = f.eval(p.longitude().unwrap());
            let torus =
                Representation::new(n, vec![mu, la], crate::rep::Provenance::Manual).unwrap();
            let comm = Word::from_letters([(0, 1), (1, 1), (0, -1), (1, -1)]);
            let s = cocycle_spaces_for(&[comm], &torus).unwrap();
            assert_eq!(s.z1.len(), n * n + n - 2);
        }
    }

    #[test]
    fn trivial_coefficients_analogue() {
        // sl(1) is zero, so use the untwisted complex directly
        let p = knot_by_name("3_1").unwrap();
        let t: Representation<Complex64> = Representation::trivial(p.num_generators(), 1);
        let cx = TwistedComplex::new(&p, &t);
        let z1 = svd_nullspace(&cx.d1.to_nalgebra(), RANK_TOL).unwrap();
        assert_eq!(z1.len(), 1);
        assert_eq!(svd_rank(&cx.d0.to_nalgebra(), RANK_TOL).unwrap(), 0);
    }
}
