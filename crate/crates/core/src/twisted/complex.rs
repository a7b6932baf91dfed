use serde::Serialize;

use crate::error::Result;
use crate::knotio::{KnotPresentation, Word};
use crate::linalg::{Mat, Scalar};
use crate::rep::{Provenance, Representation};

/// `ρ(∂r/∂x_i)` for every generator, by one pass over the letters of `r`.
pub fn fox_blocks<T: Scalar>(rep: &Representation<T>, r: &Word) -> Vec<Mat<T>> {
    let d = rep.dim();
    let mut out = vec![Mat::zeros(d, d); rep.num_generators()];
    let mut prefix = Mat::identity(d);
    for (g, e) in r.unit_letters() {
        if e > 0 {
            out[g] = out[g].add(&prefix);
            prefix = prefix.mul(rep.image(g));
        } else {
            prefix = prefix.mul(rep.inverse_image(g));
            out[g] = out[g].sub(&prefix);
        }
    }
    out
}

/// The cochain complex `C^0 → C^1 → C^2` of the presentation 2-complex with
/// coefficients twisted by `ρ`.
#[derive(Clone, Debug)]
pub struct TwistedComplex<T: Scalar> {
    pub d: usize,
    pub g: usize,
    pub r: usize,
    /// `(g·d) × d`, blocks `ρ(x_i) - I`.
    pub d0: Mat<T>,
    /// `(r·d) × (g·d)`, blocks `ρ(∂r_j/∂x_i)`.
    pub d1: Mat<T>,
}

impl<T: Scalar> TwistedComplex<T> {
    pub fn new(p: &KnotPresentation, rep: &Representation<T>) -> Self {
        Self::from_relators(p.relators(), rep)
    }

    /// Any group presentation, with generators taken from `rep`.
    pub fn from_relators(relators: &[Word], rep: &Representation<T>) -> Self {
        let d = rep.dim();
        let g = rep.num_generators();
        let r = relators.len();
        let id = Mat::identity(d);
        let mut d0 = Mat::zeros(g * d, d);
        for i in 0..g {
            d0.set_block(i * d, 0, &rep.image(i).sub(&id));
        }
        let mut d1 = Mat::zeros(r * d, g * d);
        for (j, rel) in relators.iter().enumerate() {
            for (i, b) in fox_blocks(rep, rel).iter().enumerate() {
                d1.set_block(j * d, i * d, b);
            }
        }
        TwistedComplex { d, g, r, d0, d1 }
    }

    /// `d1 · d0`, which vanishes by the fundamental formula of Fox calculus.
    pub fn composite(&self) -> Mat<T> {
        self.d1.mul(&self.d0)
    }

    pub fn cohomology(&self) -> Result<CohomologyReport> {
        let rank_d0 = T::rank(&self.d0)?;
        let rank_d1 = T::rank(&self.d1)?;
        let h0 = self.d - rank_d0;
        let z1 = self.g * self.d - rank_d1;
        Ok(CohomologyReport {
            h0,
            h1: z1 - rank_d0,
            z1,
            b1_dim: rank_d0,
            rank_d0,
            rank_d1,
            exact: T::is_exact(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub h0: usize,
    pub h1: usize,
    pub z1: usize,
    /// Dimension of the coboundaries `B^1`.
    pub b1_dim: usize,
    pub rank_d0: usize,
    pub rank_d1: usize,
    pub exact: bool,
}

pub fn cohomology_dims<T: Scalar>(
    p: &KnotPresentation,
    rep: &Representation<T>,
) -> Result<CohomologyReport> {
    TwistedComplex::new(p, rep).cohomology()
}

/// Basis of `sl(n)`: `E_ij` for `i ≠ j` in row-major order, then
/// `H_k = E_kk - E_{k+1,k+1}`.
pub fn sl_basis<T: Scalar>(n: usize) -> Vec<Mat<T>> {
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = Mat::zeros(n, n);
                m.set(i, j, T::one());
                out.push(m);
            }
        }
    }
    for k in 0..n.saturating_sub(1) {
        let mut m = Mat::zeros(n, n);
        m.set(k, k, T::one());
        m.set(k + 1, k + 1, T::one().neg());
        out.push(m);
    }
    out
}

/// Coordinates of a trace-zero matrix in [`sl_basis`].
pub fn sl_coords<T: Scalar>(m: &Mat<T>) -> Vec<T> {
    let n = m.rows();
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(m.get(i, j).clone());
            }
        }
    }
    let mut acc = T::zero();
    for k in 0..n.saturating_sub(1) {
        acc = acc.add(m.get(k, k));
        out.push(acc.clone());
    }
    out
}

pub fn sl_matrix<T: Scalar>(n: usize, coords: &[T]) -> Mat<T> {
    let mut m = Mat::zeros(n, n);
    for (b, c) in sl_basis::<T>(n).iter().zip(coords) {
        m = m.add(&b.scale(c));
    }
    m
}

/// `X ↦ A X A^{-1}` on `sl(n)` in [`sl_basis`] coordinates.
pub fn adjoint_matrix<T: Scalar>(a: &Mat<T>, a_inv: &Mat<T>) -> Mat<T> {
    let n = a.rows();
    let basis = sl_basis::<T>(n);
    let dim = basis.len();
    let mut out = Mat::zeros(dim, dim);
    for (c, b) in basis.iter().enumerate() {
        for (r, v) in sl_coords(&a.mul(b).mul(a_inv)).into_iter().enumerate() {
            out.set(r, c, v);
        }
    }
    out
}

/// `ad ρ` on `sl(n)`, of dimension `n² - 1`.
pub fn adjoint_rep<T: Scalar>(rep: &Representation<T>) -> Result<Representation<T>> {
    let n = rep.dim();
    let images = (0..rep.num_generators())
        .map(|i| adjoint_matrix(rep.image(i), rep.inverse_image(i)))
        .collect();
    Representation::new(n * n - 1, images, Provenance::Adjoint)
}

/// Gram matrix `tr(B_a B_b)` of the trace form on [`sl_basis`]; the Killing
/// form is `2n` times this.
pub fn trace_form_gram<T: Scalar>(n: usize) -> Mat<T> {
    let basis = sl_basis::<T>(n);
    Mat::from_fn(basis.len(), basis.len(), |a, b| {
        basis[a].mul(&basis[b]).trace()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycNum;
    use crate::knotio::knot_by_name;
    use crate::metab::metabelian_reps;

    #[test]
    fn trivial_coefficients() {
        for name in ["3_1", "4_1", "7_4"] {
            let p = knot_by_name(name).unwrap();
            let t: Representation<CycNum> = Representation::trivial(p.num_generators(), 1);
            let c = cohomology_dims(&p, &t).unwrap();
            assert_eq!((c.h0, c.h1, c.z1, c.b1_dim), (1, 1, 1, 0));
        }
    }

    #[test]
    fn figure_eight_adjoint() {
        let p = knot_by_name("4_1").unwrap();
        for (_, a) in metabelian_reps(&p, 2).unwrap() {
            let ad = adjoint_rep(&a).unwrap();
            ad.check_relators(&p).unwrap();
            let cx = TwistedComplex::new(&p, &ad);
            assert!(cx.composite().is_zero());
            let c = cx.cohomology().unwrap();
            assert_eq!((c.h0, c.h1, c.z1, c.b1_dim), (0, 1, 4, 3));
            let f = cohomology_dims(&p, &ad.to_float()).unwrap();
            assert_eq!((f.h0, f.h1), (0, 1));
        }
    }

    #[test]
    fn adjoint_of_diagonal() {
        // diag(a, 1/a) acts on E_01, E_10, H by a², a⁻², 1
        let a = CycNum::root_of_unity(8, 1);
        let m = Mat::diag(&[a.clone(), a.inv()]);
        let ad = adjoint_matrix(&m, &m.inverse().unwrap());
        assert_eq!(ad, Mat::diag(&[a.pow(2), a.pow(-2), CycNum::one()]));
    }

    #[test]
    fn adjoint_preserves_trace_form() {
        let p = knot_by_name("3_1").unwrap();
        let g = trace_form_gram::<CycNum>(3);
        for (_, a) in metabelian_reps(&p, 3).unwrap() {
            let ad = adjoint_rep(&a).unwrap();
            for m in ad.images() {
                assert!(m.det().is_one());
                assert_eq!(m.transpose().mul(&g).mul(m), g);
            }
        }
        let id: Representation<CycNum> = Representation::trivial(2, 3);
        assert!(adjoint_rep(&id)
            .unwrap()
            .images()
            .iter()
            .all(|m| m.is_identity()));
    }

    #[test]
    fn sl_coordinates_round_trip() {
        let c: Vec<CycNum> = (1..=8).map(CycNum::from_int).collect();
        let m = sl_matrix(3, &c);
        assert!(m.trace().is_zero());
        assert_eq!(sl_coords(&m), c);
    }
}
