use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;
use serde::Serialize;

use super::complex::{adjoint_rep, trace_form_gram, TwistedComplex};
use crate::error::{Error, Result};
use crate::knotio::{KnotPresentation, Word};
use crate::linalg::{svd_nullspace, svd_rank, Mat, Scalar, RANK_TOL};
use crate::rep::Representation;

/// Eigenvalues of a complex matrix from its Schur form.
pub fn eigenvalues(m: &Mat<Complex64>) -> Vec<Complex64> {
    let t = Schur::new(m.to_nalgebra()).unpack().1;
    (0..t.nrows()).map(|i| t[(i, i)]).collect()
}

/// Smallest distance between two eigenvalues.
pub fn eigenvalue_gap(m: &Mat<Complex64>) -> f64 {
    let ev = eigenvalues(m);
    let mut gap = f64::INFINITY;
    for i in 0..ev.len() {
        for j in i + 1..ev.len() {
            gap = gap.min((ev[i] - ev[j]).norm());
        }
    }
    gap
}

/// Minimum eigenvalue gap for a boundary element to count as regular.
pub const REGULAR_GAP: f64 = 1e-6;

/// Value of a 1-cocycle `u` (given on generators) on a word, by
/// `u(vw) = u(v) + ρ(v) u(w)`.
pub fn eval_cocycle(
    rep: &Representation<Complex64>,
    u: &[DVector<Complex64>],
    w: &Word,
) -> DVector<Complex64> {
    let d = rep.dim();
    let mut acc = DVector::zeros(d);
    let mut prefix = DMatrix::<Complex64>::identity(d, d);
    for (g, e) in w.unit_letters() {
        if e > 0 {
            acc += &prefix * &u[g];
            prefix *= rep.image(g).to_nalgebra();
        } else {
            prefix *= rep.inverse_image(g).to_nalgebra();
            acc -= &prefix * &u[g];
        }
    }
    acc
}

/// A torus cocycle as its values on `(μ, λ)` in `sl(n)` coordinates.
pub type TorusCocycle = (DVector<Complex64>, DVector<Complex64>);

/// Cup product pairing of two torus cocycles, each given by its values on
/// `(μ, λ)`, composed with the trace form:
/// `Ω(u, v) = B(u(μ), Ad_μ v(λ)) - B(u(λ), Ad_λ v(μ))`.
pub struct Pairing {
    gram: DMatrix<Complex64>,
    ad_mu: DMatrix<Complex64>,
    ad_lambda: DMatrix<Complex64>,
}

impl Pairing {
    pub fn omega(&self, u: &TorusCocycle, v: &TorusCocycle) -> Complex64 {
        let a = (u.0.transpose() * &self.gram * (&self.ad_mu * &v.1))[(0, 0)];
        let b = (u.1.transpose() * &self.gram * (&self.ad_lambda * &v.0))[(0, 0)];
        a - b
    }
}

/// Cohomology of the boundary torus `⟨μ, λ | [μ, λ]⟩` with coefficients
/// `ad α` restricted to it.
#[derive(Clone, Debug, Serialize)]
pub struct TorusCohomology {
    pub h0: usize,
    pub h1: usize,
    pub z1: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryReport {
    pub n: usize,
    pub z1_knot: usize,
    pub torus: TorusCohomology,
    /// Dimension of the image of `H^1(N_K) → H^1(∂N_K)`.
    pub image_dim: usize,
    pub omega_matrix: Vec<Vec<Complex64>>,
    pub isotropy_residual: f64,
    pub eigenvalue_gap: f64,
}

struct TorusData {
    cohomology: TorusCohomology,
    cocycles: Vec<TorusCocycle>,
    coboundaries: DMatrix<Complex64>,
}

fn torus_data(ad_mu: &DMatrix<Complex64>, ad_lambda: &DMatrix<Complex64>) -> Result<TorusData> {
    let d = ad_mu.nrows();
    let id = DMatrix::<Complex64>::identity(d, d);
    // ∂[μ,λ]/∂μ = 1 - μλμ⁻¹ and ∂[μ,λ]/∂λ = μ - [μ,λ], with [μ,λ] = 1
    let lam_conj = ad_mu * ad_lambda * ad_mu.clone().try_inverse().expect("invertible");
    let mut d1 = DMatrix::zeros(d, 2 * d);
    d1.view_mut((0, 0), (d, d)).copy_from(&(&id - lam_conj));
    d1.view_mut((0, d), (d, d)).copy_from(&(ad_mu - &id));
    let mut d0 = DMatrix::zeros(2 * d, d);
    d0.view_mut((0, 0), (d, d)).copy_from(&(ad_mu - &id));
    d0.view_mut((d, 0), (d, d)).copy_from(&(ad_lambda - &id));
    let rank_d0 = svd_rank(&d0, RANK_TOL)?;
    let kernel = svd_nullspace(&d1, RANK_TOL)?;
    let cocycles = kernel
        .iter()
        .map(|v| (v.rows(0, d).into_owned(), v.rows(d, d).into_owned()))
        .collect();
    let z1 = kernel.len();
    Ok(TorusData {
        cohomology: TorusCohomology {
            h0: d - rank_d0,
            h1: z1 - rank_d0,
            z1,
        },
        cocycles,
        coboundaries: d0,
    })
}

/// Restriction of `H^1(N_K; sl(n)_{ad α})` to the boundary torus, with the
/// dimension of its image and the isotropy of the image under `Ω`.
pub fn boundary_restriction<T: Scalar>(
    p: &KnotPresentation,
    rep: &Representation<T>,
) -> Result<BoundaryReport> {
    let lambda = p.require_longitude()?.clone();
    let alpha = rep.to_float();
    let n = alpha.dim();
    let gap = eigenvalue_gap(&alpha.eval(p.meridian()));
    if n > 1 && gap < REGULAR_GAP {
        return Err(Error::NotRegular(format!(
            "meridian eigenvalue gap {gap:.3e}"
        )));
    }
    let ad = adjoint_rep(&alpha)?;
    let d = ad.dim();
    let cx = TwistedComplex::new(p, &ad);
    let z1 = svd_nullspace(&cx.d1.to_nalgebra(), RANK_TOL)?;

    let mu = p.meridian().clone();
    let ad_mu = ad.eval(&mu).to_nalgebra();
    let ad_lambda = ad.eval(&lambda).to_nalgebra();
    let torus = torus_data(&ad_mu, &ad_lambda)?;
    let pairing = Pairing {
        gram: trace_form_gram::<Complex64>(n).to_nalgebra(),
        ad_mu,
        ad_lambda,
    };

    let restricted: Vec<(DVector<Complex64>, DVector<Complex64>)> = z1
        .iter()
        .map(|v| {
            let u: Vec<DVector<Complex64>> = (0..p.num_generators())
                .map(|i| v.rows(i * d, d).into_owned())
                .collect();
            (eval_cocycle(&ad, &u, &mu), eval_cocycle(&ad, &u, &lambda))
        })
        .collect();

    // greedy basis of the image modulo torus coboundaries
    let stack = |cols: &[DVector<Complex64>]| -> DMatrix<Complex64> {
        let b = &torus.coboundaries;
        let mut m = DMatrix::zeros(b.nrows(), b.ncols() + cols.len());
        m.view_mut((0, 0), b.shape()).copy_from(b);
        for (i, c) in cols.iter().enumerate() {
            m.set_column(b.ncols() + i, c);
        }
        m
    };
    let base = svd_rank(&torus.coboundaries, RANK_TOL)?;
    let mut chosen: Vec<DVector<Complex64>> = Vec::new();
    let mut basis = Vec::new();
    for r in &restricted {
        let mut col = DVector::zeros(2 * d);
        col.rows_mut(0, d).copy_from(&r.0);
        col.rows_mut(d, d).copy_from(&r.1);
        let mut trial = chosen.clone();
        trial.push(col.clone());
        if svd_rank(&stack(&trial), RANK_TOL)? > base + chosen.len() {
            chosen = trial;
            basis.push(r.clone());
        }
    }
    let omega_matrix: Vec<Vec<Complex64>> = basis
        .iter()
        .map(|u| basis.iter().map(|v| pairing.omega(u, v)).collect())
        .collect();
    let isotropy_residual = restricted
        .iter()
        .flat_map(|u| restricted.iter().map(move |v| (u, v)))
        .map(|(u, v)| pairing.omega(u, v).norm())
        .fold(0.0, f64::max);
    Ok(BoundaryReport {
        n,
        z1_knot: z1.len(),
        torus: torus.cohomology,
        image_dim: basis.len(),
        omega_matrix,
        isotropy_residual,
        eigenvalue_gap: gap,
    })
}

/// The pairing on torus cocycles for a representation, for property checks.
pub fn torus_pairing<T: Scalar>(
    p: &KnotPresentation,
    rep: &Representation<T>,
) -> Result<(Pairing, Vec<TorusCocycle>, DMatrix<Complex64>)> {
    let lambda = p.require_longitude()?.clone();
    let alpha = rep.to_float();
    let ad = adjoint_rep(&alpha)?;
    let ad_mu = ad.eval(p.meridian()).to_nalgebra();
    let ad_lambda = ad.eval(&lambda).to_nalgebra();
    let torus = torus_data(&ad_mu, &ad_lambda)?;
    let pairing = Pairing {
        gram: trace_form_gram::<Complex64>(alpha.dim()).to_nalgebra(),
        ad_mu,
        ad_lambda,
    };
    Ok((pairing, torus.cocycles, torus.coboundaries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotio::knot_by_name;
    use crate::metab::metabelian_reps;

    #[test]
    fn lagrangian_image() {
        for (name, n) in [("4_1", 2), ("3_1", 2), ("4_1", 3)] {
            let p = knot_by_name(name).unwrap();
            for (_, a) in metabelian_reps(&p, n).unwrap() {
                let r = boundary_restriction(&p, &a).unwrap();
                assert_eq!(r.image_dim, n - 1, "{name} n={n}");
                assert!(r.isotropy_residual <= 1e-8, "{}", r.isotropy_residual);
                assert_eq!((r.torus.h0, r.torus.h1), (n - 1, 2 * (n - 1)));
            }
        }
    }

    #[test]
    fn pairing_is_skew_and_kills_coboundaries() {
        let p = knot_by_name("4_1").unwrap();
        let (_, a) = &metabelian_reps(&p, 3).unwrap()[0];
        let (pairing, cocycles, cob) = torus_pairing(&p, a).unwrap();
        let d = cob.ncols();
        for u in &cocycles {
            for v in &cocycles {
                assert!((pairing.omega(u, v) + pairing.omega(v, u)).norm() < 1e-8);
            }
            for k in 0..d {
                let c = cob.column(k);
                let b = (c.rows(0, d).into_owned(), c.rows(d, d).into_owned());
                assert!(pairing.omega(u, &b).norm() < 1e-8);
                assert!(pairing.omega(&b, u).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn irregular_rep_rejected() {
        let p = knot_by_name("4_1").unwrap();
        let t: Representation<Complex64> = Representation::trivial(p.num_generators(), 2);
        assert!(matches!(
            boundary_restriction(&p, &t),
            Err(Error::NotRegular(_))
        ));
    }
}
