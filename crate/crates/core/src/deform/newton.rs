use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::cocycles::{
    coboundary_columns, cocycle_spaces, orthonormal_span, project_out, Cochain1, CocycleSpaces,
};
use crate::error::{Error, Result};
use crate::knotio::{random_words, KnotPresentation, Word, WORD_SEED};
use crate::linalg::{lstsq, Mat, Scalar, RANK_TOL};
use crate::metab::{is_irreducible, metabelian_reps};
use crate::rep::{Provenance, Representation};
use crate::twisted::sl_basis;

pub const NEWTON_TOL: f64 = 1e-12;
pub const NEWTON_ACCEPT: f64 = 1e-10;
pub const NEWTON_MAX_ITER: usize = 50;
/// Minimum sup-distance of probe traces from every metabelian class.
pub const CERTIFY_DIST: f64 = 1e-4;
pub const PROBE_WORDS: usize = 20;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn blocks(n: usize, v: &DVector<Complex64>) -> Vec<DMatrix<Complex64>> {
    let g = v.len() / (n * n);
    (0..g)
        .map(|i| DMatrix::from_fn(n, n, |r, cc| v[i * n * n + r * n + cc]))
        .collect()
}

fn flat(ms: &[DMatrix<Complex64>]) -> DVector<Complex64> {
    let n = ms.first().map_or(0, |m| m.nrows());
    DVector::from_iterator(
        ms.len() * n * n,
        ms.iter()
            .flat_map(|m| m.transpose().iter().copied().collect::<Vec<_>>()),
    )
}

/// Derivative of `exp` at `phi` in direction `e`, from the upper-right block
/// of `exp [[phi, e], [0, phi]]`.
fn dexp(phi: &DMatrix<Complex64>, e: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = phi.nrows();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(phi);
    m.view_mut((n, n), (n, n)).copy_from(phi);
    m.view_mut((0, n), (n, n)).copy_from(e);
    m.exp().view((0, n), (n, n)).into_owned()
}

/// Generator images `exp(φ_i) α_i` and the stacked relator residuals.
struct Model<'a> {
    relators: &'a [Word],
    alpha: Vec<DMatrix<Complex64>>,
}

impl Model<'_> {
    fn images(&self, phi: &[DMatrix<Complex64>]) -> Vec<DMatrix<Complex64>> {
        phi.iter()
            .zip(&self.alpha)
            .map(|(f, a)| f.exp() * a)
            .collect()
    }

    fn residual(&self, x: &[DMatrix<Complex64>]) -> DVector<Complex64> {
        let inv: Vec<DMatrix<Complex64>> = x
            .iter()
            .map(|m| m.clone().try_inverse().expect("exp is invertible"))
            .collect();
        let n = x[0].nrows();
        let vals: Vec<DMatrix<Complex64>> = self
            .relators
            .iter()
            .map(|r| {
                let mut acc = DMatrix::identity(n, n);
                for (g, e) in r.unit_letters() {
                    acc *= if e > 0 { &x[g] } else { &inv[g] };
                }
                acc - DMatrix::identity(n, n)
            })
            .collect();
        flat(&vals)
    }

    /// Jacobian of [`Self::residual`] in the entries of `φ`, one column per
    /// generator and matrix entry.
    fn jacobian(&self, phi: &[DMatrix<Complex64>]) -> DMatrix<Complex64> {
        let g = phi.len();
        let n = phi[0].nrows();
        let x = self.images(phi);
        let inv: Vec<DMatrix<Complex64>> = x
            .iter()
            .map(|m| m.clone().try_inverse().expect("exp is invertible"))
            .collect();
        let rows = self.relators.len() * n * n;
        let mut jac = DMatrix::zeros(rows, g * n * n);
        for (j, r) in self.relators.iter().enumerate() {
            let letters: Vec<(usize, i64)> = r.unit_letters().collect();
            let mats: Vec<&DMatrix<Complex64>> = letters
                .iter()
                .map(|&(k, e)| if e > 0 { &x[k] } else { &inv[k] })
                .collect();
            let mut prefix = vec![DMatrix::identity(n, n)];
            for m in &mats {
                let next = prefix.last().unwrap() * *m;
                prefix.push(next);
            }
            let mut suffix = vec![DMatrix::identity(n, n); mats.len() + 1];
            for i in (0..mats.len()).rev() {
                suffix[i] = mats[i] * &suffix[i + 1];
            }
            for k in 0..g {
                for a in 0..n {
                    for b in 0..n {
                        let mut e = DMatrix::zeros(n, n);
                        e[(a, b)] = c(1.0);
                        let dx = dexp(&phi[k], &e) * &self.alpha[k];
                        let mut total = DMatrix::zeros(n, n);
                        for (i, &(h, s)) in letters.iter().enumerate() {
                            if h != k {
                                continue;
                            }
                            let dl = if s > 0 {
                                dx.clone()
                            } else {
                                -(&inv[k] * &dx * &inv[k])
                            };
                            total += &prefix[i] * dl * &suffix[i + 1];
                        }
                        let col = k * n * n + a * n + b;
                        for rr in 0..n {
                            for cc in 0..n {
                                jac[(j * n * n + rr * n + cc, col)] = total[(rr, cc)];
                            }
                        }
                    }
                }
            }
        }
        jac
    }
}

/// Relator Jacobian at `α` in the entries of `φ`, for gradient checks.
pub fn relator_jacobian<T: Scalar>(
    p: &KnotPresentation,
    rep: &Representation<T>,
) -> DMatrix<Complex64> {
    let f = rep.to_float();
    let model = Model {
        relators: p.relators(),
        alpha: f.images().iter().map(Mat::to_nalgebra).collect(),
    };
    let n = f.dim();
    model.jacobian(&vec![DMatrix::zeros(n, n); f.num_generators()])
}

/// Stacked `ρ_φ(r) - I` for `ρ_φ(x_i) = exp(φ_i) α_i`.
pub fn relator_values<T: Scalar>(
    p: &KnotPresentation,
    rep: &Representation<T>,
    phi: &Cochain1,
) -> DVector<Complex64> {
    let f = rep.to_float();
    let model = Model {
        relators: p.relators(),
        alpha: f.images().iter().map(Mat::to_nalgebra).collect(),
    };
    let phi: Vec<DMatrix<Complex64>> = phi.values.iter().map(Mat::to_nalgebra).collect();
    model.residual(&model.images(&phi))
}

#[derive(Clone, Debug, Serialize)]
pub struct NewtonStep {
    pub t: f64,
    pub iterations: usize,
    pub residual: f64,
    pub probe: Vec<Complex64>,
    #[serde(skip)]
    pub rep: Representation<Complex64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeformPath {
    pub n: usize,
    pub probe_words: Vec<Word>,
    pub steps: Vec<NewtonStep>,
}

/// Traces of `rep` on the probe words.
pub fn probe(rep: &Representation<Complex64>, words: &[Word]) -> Vec<Complex64> {
    words.iter().map(|w| rep.character_of(w)).collect()
}

pub fn probe_words(g: usize) -> Vec<Word> {
    random_words(g, PROBE_WORDS, WORD_SEED)
}

/// Follow the curve tangent to the cocycle `a1` at `α` through each `t`.
///
/// `a1` is split as `(I - Ad)Y + h` with `h ⊥ B^1`. Newton runs on
/// `φ = t·h + w` with `w ⊥ Z^1`, and the result is conjugated by `exp(tY)`.
pub fn newton_deform<T: Scalar>(
    p: &KnotPresentation,
    rep: &Representation<T>,
    a1: &Cochain1,
    ts: &[f64],
) -> Result<DeformPath> {
    let f = rep.to_float();
    let n = f.dim();
    let g = f.num_generators();
    let len = g * n * n;
    let spaces: CocycleSpaces = cocycle_spaces(p, &f)?;
    let model = Model {
        relators: p.relators(),
        alpha: f.images().iter().map(Mat::to_nalgebra).collect(),
    };

    let a_flat = a1.flatten();
    let cob = DMatrix::from_columns(&coboundary_columns(&f));
    let y_coords = lstsq(&cob, &a_flat, RANK_TOL);
    let h = &a_flat - &cob * &y_coords;
    let mut y = DMatrix::zeros(n, n);
    for (b, k) in sl_basis::<Complex64>(n).iter().zip(y_coords.iter()) {
        y += b.to_nalgebra() * *k;
    }

    // sl(n)^g modulo Z^1
    let z1 = CocycleSpaces::flat(&spaces.z1);
    let ambient: Vec<DVector<Complex64>> = (0..g)
        .flat_map(|i| {
            sl_basis::<Complex64>(n).into_iter().map(move |b| {
                let mut v = Cochain1::zero(n, g);
                v.values[i] = b;
                v.flatten()
            })
        })
        .map(|v| project_out(&v, &z1))
        .collect();
    let w_basis = orthonormal_span(&ambient, len)?;
    let w_mat = if w_basis.is_empty() {
        DMatrix::zeros(len, 0)
    } else {
        DMatrix::from_columns(&w_basis)
    };

    let words = probe_words(g);
    let mut steps = Vec::with_capacity(ts.len());
    let mut w = DVector::zeros(w_mat.ncols());
    for &t in ts {
        let phi_of = |w: &DVector<Complex64>| blocks(n, &(&h * c(t) + &w_mat * w));
        let mut iterations = 0;
        let mut res = model.residual(&model.images(&phi_of(&w))).camax();
        while res > NEWTON_TOL && iterations < NEWTON_MAX_ITER {
            let phi = phi_of(&w);
            let fval = model.residual(&model.images(&phi));
            let jw = model.jacobian(&phi) * &w_mat;
            w -= lstsq(&jw, &fval, 1e-12);
            iterations += 1;
            let next = model.residual(&model.images(&phi_of(&w))).camax();
            if !next.is_finite() {
                return Err(Error::NewtonDiverged { t });
            }
            res = next;
        }
        if res > NEWTON_ACCEPT {
            return Err(Error::NewtonDiverged { t });
        }
        let conj = (&y * c(t)).exp();
        let conj_inv = (&y * c(-t)).exp();
        let images = model
            .images(&phi_of(&w))
            .iter()
            .map(|x| Mat::from_nalgebra(&(&conj * x * &conj_inv)))
            .collect();
        let rep = Representation::new(n, images, Provenance::Deformed { t })?;
        let residual = rep.relator_residual(p);
        steps.push(NewtonStep {
            t,
            iterations,
            residual,
            probe: probe(&rep, &words),
            rep,
        });
    }
    Ok(DeformPath {
        n,
        probe_words: words,
        steps,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub irreducible: bool,
    /// Smallest sup-distance of probe traces from a metabelian class.
    pub min_distance: f64,
    pub certified: bool,
}

/// Irreducible and away from every metabelian class on the probe words.
pub fn certify_nonmetabelian(
    p: &KnotPresentation,
    rep: &Representation<Complex64>,
    n: usize,
) -> Result<Certificate> {
    let words = probe_words(p.num_generators());
    let mine = probe(rep, &words);
    let mut min_distance = f64::INFINITY;
    for (_, m) in metabelian_reps(p, n)? {
        let theirs = probe(&m.to_float(), &words);
        let d = mine
            .iter()
            .zip(&theirs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        min_distance = min_distance.min(d);
    }
    let irreducible = is_irreducible(rep)?;
    Ok(Certificate {
        irreducible,
        min_distance,
        certified: irreducible && min_distance > CERTIFY_DIST,
    })
}
