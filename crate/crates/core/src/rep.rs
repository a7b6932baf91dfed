//! Linear representations of presented groups.

use num_complex::Complex64;
use num_integer::Integer;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::knotio::{KnotPresentation, Word};
use crate::linalg::{Mat, Scalar};

/// Frobenius tolerance for relators in the float backend.
pub const FLOAT_RELATOR_TOL: f64 = 1e-9;

impl<T: Scalar + Serialize> Serialize for Mat<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de, T: Scalar + Deserialize<'de>> Deserialize<'de> for Mat<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<T>> = Vec::deserialize(d)?;
        let c = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != c) {
            return Err(D::Error::custom("ragged matrix"));
        }
        Ok(Mat::from_rows(rows))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Backend {
    ExactCyclotomic(u64),
    ComplexFloat,
}

/// Where a representation came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Provenance {
    /// `α_{(n,χ,z)}` with `z = ζ_{2n}^{z_power}`.
    Metabelian {
        n: usize,
        invariant_factors: Vec<u64>,
        character: Vec<u64>,
        z_power: i64,
    },
    /// `β_{(n,χ)}`: the same construction with `z = 1`, a `GL(n)` representation.
    Beta {
        n: usize,
        invariant_factors: Vec<u64>,
        character: Vec<u64>,
    },
    Adjoint,
    Trivial,
    Deformed {
        t: f64,
    },
    Manual,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Representation<T: Scalar> {
    dim: usize,
    images: Vec<Mat<T>>,
    inverses: Vec<Mat<T>>,
    provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
struct RepData<T: Scalar> {
    dim: usize,
    backend: Backend,
    provenance: Provenance,
    images: Vec<Mat<T>>,
}

impl<T: Scalar + Serialize> Serialize for Representation<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RepData {
            dim: self.dim,
            backend: self.backend(),
            provenance: self.provenance.clone(),
            images: self.images.clone(),
        }
        .serialize(s)
    }
}

impl<'de, T: Scalar + Deserialize<'de>> Deserialize<'de> for Representation<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RepData::<T>::deserialize(d)?;
        Representation::new(r.dim, r.images, r.provenance).map_err(D::Error::custom)
    }
}

impl<T: Scalar> Representation<T> {
    pub fn new(dim: usize, images: Vec<Mat<T>>, provenance: Provenance) -> Result<Self> {
        let mut inverses = Vec::with_capacity(images.len());
        for (i, m) in images.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidPresentation(format!(
                    "image {i} is not {dim}x{dim}"
                )));
            }
            inverses.push(
                m.inverse()
                    .ok_or_else(|| Error::InvalidPresentation(format!("image {i} is singular")))?,
            );
        }
        Ok(Representation {
            dim,
            images,
            inverses,
            provenance,
        })
    }

    /// The trivial representation of dimension `dim`.
    pub fn trivial(num_generators: usize, dim: usize) -> Self {
        let id = Mat::identity(dim);
        Representation {
            dim,
            images: vec![id.clone(); num_generators],
            inverses: vec![id; num_generators],
            provenance: Provenance::Trivial,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_generators(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Mat<T>] {
        &self.images
    }

    pub fn image(&self, k: usize) -> &Mat<T> {
        &self.images[k]
    }

    pub fn inverse_image(&self, k: usize) -> &Mat<T> {
        &self.inverses[k]
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = p;
        self
    }

    pub fn backend(&self) -> Backend {
        if T::is_exact() {
            // all entries live in a common field; report its order
            let n = self
                .images
                .iter()
                .flat_map(|m| m.to_rows().into_iter().flatten())
                .map(|x| field_order(&x))
                .fold(1u64, |a, b| a.lcm(&b));
            Backend::ExactCyclotomic(n)
        } else {
            Backend::ComplexFloat
        }
    }

    /// `x_g^{±1}` as a matrix.
    pub fn letter(&self, g: usize, sign: i64) -> &Mat<T> {
        if sign > 0 {
            &self.images[g]
        } else {
            &self.inverses[g]
        }
    }

    pub fn eval(&self, w: &Word) -> Mat<T> {
        let mut acc = Mat::identity(self.dim);
        for (g, e) in w.unit_letters() {
            acc = acc.mul(self.letter(g, e));
        }
        acc
    }

    /// `tr ρ(w)`.
    pub fn character_of(&self, w: &Word) -> T {
        self.eval(w).trace()
    }

    /// Largest Frobenius distance `‖ρ(r) - I‖` over relators.
    pub fn relator_residual(&self, p: &KnotPresentation) -> f64 {
        let id = Mat::<T>::identity(self.dim);
        p.relators()
            .iter()
            .map(|r| self.eval(r).sub(&id).to_c64().frobenius_norm())
            .fold(0.0, f64::max)
    }

    /// Relators hold identically (exact) or within tolerance (float).
    pub fn check_relators(&self, p: &KnotPresentation) -> Result<()> {
        if self.images.len() != p.num_generators() {
            return Err(Error::InvalidPresentation(format!(
                "{} images for {} generators",
                self.images.len(),
                p.num_generators()
            )));
        }
        for (i, r) in p.relators().iter().enumerate() {
            let m = self.eval(r);
            let ok = if T::is_exact() {
                m.is_identity()
            } else {
                m.sub(&Mat::identity(self.dim)).to_c64().frobenius_norm() <= FLOAT_RELATOR_TOL
            };
            if !ok {
                return Err(Error::RelatorViolation {
                    relator: i,
                    detail: format!("image {:?}", m.to_c64()),
                });
            }
        }
        Ok(())
    }

    pub fn to_float(&self) -> Representation<Complex64> {
        Representation {
            dim: self.dim,
            images: self.images.iter().map(|m| m.to_c64()).collect(),
            inverses: self.inverses.iter().map(|m| m.to_c64()).collect(),
            provenance: self.provenance.clone(),
        }
    }

    /// Conjugate by `g`: `x ↦ g ρ(x) g^{-1}`.
    pub fn conjugate(&self, g: &Mat<T>) -> Result<Self> {
        let gi = g
            .inverse()
            .ok_or_else(|| Error::InvalidPresentation("singular conjugator".into()))?;
        Ok(Representation {
            dim: self.dim,
            images: self.images.iter().map(|m| g.mul(m).mul(&gi)).collect(),
            inverses: self.inverses.iter().map(|m| g.mul(m).mul(&gi)).collect(),
            provenance: self.provenance.clone(),
        })
    }
}

fn field_order<T: Scalar>(x: &T) -> u64 {
    // only meaningful for CycNum; other scalars report 1
    let any: &dyn std::any::Any = x;
    any.downcast_ref::<CycNum>()
        .map_or(1, |c| if c.is_zero() { 1 } else { c.order() })
}
