use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::character::{Character, CharacterGroup};
use crate::alexmod::{branched_homology, FinAbT};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::knotio::{KnotPresentation, Word};
use crate::linalg::{poly, Mat, Scalar};
use crate::rep::{Provenance, Representation};

/// `g ↦ (ε(g), μ^{-ε(g)} g) ∈ ℤ ⋉ H/(t^n - 1)` on generators.
#[derive(Clone, Debug)]
pub struct StructureMap {
    pub n: usize,
    pub eps: Vec<i64>,
    pub h: Vec<Vec<BigInt>>,
    homology: FinAbT,
}

impl StructureMap {
    pub fn homology(&self) -> &FinAbT {
        &self.homology
    }

    /// `(ε, h)(ε', h') = (ε + ε', t^{ε'} h + h')`.
    pub fn compose(&self, a: &(i64, Vec<BigInt>), b: &(i64, Vec<BigInt>)) -> (i64, Vec<BigInt>) {
        let h = &self.homology;
        (a.0 + b.0, h.add(&h.apply_t_pow(&a.1, b.0), &b.1))
    }

    pub fn letter(&self, g: usize, sign: i64) -> (i64, Vec<BigInt>) {
        let h = &self.homology;
        if sign > 0 {
            (self.eps[g], self.h[g].clone())
        } else {
            (
                -self.eps[g],
                h.neg(&h.apply_t_pow(&self.h[g], -self.eps[g])),
            )
        }
    }

    pub fn eval(&self, w: &Word) -> (i64, Vec<BigInt>) {
        let mut acc = (0, self.homology.zero());
        for (g, e) in w.unit_letters() {
            acc = self.compose(&acc, &self.letter(g, e));
        }
        acc
    }

    /// Every relator maps to the identity.
    pub fn check(&self, p: &KnotPresentation) -> Result<()> {
        for (i, r) in p.relators().iter().enumerate() {
            let (e, h) = self.eval(r);
            if e != 0 || h.iter().any(|x| !x.is_zero()) {
                return Err(Error::RelatorViolation {
                    relator: i,
                    detail: format!("maps to ({e}, {h:?})"),
                });
            }
        }
        Ok(())
    }
}

pub fn structure_map(p: &KnotPresentation, n: usize) -> Result<StructureMap> {
    structure_map_with(p, branched_homology(p, n))
}

pub fn structure_map_with(p: &KnotPresentation, homology: FinAbT) -> Result<StructureMap> {
    let mu = p.meridian();
    let eps = p.weights().to_vec();
    let h = (0..p.num_generators())
        .map(|g| homology.element_of_word(&mu.pow(-eps[g]).mul(&Word::gen(g))))
        .collect();
    let s = StructureMap {
        n: homology.n,
        eps,
        h,
        homology,
    };
    s.check(p)?;
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZChoice {
    /// `z = ζ_{2n}^{n+1}`.
    Canonical,
    /// `z = ζ_{2n}^{n+1+2k}`.
    Explicit(i64),
}

impl ZChoice {
    pub fn power(self, n: usize) -> i64 {
        let n = n as i64;
        let k = match self {
            ZChoice::Canonical => 0,
            ZChoice::Explicit(k) => k,
        };
        (n + 1 + 2 * k).rem_euclid(2 * n)
    }
}

/// `P_z^ε · D(h)` for each generator, with `z = ζ_{2n}^{z_power}`.
fn images(
    s: &StructureMap,
    g: &CharacterGroup,
    chi: &Character,
    z_power: Option<i64>,
) -> Vec<Mat<CycNum>> {
    let n = s.n;
    let e = g.exponent();
    let field = (2 * n as u64).lcm(&e);
    let z = match z_power {
        Some(k) => CycNum::root_of_unity(field, k * (field / (2 * n as u64)) as i64),
        None => CycNum::one(),
    };
    let mut p = Mat::zeros(n, n);
    for k in 0..n {
        p.set((k + 1) % n, k, z.clone());
    }
    let chi_of = |h: &[BigInt]| {
        CycNum::root_of_unity(
            field,
            (g.value_exponent(&chi.exponents, h) * (field / e)) as i64,
        )
    };
    let hom = s.homology();
    (0..s.eps.len())
        .map(|x| {
            let mut d = Vec::with_capacity(n);
            let mut h = s.h[x].clone();
            for _ in 0..n {
                d.push(chi_of(&h));
                h = hom.apply_t(&h);
            }
            p.pow(s.eps[x]).mul(&Mat::diag(&d))
        })
        .collect()
}

/// The metabelian representation `α_{(n,χ,z)}` in exact arithmetic.
pub fn build_rep(
    p: &KnotPresentation,
    s: &StructureMap,
    g: &CharacterGroup,
    chi: &Character,
    z: ZChoice,
) -> Result<Representation<CycNum>> {
    let n = s.n;
    let z_power = z.power(n);
    let prov = Provenance::Metabelian {
        n,
        invariant_factors: g.moduli().to_vec(),
        character: chi.exponents.clone(),
        z_power,
    };
    let rep = Representation::new(n, images(s, g, chi, Some(z_power)), prov)?;
    rep.check_relators(p)?;
    Ok(rep)
}

/// `β_{(n,χ)}`: the same construction with `z = 1`, valued in `GL(n)`.
pub fn build_beta(
    p: &KnotPresentation,
    s: &StructureMap,
    g: &CharacterGroup,
    chi: &Character,
) -> Result<Representation<CycNum>> {
    let prov = Provenance::Beta {
        n: s.n,
        invariant_factors: g.moduli().to_vec(),
        character: chi.exponents.clone(),
    };
    let rep = Representation::new(s.n, images(s, g, chi, None), prov)?;
    rep.check_relators(p)?;
    Ok(rep)
}

/// Everything needed to build metabelian representations of rank `n`.
pub struct MetabelianSetup {
    pub structure: StructureMap,
    pub characters: CharacterGroup,
}

impl MetabelianSetup {
    pub fn new(p: &KnotPresentation, n: usize) -> Result<Self> {
        let h = branched_homology(p, n);
        let characters = CharacterGroup::new(h.clone())?;
        let structure = structure_map_with(p, h)?;
        Ok(MetabelianSetup {
            structure,
            characters,
        })
    }

    /// Orbit representatives of order `n`, one per conjugacy class.
    pub fn classes(&self) -> Vec<Character> {
        self.characters.orbit_representatives(self.structure.n)
    }

    pub fn build(
        &self,
        p: &KnotPresentation,
        chi: &Character,
        z: ZChoice,
    ) -> Result<Representation<CycNum>> {
        build_rep(p, &self.structure, &self.characters, chi, z)
    }

    pub fn beta(&self, p: &KnotPresentation, chi: &Character) -> Result<Representation<CycNum>> {
        build_beta(p, &self.structure, &self.characters, chi)
    }
}

/// One representative of each class of irreducible metabelian reps.
pub fn metabelian_reps(
    p: &KnotPresentation,
    n: usize,
) -> Result<Vec<(Character, Representation<CycNum>)>> {
    let setup = MetabelianSetup::new(p, n)?;
    setup
        .classes()
        .into_iter()
        .map(|chi| {
            let r = setup.build(p, &chi, ZChoice::Canonical)?;
            Ok((chi, r))
        })
        .collect()
}

/// `{M : M ρ(x) = ρ(x) M}` as the kernel of the stacked commutator maps.
pub fn commutator_system<T: Scalar>(rep: &Representation<T>) -> Mat<T> {
    let n = rep.dim();
    let g = rep.num_generators();
    let mut m = Mat::<T>::zeros(g * n * n, n * n);
    for (x, a) in rep.images().iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                // E_ij A - A E_ij
                let col = i * n + j;
                for l in 0..n {
                    let r = x * n * n + i * n + l;
                    m.set(r, col, m.get(r, col).add(a.get(j, l)));
                }
                for k in 0..n {
                    let r = x * n * n + k * n + j;
                    m.set(r, col, m.get(r, col).sub(a.get(k, i)));
                }
            }
        }
    }
    m
}

pub fn commutant_dim<T: Scalar>(rep: &Representation<T>) -> Result<usize> {
    let n = rep.dim();
    Ok(n * n - T::rank(&commutator_system(rep))?)
}

/// Schur: irreducible iff the commutant is the scalars.
pub fn is_irreducible<T: Scalar>(rep: &Representation<T>) -> Result<bool> {
    Ok(commutant_dim(rep)? == 1)
}

/// The characteristic polynomial of `m` is squarefree.
pub fn has_distinct_eigenvalues<T: Scalar>(m: &Mat<T>) -> bool {
    let c = m.charpoly();
    poly::degree(&poly::gcd(&c, &poly::derivative(&c))) == 0
}

/// `ρ(x) ρ(x)^* = I` for every generator.
pub fn is_unitary<T: Scalar>(rep: &Representation<T>) -> bool {
    rep.images().iter().all(|a| {
        let prod = a.mul(&a.adjoint());
        if T::is_exact() {
            prod.is_identity()
        } else {
            prod.sub(&Mat::identity(rep.dim())).to_c64().max_abs() <= 1e-9
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotio::{knot_by_name, torus_knot};

    #[test]
    fn structure_map_basics() {
        let p = knot_by_name("3_1").unwrap();
        let s = structure_map(&p, 2).unwrap();
        let m = p.meridian_generator().unwrap();
        assert_eq!(s.eps[m], 1);
        assert!(s.h[m].iter().all(|x| x.is_zero()));
        assert_eq!(s.homology().invariant_factors, vec![BigInt::from(3)]);
        for g in 0..p.num_generators() {
            assert_eq!(s.eps[g], 1);
            if g != m {
                assert!(!s.h[g][0].is_zero());
            }
        }
    }

    #[test]
    fn figure_eight_rank_two() {
        let p = knot_by_name("4_1").unwrap();
        let reps = metabelian_reps(&p, 2).unwrap();
        assert_eq!(reps.len(), 2);
        for (_, r) in &reps {
            let a = r.eval(p.meridian());
            assert!(a.get(0, 0).is_zero() && a.get(1, 1).is_zero());
            assert_eq!(a.get(0, 1), a.get(1, 0));
            assert_eq!(a.get(0, 1).pow(2), CycNum::from_int(-1));
            assert!(r.character_of(p.meridian()).is_zero());
            assert!(is_irreducible(r).unwrap());
            assert_eq!(commutant_dim(r).unwrap(), 1);
            assert!(is_unitary(r));
            for x in r.images() {
                assert!(x.det().is_one());
            }
        }
    }

    #[test]
    fn trefoil_rank_three() {
        let p = knot_by_name("3_1").unwrap();
        let reps = metabelian_reps(&p, 3).unwrap();
        assert_eq!(reps.len(), 1);
        let r = &reps[0].1;
        assert!(is_unitary(r));
        assert!(has_distinct_eigenvalues(&r.eval(p.meridian())));
        assert!(is_irreducible(r).unwrap());
    }

    #[test]
    fn lower_order_characters_are_reducible() {
        let p = knot_by_name("4_1").unwrap();
        let setup = MetabelianSetup::new(&p, 4).unwrap();
        let mut seen = 0;
        for chi in setup.characters.enumerate().filter(|c| c.order < 4).take(6) {
            let r = setup.build(&p, &chi, ZChoice::Canonical).unwrap();
            assert!(!is_irreducible(&r).unwrap());
            seen += 1;
        }
        assert!(seen > 1);
        let t: Representation<CycNum> = Representation::trivial(p.num_generators(), 3);
        assert!(!is_irreducible(&t).unwrap());
    }

    #[test]
    fn trivial_character_rank_one() {
        let p = knot_by_name("5_2").unwrap();
        let reps = metabelian_reps(&p, 1).unwrap();
        assert_eq!(reps.len(), 1);
        assert!(reps[0].1.images().iter().all(|m| m.is_identity()));
    }

    #[test]
    fn longitude_of_fibered_genus_one_is_trivial() {
        for name in ["3_1", "4_1"] {
            let p = knot_by_name(name).unwrap();
            for (_, r) in metabelian_reps(&p, 2).unwrap() {
                assert_eq!(r.character_of(p.longitude().unwrap()), CycNum::from_int(2));
            }
        }
    }

    #[test]
    fn torus_knot_presentation() {
        let p = torus_knot(3, 5).unwrap();
        let reps = metabelian_reps(&p, 3).unwrap();
        assert_eq!(reps.len(), 8);
        for (_, r) in &reps {
            assert!(is_irreducible(r).unwrap());
            assert!(has_distinct_eigenvalues(&r.eval(p.meridian())));
        }
    }

    #[test]
    fn z_choice_powers() {
        for n in 1..8usize {
            for z in [
                ZChoice::Canonical,
                ZChoice::Explicit(1),
                ZChoice::Explicit(-3),
            ] {
                let k = z.power(n);
                let zz = CycNum::root_of_unity(2 * n as u64, k);
                assert_eq!(
                    zz.pow(n as i64),
                    CycNum::from_int(if n % 2 == 1 { 1 } else { -1 })
                );
            }
        }
    }
}
