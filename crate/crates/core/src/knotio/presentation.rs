use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::word::Word;
use crate::error::{Error, Result};
use crate::snf::smith;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Source {
    Braid,
    Pd,
    Torus,
    Manual,
}

/// Raw, unvalidated form used for (de)serialization.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationData {
    pub num_generators: usize,
    pub relators: Vec<Word>,
    pub meridian: Word,
    #[serde(default)]
    pub longitude: Option<Word>,
    #[serde(default = "manual")]
    pub source: Source,
}

fn manual() -> Source {
    Source::Manual
}

/// Group presentation of a knot group with peripheral words.
///
/// Construction checks that the abelianization is infinite cyclic with the
/// meridian as generator; the induced degree map `ε` is cached.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PresentationData", into = "PresentationData")]
pub struct KnotPresentation {
    num_generators: usize,
    relators: Vec<Word>,
    meridian: Word,
    longitude: Option<Word>,
    source: Source,
    weights: Vec<i64>,
}

impl TryFrom<PresentationData> for KnotPresentation {
    type Error = Error;
    fn try_from(d: PresentationData) -> Result<Self> {
        KnotPresentation::new(
            d.num_generators,
            d.relators,
            d.meridian,
            d.longitude,
            d.source,
        )
    }
}

impl From<KnotPresentation> for PresentationData {
    fn from(p: KnotPresentation) -> Self {
        PresentationData {
            num_generators: p.num_generators,
            relators: p.relators,
            meridian: p.meridian,
            longitude: p.longitude,
            source: p.source,
        }
    }
}

impl KnotPresentation {
    pub fn new(
        num_generators: usize,
        relators: Vec<Word>,
        meridian: Word,
        longitude: Option<Word>,
        source: Source,
    ) -> Result<Self> {
        if num_generators == 0 {
            return Err(Error::InvalidPresentation("no generators".into()));
        }
        let in_range = |w: &Word| w.max_generator().is_none_or(|g| g < num_generators);
        if !relators.iter().all(in_range)
            || !in_range(&meridian)
            || !longitude.as_ref().is_none_or(in_range)
        {
            return Err(Error::InvalidPresentation(
                "generator index out of range".into(),
            ));
        }
        if source != Source::Manual && relators.len() + 1 != num_generators {
            return Err(Error::InvalidPresentation(format!(
                "deficiency must be 1, got {} generators and {} relators",
                num_generators,
                relators.len()
            )));
        }
        let weights = abelianization_weights(num_generators, &relators, &meridian)?;
        if let Some(l) = &longitude {
            if l.weight(&weights) != 0 {
                return Err(Error::InvalidPresentation(
                    "longitude is not null-homologous".into(),
                ));
            }
        }
        Ok(KnotPresentation {
            num_generators,
            relators,
            meridian,
            longitude,
            source,
            weights,
        })
    }

    /// The trivial knot: one generator, no relators.
    pub fn unknot() -> Self {
        KnotPresentation::new(
            1,
            vec![],
            Word::gen(0),
            Some(Word::identity()),
            Source::Manual,
        )
        .expect("unknot presentation is valid")
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn meridian(&self) -> &Word {
        &self.meridian
    }

    pub fn longitude(&self) -> Option<&Word> {
        self.longitude.as_ref()
    }

    pub fn require_longitude(&self) -> Result<&Word> {
        self.longitude.as_ref().ok_or(Error::MissingLongitude)
    }

    pub fn source(&self) -> Source {
        self.source
    }

    /// Abelianization degrees `ε(x_k)`, normalized so that `ε(meridian) = 1`.
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn degree(&self, w: &Word) -> i64 {
        w.weight(&self.weights)
    }

    pub fn deficiency(&self) -> i64 {
        self.num_generators as i64 - self.relators.len() as i64
    }

    pub fn require_deficiency_one(&self) -> Result<()> {
        if self.deficiency() != 1 {
            return Err(Error::InvalidPresentation(format!(
                "deficiency-1 presentation required, got deficiency {}",
                self.deficiency()
            )));
        }
        Ok(())
    }

    /// If the meridian is a single generator `x_k`, return `k`.
    pub fn meridian_generator(&self) -> Option<usize> {
        match self.meridian.letters() {
            [(k, 1)] => Some(*k),
            _ => None,
        }
    }
}

/// Checks `H_1 ≅ Z` with the meridian mapping to a generator and returns the
/// degree map.
fn abelianization_weights(g: usize, relators: &[Word], meridian: &Word) -> Result<Vec<i64>> {
    let rows: Vec<Vec<BigInt>> = relators
        .iter()
        .map(|r| r.exponent_sums(g).into_iter().map(BigInt::from).collect())
        .collect();
    let s = smith(&rows, g);
    let (tors, free) = s.cokernel();
    if free != 1 || !tors.is_empty() {
        return Err(Error::InvalidPresentation(format!(
            "abelianization is not Z (free rank {free}, torsion {tors:?})"
        )));
    }
    let col = s.rank();
    let mut weights: Vec<i64> = Vec::with_capacity(g);
    for k in 0..g {
        let w = s.v[k][col]
            .to_i64()
            .ok_or_else(|| Error::InvalidPresentation("abelianization weight overflow".into()))?;
        weights.push(w);
    }
    let m: BigInt = meridian
        .exponent_sums(g)
        .iter()
        .zip(&weights)
        .map(|(a, b)| BigInt::from(a * b))
        .sum();
    if m.is_one() {
        Ok(weights)
    } else if (-&m).is_one() {
        Ok(weights.into_iter().map(|w| -w).collect())
    } else if m.is_zero() {
        Err(Error::InvalidPresentation(
            "meridian is null-homologous".into(),
        ))
    } else {
        Err(Error::InvalidPresentation(format!(
            "meridian maps to {m}, not a generator of H1"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_is_valid() {
        let u = KnotPresentation::unknot();
        assert_eq!(u.weights(), &[1]);
        assert_eq!(u.deficiency(), 1);
    }

    #[test]
    fn rejects_torsion_abelianization() {
        // <x | x^2> has H1 = Z/2
        let r = KnotPresentation::new(
            1,
            vec![Word::gen_pow(0, 2)],
            Word::gen(0),
            None,
            Source::Manual,
        );
        assert!(matches!(r, Err(Error::InvalidPresentation(_))));
    }

    #[test]
    fn rejects_non_generating_meridian() {
        let r = KnotPresentation::new(1, vec![], Word::gen_pow(0, 2), None, Source::Manual);
        assert!(r.is_err());
    }

    #[test]
    fn negative_meridian_flips_weights() {
        let p =
            KnotPresentation::new(1, vec![], Word::gen_pow(0, -1), None, Source::Manual).unwrap();
        assert_eq!(p.weights(), &[-1]);
        assert_eq!(p.degree(p.meridian()), 1);
    }

    #[test]
    fn json_round_trip() {
        let p = KnotPresentation::unknot();
        let s = serde_json::to_string(&p).unwrap();
        let q: KnotPresentation = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
