//! Shared Wirtinger construction for braid closures and PD codes.

use super::presentation::{KnotPresentation, Source};
use super::word::Word;
use crate::error::Result;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Crossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i64,
}

/// Oriented knot diagram: arcs are numbered along the knot starting from the
/// meridian arc 0, and `traversal` lists crossings in the order they are
/// passed underneath.
pub(crate) struct Diagram {
    pub num_arcs: usize,
    pub crossings: Vec<Crossing>,
    pub traversal: Vec<usize>,
}

impl Diagram {
    pub fn presentation(&self, source: Source) -> Result<KnotPresentation> {
        // under_out = over^{-ε} · under_in · over^{ε}; the last relator is redundant
        let mut relators: Vec<Word> = self
            .crossings
            .iter()
            .map(|c| {
                Word::from_letters([
                    (c.under_out, -1),
                    (c.over, -c.sign),
                    (c.under_in, 1),
                    (c.over, c.sign),
                ])
            })
            .collect();
        relators.pop();

        let mut w = Word::identity();
        let mut writhe = 0;
        for &ci in &self.traversal {
            let c = self.crossings[ci];
            w = w.mul(&Word::gen_pow(c.over, c.sign));
            writhe += c.sign;
        }
        let longitude = w.mul(&Word::gen_pow(0, -writhe));
        KnotPresentation::new(
            self.num_arcs,
            relators,
            Word::gen(0),
            Some(longitude),
            source,
        )
    }
}
