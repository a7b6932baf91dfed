use rayon::prelude::*;
use serde::Serialize;

use super::complex::{adjoint_rep, cohomology_dims};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::knotio::{random_words, KnotPresentation, Word, WORD_SEED};
use crate::metab::{Character, MetabelianSetup, ZChoice};

/// Number of sampled words in the trace identity, on top of the generators.
pub const DECOMPOSITION_SAMPLES: usize = 200;

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub n: usize,
    pub words_checked: usize,
    /// Exponent vectors of `χ_1, ..., χ_{n-1}`.
    pub chi_i: Vec<Vec<u64>>,
    pub chi_i_orders: Vec<usize>,
    pub h1_adjoint: usize,
    pub b1_cover: usize,
    pub h1_beta: Vec<usize>,
}

/// Check `ad α ⊕ θ_1 ≅ α_n ⊕ β_{(n,χ_1)} ⊕ ... ⊕ β_{(n,χ_{n-1})}` through
/// exact traces on sampled words, then compare `h^1` on both sides.
pub fn verify_decomposition(
    p: &KnotPresentation,
    setup: &MetabelianSetup,
    chi: &Character,
) -> Result<DecompositionReport> {
    let n = setup.structure.n;
    let g = &setup.characters;
    let alpha = setup.build(p, chi, ZChoice::Canonical)?;
    let ad = adjoint_rep(&alpha)?;
    let betas = (0..n)
        .map(|i| {
            let c = g.character(g.twisted_difference(chi, i))?;
            let b = setup.beta(p, &c)?;
            Ok((c, b))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut words: Vec<Word> = (0..p.num_generators()).map(Word::gen).collect();
    words.extend(random_words(
        p.num_generators(),
        DECOMPOSITION_SAMPLES,
        WORD_SEED,
    ));
    let one = CycNum::one();
    for w in &words {
        let lhs = &ad.character_of(w) + &one;
        let rhs = betas
            .iter()
            .fold(CycNum::zero(), |acc, (_, b)| &acc + &b.character_of(w));
        if lhs != rhs {
            return Err(Error::DecompositionMismatch(format!(
                "trace mismatch on {w}: {lhs} vs {rhs}"
            )));
        }
    }

    let b1_cover = g.homology().free_rank;
    let h1_adjoint = cohomology_dims(p, &ad)?.h1;
    let h1s: Vec<usize> = betas
        .par_iter()
        .map(|(_, b)| cohomology_dims(p, b).map(|c| c.h1))
        .collect::<Result<Vec<_>>>()?;
    // the regular representation α_n computes H^1 of the n-fold cyclic cover
    if h1s[0] != 1 + b1_cover {
        return Err(Error::DecompositionMismatch(format!(
            "h1(α_n) = {} but b1(L_n) = {b1_cover}",
            h1s[0]
        )));
    }
    let h1_beta = h1s[1..].to_vec();
    if h1_adjoint != b1_cover + h1_beta.iter().sum::<usize>() {
        return Err(Error::DecompositionMismatch(format!(
            "h1(ad α) = {h1_adjoint} but b1(L_n) + Σ h1(β) = {b1_cover} + {h1_beta:?}"
        )));
    }
    Ok(DecompositionReport {
        n,
        words_checked: words.len(),
        chi_i: betas[1..]
            .iter()
            .map(|(c, _)| c.exponents.clone())
            .collect(),
        chi_i_orders: betas[1..].iter().map(|(c, _)| c.order).collect(),
        h1_adjoint,
        b1_cover,
        h1_beta,
    })
}
