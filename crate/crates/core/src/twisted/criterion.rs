use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::complex::{adjoint_rep, cohomology_dims};
use crate::error::{Error, Result};
use crate::knotio::KnotPresentation;
use crate::metab::{Character, MetabelianSetup, ZChoice};

/// Default cap on `|H|` for [`cover_betti`].
pub const COVER_CAP: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionVerdict {
    pub n: usize,
    pub h1: usize,
    pub criterion_met: bool,
    pub b1_ln: usize,
}

/// `dim H^1(N_K; sl(n)_{ad α}) = n - 1`, by exact rank computation.
pub fn criterion_check(
    p: &KnotPresentation,
    setup: &MetabelianSetup,
    chi: &Character,
) -> Result<CriterionVerdict> {
    let n = setup.structure.n;
    let alpha = setup.build(p, chi, ZChoice::Canonical)?;
    let h1 = cohomology_dims(p, &adjoint_rep(&alpha)?)?.h1;
    let b1_ln = setup.characters.homology().free_rank;
    let criterion_met = h1 == n - 1;
    if criterion_met && b1_ln > 0 {
        return Err(Error::InvariantViolation(format!(
            "h1 = n - 1 = {h1} with b1(L_{n}) = {b1_ln}"
        )));
    }
    Ok(CriterionVerdict {
        n,
        h1,
        criterion_met,
        b1_ln,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub n: usize,
    /// `|H|` with `H = Tor H_1(L_n)`.
    pub k: u64,
    /// `Σ_σ h^1(N_K; β_{(n,σ)})` over all characters `σ` of `H`.
    pub b1_tilde: u64,
    pub equality: bool,
    /// Lower bound for `b_1` of the branched metabelian cover.
    pub branched_lower_bound: i64,
    /// `h^1` per character in enumeration order.
    pub per_character: Vec<usize>,
}

/// `b_1` of the unbranched metabelian cover with group `ℤ/n ⋉ H`.
pub fn cover_betti(p: &KnotPresentation, setup: &MetabelianSetup, cap: u64) -> Result<CoverReport> {
    let n = setup.structure.n;
    let g = &setup.characters;
    let size = g.size();
    if size > cap as u128 {
        return Err(Error::Intractable {
            size: size.to_string(),
            cap,
        });
    }
    let chars: Vec<Character> = g.enumerate().collect();
    let per_character = chars
        .par_iter()
        .map(|c| cohomology_dims(p, &setup.beta(p, c)?).map(|r| r.h1))
        .collect::<Result<Vec<usize>>>()?;
    let k = size.to_u64().unwrap();
    let b1_tilde = per_character.iter().map(|&h| h as u64).sum::<u64>();
    Ok(CoverReport {
        n,
        k,
        b1_tilde,
        equality: b1_tilde == k,
        branched_lower_bound: b1_tilde as i64 - k as i64,
        per_character,
    })
}
