//! Irreducible metabelian representations `α_{(n,χ,z)}` and their counts.

mod character;
mod construct;
mod count;

pub use character::{is_trivial, Character, CharacterGroup, CharacterIter};
pub use construct::{
    build_beta, build_rep, commutant_dim, commutator_system, has_distinct_eigenvalues,
    is_irreducible, is_unitary, metabelian_reps, structure_map, structure_map_with,
    MetabelianSetup, StructureMap, ZChoice,
};
pub use count::{count_classes, divisors, mobius, prime_factors, rn_lower_bound, CoverData};
