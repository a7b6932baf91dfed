//! Alexander modules, branched cyclic covers and growth of their torsion.

mod alexander;
mod branched;
mod laurent;
mod mahler;
mod resultant;

pub use alexander::{alexander_matrix, alexander_poly, fox_abelian};
pub use branched::{
    betti_and_torsion, branched_homology, t_minus_one_is_onto, AlexanderModule, FinAbT,
};
pub use laurent::LaurentPoly;
pub use mahler::{ln_big, mahler, roots, sw_ratio, sw_ratio_poly};
pub use resultant::{resultant, torsion_order_resultant, Count};
