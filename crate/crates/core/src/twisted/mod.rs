//! Twisted cohomology of knot groups, twisted Alexander polynomials and the
//! boundary restriction.

mod alexander;
mod boundary;
mod complex;
mod criterion;
mod decomposition;

pub use alexander::{twisted_alexander, verify_adjoint_factorization, CycPoly, TwistedAlexander};
pub use boundary::{
    boundary_restriction, eigenvalue_gap, eigenvalues, eval_cocycle, torus_pairing, BoundaryReport,
    Pairing, TorusCocycle, TorusCohomology, REGULAR_GAP,
};
pub use complex::{
    adjoint_matrix, adjoint_rep, cohomology_dims, fox_blocks, sl_basis, sl_coords, sl_matrix,
    trace_form_gram, CohomologyReport, TwistedComplex,
};
pub use criterion::{cover_betti, criterion_check, CoverReport, CriterionVerdict, COVER_CAP};
pub use decomposition::{verify_decomposition, DecompositionReport, DECOMPOSITION_SAMPLES};
