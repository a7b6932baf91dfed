//! Deformations of metabelian representations into `SL(n, ℂ)`.

mod cocycles;
mod formal;
mod newton;

pub use cocycles::{
    coboundary, coboundary_columns, cocycle_residual, cocycle_spaces, cocycle_spaces_for,
    orthonormal_span, project_out, Cochain1, CocycleSpaces,
};
pub use formal::{solve_formal, FormalSeries, OBSTRUCTION_TOL};
pub use newton::{
    certify_nonmetabelian, newton_deform, probe, probe_words, relator_jacobian, relator_values,
    Certificate, DeformPath, NewtonStep, CERTIFY_DIST, NEWTON_ACCEPT, NEWTON_MAX_ITER, NEWTON_TOL,
    PROBE_WORDS,
};
