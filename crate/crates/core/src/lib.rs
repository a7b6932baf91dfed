pub mod alexmod;
pub mod bareiss;
pub mod cyclotomic;
pub mod deform;
pub mod error;
pub mod knotio;
pub mod linalg;
pub mod metab;
pub mod rep;
pub mod snf;
pub mod twisted;

pub use error::{Error, Result};

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/knots.md")]
    mod knots {}
    #[doc = include_str!("../../../book/src/alexander.md")]
    mod alexander {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/construction.md")]
    mod construction {}
    #[doc = include_str!("../../../book/src/cohomology.md")]
    mod cohomology {}
    #[doc = include_str!("../../../book/src/deformation.md")]
    mod deformation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
