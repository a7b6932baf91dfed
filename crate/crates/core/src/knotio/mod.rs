//! Knot inputs and free differential calculus.

mod braid;
mod fox;
mod pd;
mod presentation;
mod sample;
mod table;
mod torus;
mod wirtinger;
mod word;

pub use braid::parse_braid;
pub use fox::{fox_derivative, FreeGroupRingElt};
pub use pd::{parse_pd, parse_pd_text, PdCode};
pub use presentation::{KnotPresentation, PresentationData, Source};
pub use sample::{random_words, WORD_SEED};
pub use table::{knot_by_name, load_table, table_names};
pub use torus::torus_knot;
pub use word::Word;
