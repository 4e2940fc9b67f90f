//! Normal ordering in quadratic algebras with a lexicographic PBW basis.

mod engine;
mod poly;
mod presentation;
pub mod checks;

pub use engine::{Engine, Letter, Word};
pub use poly::{poly_to_json, poly_to_string, JsonCoeff, Mono, Poly};
pub use presentation::{Correction, GenKind, GenLabel, Presentation, QuadRelation};
