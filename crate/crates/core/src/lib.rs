//! Graded Möbius algebras of matroids: matroids and graphs, chordality
//! conditions, lex initial ideals and strong elimination orders, and
//! graded Betti tables over prime fields.

pub mod bitset;
pub mod error;
pub mod field;
pub mod gma;
pub mod graph;
pub mod groebner;
pub mod linalg;
pub mod matroid;
pub mod reproduce;
pub mod resolution;

pub use bitset::ElementSet;
pub use error::{Error, Result};
pub use gma::{build_gma, GmaAlgebra};
pub use graph::Graph;
pub use groebner::ElementOrder;
pub use matroid::{Matroid, NamedMatroid};
