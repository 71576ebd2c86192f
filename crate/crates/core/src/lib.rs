//! Exact toolkit for conic-bundle models of real birational involutions of
//! the plane: validation, fixed curves, real loci, classification and
//! equivariant equivalence.

pub mod conjugacy;
pub mod error;
pub mod family;
pub mod invariants;
pub mod models;
pub mod parse;
pub mod poly;
pub mod projmaps;
pub mod roots;
pub mod sign;

pub use error::{InvariantError, MapError, ModelError, ParseError, PolyError};
pub use poly::{binary_discriminant, homogenize, positive_proportionality, rat, rat_int, Rat, RatPoly};
pub use roots::{compare, count_real_roots_in, isolate_real_roots, sign_at, AlgReal};
pub use sign::Sign;
