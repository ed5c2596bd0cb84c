//! Exact symbolic arithmetic for Koszul-type complexes attached to a
//! generically surjective matrix of holomorphic polynomials, with explicit
//! polynomial division certificates.

pub mod arith;
pub mod division;
pub mod error;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod morphism;
pub mod multilinear;
pub mod random;
pub mod sampling;

pub use arith::{parse_poly, GaussianRational, Monomial, Poly, RationalFunction};
pub use error::{Error, Result};
pub use morphism::{running_example, MorphismData};
pub use multilinear::{BasisWord, GradedElement, QSlot};
