pub mod gaussian;
pub mod gcd;
pub mod parse;
pub mod poly;
pub mod rational;

pub use gaussian::GaussianRational;
pub use parse::parse_poly;
pub use poly::{Monomial, Poly};
pub use rational::RationalFunction;
