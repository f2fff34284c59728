//! Exact linear algebra over `Z/pZ`.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod wedge;

pub use field::{Fp, PrimeField};
pub use matrix::FpMatrix;
pub use poly::Poly;
pub use wedge::{binomial, WedgeIndex};
