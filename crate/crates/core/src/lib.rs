//! Koszul cohomology of split canonical ribbons over prime fields.
pub mod curve;
pub mod error;
pub mod ff_linalg;
pub mod graded;
pub mod green;
pub mod koszul;
pub mod ribbon;
pub mod session;
pub mod strata;

pub use error::{Error, Result};
