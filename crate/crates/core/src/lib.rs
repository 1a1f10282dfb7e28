//! Exact verification of the operator algebras and algebraic spectra of the
//! one-parameter, two-parameter and rationally extended Lissajous systems on
//! the sphere.

pub mod algebra;
pub mod error;
pub mod operators;
pub mod orthomodels;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod spectrum;
pub mod trig;

pub use error::{Error, Result};
pub use scalar::{NumericContext, Rational, Real, Scalar};
