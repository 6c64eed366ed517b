//! Exact construction and verification of matrix-valued Gegenbauer polynomials.

pub mod connection;
pub mod error;
pub mod exact;
pub mod genfun;
pub mod matpoly;
pub mod mvop;
pub mod operators;
pub mod registry;
pub mod scalar;
pub mod serial;
pub mod suites;
pub mod weight;
pub mod zeros;

pub use error::{Error, Result};
pub use exact::{GegSeries, MonoPoly, RatMatrix, Rational, SizeParam};
pub use matpoly::MatPoly;
