//! Exact rational kernel: fractions, Pochhammer products, polynomials, matrices and the
//! Gegenbauer basis.

pub mod geg;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod size;

pub use geg::{GegBasis, GegSeries};
pub use matrix::RatMatrix;
pub use poly::MonoPoly;
pub use size::SizeParam;
pub use rational::{
    binomial, factorial, format_rational, gamma_ratio_shift, gamma_ratio_shift_with, int,
    parse_rational, pochhammer, pow2, rat, PoleConvention, Rational,
};
