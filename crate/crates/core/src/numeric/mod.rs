//! Floating-point helpers: modified Bessel functions and adaptive quadrature.

pub mod bessel;
pub mod quadrature;

pub use quadrature::{integrate, Integral, QuadratureOptions};
