//! Exact rationals, truncated power series, falling-factorial polynomials
//! and exact Padé construction.

pub mod ffpoly;
pub mod lagrange;
pub mod pade;
pub mod rational;
pub mod series;

pub use ffpoly::FallingFactorialPoly;
pub use pade::{Pade, RationalFunction};
pub use rational::{format_rational, parse_rational, ExactRational};
pub use series::PowerSeries;
