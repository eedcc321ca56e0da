//! Expansion coefficients from a table of `c_{a,b}`, and the factorial
//! bound suite.
//!
//! The c-table is an input: it can be loaded from JSON or built in code.
//! All three α routes must agree exactly on any table.

pub mod alpha;
pub mod bounds;
pub mod ctable;
pub mod suite;

pub use alpha::{
    alpha, alpha_via_iteration, alpha_via_lagrange, alpha_via_lemma, AlphaSeries, Route,
};
pub use bounds::{check_alpha_factorial_bound, check_phi_power_bound, check_psi_power_bound};
pub use ctable::CTable;
pub use suite::{random_table, route_equivalence_suite};
