//! Series and enumeration tools for 1/(2d) expansions of lattice walk models.
//!
//! * [`exact`]: exact rationals, truncated power series, Lagrange–Bürmann reversion.
//! * [`reversion`]: expansion coefficients from a c-table by three routes, and
//!   exhaustive checks of the factorial lemmas.
//! * [`walks`]: self-avoiding, memory-τ and simple walk enumeration.
//! * [`connective`]: connective-constant estimates, transfer matrices and the
//!   remainder harness for the expansion of `β_c`.
//! * [`spherical`]: the exactly solvable spherical-model example.
//! * [`resummation`]: floating-point Borel–Padé summation.
//! * [`store`]: run manifests and the on-disk cache.

pub mod cli;
pub mod connective;
pub mod error;
pub mod exact;
pub mod numeric;
pub mod resummation;
pub mod reversion;
pub mod spherical;
pub mod store;
pub mod walks;

pub use error::{Error, Result};
