//! Exact lattice walk counts on `Z^d`.

pub mod brute;
pub mod cache;
pub mod canonical;
mod decimal;
pub mod enumerate;
pub mod model;
pub mod simple;
mod site;

pub use brute::brute_force_enumerate;
pub use cache::CensusCache;
pub use canonical::{canonical_classes, canonical_classes_in, DimTable};
pub use enumerate::{enumerate, enumerate_with, EnumerateOptions};
pub use model::{Tau, WalkCensus, WalkModel};
pub use simple::{check_simple_walk_bounds, simple_walk_counts, SimpleBoundReport, SimpleWalkCounts};
