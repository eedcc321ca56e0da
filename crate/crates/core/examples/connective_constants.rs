//! Connective-constant estimates from exact censuses, finite-memory
//! constants from transfer matrices, and the ordering of critical points.
//!
//! Run with `cargo run --release --example connective_constants`.

use ddseries::connective::{beta_ordering_check, mu_estimates, mu_tau_transfer};
use ddseries::walks::{enumerate, CensusCache, WalkModel};

fn main() -> ddseries::Result<()> {
    let cache = CensusCache::new();
    for d in 2..=6 {
        let n = if d == 2 { 14 } else { 11 };
        let saw = mu_estimates(&cache.census(WalkModel::SelfAvoiding, d, n)?)?;
        let mu4 = mu_tau_transfer(d, 4)?;
        let mu2 = mu_tau_transfer(d, 2)?;
        let order = beta_ordering_check(mu2.eigenvalue, mu4.eigenvalue, &saw);
        println!(
            "d = {d}: mu ≈ {:.5} ± {:.1e} (n ≤ {n}), mu_4 = {:.12}, mu_2 = {}, beta ordering holds: {}",
            saw.point_estimate, saw.uncertainty, mu4.eigenvalue, mu2.eigenvalue, order.holds
        );
    }

    let t = mu_tau_transfer(2, 4)?;
    println!("memory-4 states on Z^2: {:?}", t.states);
    println!("transfer matrix: {:?}", t.matrix);
    println!("characteristic polynomial (constant first): {:?}", t.characteristic_polynomial);
    let census = enumerate(WalkModel::Memory(4), 2, 12)?;
    println!("matrix counts reproduce the census: {}", t.matches_census(&census));
    Ok(())
}
