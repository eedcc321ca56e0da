//! Simple random walk return counts: the neighbour identity and the two
//! upper bounds on c_{2m}(0).
//!
//! Run with `cargo run --release --example simple_walks`.

use ddseries::walks::{check_simple_walk_bounds, simple_walk_counts};

fn main() -> ddseries::Result<()> {
    for d in 1..=4 {
        let counts = simple_walk_counts(d, 6)?;
        let report = check_simple_walk_bounds(&counts);
        println!("d = {d}: all checks hold = {}", report.holds);
        for row in &report.rows {
            println!(
                "  m = {}: c_2m(0) = {:>12}, 2d·c_(2m-1)(e1) equal: {}, subspace ratio {:.3e}, factorial ratio {:.3e}",
                row.m,
                counts.returns[row.m - 1],
                row.identity,
                row.subspace_ratio,
                row.factorial_ratio
            );
        }
    }
    Ok(())
}
