//! Walk counts as polynomials in the dimension, from canonical classes of
//! walks modulo signed axis permutations.
//!
//! Run with `cargo run --release --example dimensional_polynomials`.

use ddseries::walks::{canonical_classes, WalkModel};
use num_traits::Zero;

fn main() -> ddseries::Result<()> {
    let table = canonical_classes(WalkModel::SelfAvoiding, 9)?;
    for n in 1..=table.n_max {
        let p = table.dimensional_polynomial(n)?;
        let terms: Vec<String> = p
            .to_monomial()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| format!("{c}·(2d)^{m}"))
            .collect();
        println!("c_{n}(d) = {}", terms.join(" + "));
    }
    for d in [2, 3, 10, 100] {
        println!("c_9({d}) = {}", table.census(d).count(9));
    }
    Ok(())
}
