//! Exact walk counts for self-avoiding, memory-τ and simple walks.
//!
//! Run with `cargo run --release --example enumerate_walks -- [d] [n]`.

use ddseries::walks::{brute_force_enumerate, enumerate, WalkModel};

fn main() -> ddseries::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("integer argument"));
    let d = args.next().unwrap_or(2);
    let n = args.next().unwrap_or(12);

    for model in [WalkModel::SelfAvoiding, WalkModel::Memory(4), WalkModel::Memory(2), WalkModel::Simple] {
        let census = enumerate(model, d, n)?;
        let counts: Vec<String> = census.counts.iter().map(|c| c.to_string()).collect();
        println!("{model} d={d}: {}", counts.join(" "));
    }

    let small = enumerate(WalkModel::SelfAvoiding, 2, 6)?;
    assert_eq!(small, brute_force_enumerate(WalkModel::SelfAvoiding, 2, 6)?);
    print!("{}", small.to_csv());
    Ok(())
}
