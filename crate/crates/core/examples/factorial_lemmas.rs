//! Exhaustive checks of the factorial bounds on powers of Σ k! β^k and on
//! the expansion coefficients.
//!
//! Run with `cargo run --example factorial_lemmas`.

use ddseries::exact::rational::int;
use ddseries::reversion::{check_alpha_factorial_bound, check_phi_power_bound, check_psi_power_bound, CTable};

fn main() -> ddseries::Result<()> {
    let phi = check_phi_power_bound(14, 14)?;
    println!(
        "[β^k] φ^n ≤ k!∏(1+(n−1)/j²): {}; ≤ 6^n k!: {}",
        phi.product_bound_holds, phi.six_bound_holds
    );
    let nontrivial: Vec<_> = phi.equality_cases.iter().filter(|(n, k)| *n > 1 && *k > 1).collect();
    println!("equality beyond n = 1 or k ≤ 1: {nontrivial:?}");
    let worst = phi.rows.iter().filter(|r| r.n > 1 && r.k > 2).map(|r| r.tightness).fold(0.0, f64::max);
    println!("largest value/product ratio for n > 1, k > 2: {worst:.4}");

    let psi = check_psi_power_bound(14, 14)?;
    let tightest = psi.rows.iter().max_by(|a, b| a.tightness.total_cmp(&b.tightness)).expect("rows");
    println!(
        "[β^k] ψ^n ≤ 6^k (k−n)!: {}; tightest at n = {}, k = {} ({:.3e})",
        psi.holds, tightest.n, tightest.k, tightest.tightness
    );

    let catalan = CTable::empty(1).with(2, 1, int(1))?;
    let report = check_alpha_factorial_bound(&catalan, &int(1), 12)?;
    println!("|α_n| ≤ 36^n C3^n n! for the Catalan table: {} (max ratio {:.2e})", report.holds, report.max_ratio);
    Ok(())
}
