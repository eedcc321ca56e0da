//! Borel–Padé summation on series with known sums, and on the leading
//! self-avoiding-walk coefficients.
//!
//! Run with `cargo run --release --example borel_toys`.

use ddseries::numeric::{integrate, QuadratureOptions};
use ddseries::resummation::{borel_sum, default_pade_order, partial_sums, CoefficientSource};

fn main() -> ddseries::Result<()> {
    let geometric = CoefficientSource::geometric(41);
    let m = default_pade_order(&geometric);
    for s in [0.1, 0.25, 0.5] {
        let r = borel_sum(&geometric, s, m, m, 1e-12)?;
        println!("geometric s = {s}: {:.15} (exact {:.15})", r.value, s / (1.0 - s));
    }

    let alternating = CoefficientSource::alternating_factorial(30);
    let m = default_pade_order(&alternating);
    let r = borel_sum(&alternating, 1.0, m, m, 1e-12)?;
    let direct = integrate(|t| (-t).exp() * t.ln_1p(), 0.0, 60.0, &QuadratureOptions::default())?;
    println!("alternating factorial s = 1: {:.15} (∫ e^-t ln(1+t) = {:.15})", r.value, direct.value);

    let saw = CoefficientSource::saw_leading();
    println!("SAW partial sums at s = 0.1: {:?}", partial_sums(&saw, 0.1));
    for (m, n) in [(3, 3), (2, 2), (1, 1)] {
        match borel_sum(&saw, 0.1, m, n, 1e-12) {
            Ok(r) => println!("SAW [{m}/{n}]: {}", r.value),
            Err(e) => println!("SAW [{m}/{n}]: {e}"),
        }
    }
    Ok(())
}
