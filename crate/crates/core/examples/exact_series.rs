//! Exact series arithmetic: the critical point as the reciprocal of the
//! connective-constant expansion, and compositional reversion.
//!
//! Run with `cargo run --example exact_series`.

use ddseries::exact::PowerSeries;

fn main() -> ddseries::Result<()> {
    // s·μ = 1 − s − s² − 3s³ − 16s⁴ − 102s⁵ with s = 1/(2d)
    let s_mu = PowerSeries::from_ints(&[1, -1, -1, -3, -16, -102]);
    let beta_over_s = s_mu.recip()?;
    println!("s*mu       = {s_mu}");
    println!("beta_c / s = {beta_over_s}");

    // f(x) = x − x² has inverse (1 − √(1 − 4t))/2, the Catalan generating function.
    let f = PowerSeries::from_ints(&[0, 1, -1, 0, 0, 0, 0, 0]);
    let g = f.revert()?;
    println!("inverse of x - x^2 = {g}");
    println!("f(g(t))            = {}", PowerSeries::compose(&f, &g)?);

    let log = PowerSeries::from_ints(&[1, 1, 0, 0, 0, 0]).log()?;
    println!("log(1 + x)         = {log}");
    println!("Borel transform    = {}", log.borel_transform());
    Ok(())
}
