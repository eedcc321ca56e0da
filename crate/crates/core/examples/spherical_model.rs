//! The spherical model: exact coefficients of the inverse of x − log I0(x),
//! their sign runs, and K_c(d) by direct quadrature, by Borel summation and
//! by truncating the divergent asymptotic series.
//!
//! Run with `cargo run --release --example spherical_model -- [order]`.

use ddseries::spherical::{kc_result, sign_runs, SphericalSeries};

fn main() -> ddseries::Result<()> {
    let order = std::env::args().nth(1).map_or(60, |a| a.parse().expect("integer order"));
    let series = SphericalSeries::new(order)?;
    let a = series.a();
    println!("a_1..a_4 = {}, {}, {}, {}", a[0], a[1], a[2], a[3]);
    println!("sign runs up to order {order}: {:?}", sign_runs(a)?.lengths());

    for d in [3, 5, 10] {
        let r = kc_result(d, a, (10, 10), 1e-12)?;
        println!(
            "d = {d}: direct {:.15}, Borel {:.15}, Padé {}, best truncation N = {} ({:.15})",
            r.direct.value,
            r.borel_inverse_function.value,
            r.borel_pade.map_or_else(|| r.pade_failure.clone().unwrap_or_default(), |p| format!("{:.12}", p.value)),
            r.optimal_truncation,
            r.asymptotic_partials[r.optimal_truncation - 1],
        );
    }
    Ok(())
}
