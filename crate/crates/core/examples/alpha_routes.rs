//! Expansion coefficients α_n from a table of c_{a,b}, computed by the
//! closed multinomial sum, by fixed-point iteration and by Lagrange–Bürmann.
//!
//! Run with `cargo run --example alpha_routes [table.json]`.

use ddseries::exact::rational::int;
use ddseries::reversion::{alpha, route_equivalence_suite, CTable, Route};

fn main() -> ddseries::Result<()> {
    let table = match std::env::args().nth(1) {
        Some(path) => CTable::load(path.as_ref())?,
        // c_{2,1} = 1 alone gives β = s + β², whose coefficients are Catalan numbers.
        None => CTable::empty(1).with(2, 1, int(1))?,
    };
    println!("table: {}", table.to_json());
    for route in [Route::Lemma, Route::Iteration, Route::Lagrange] {
        let a = alpha(&table, 8, route)?;
        let shown: Vec<String> = a.alpha.iter().map(|q| q.to_string()).collect();
        println!("{route:?}: {}", shown.join(", "));
    }

    let suite = route_equivalence_suite(7, 100, 5, 10);
    println!(
        "random tables: {} cases, routes agree: {}, truncation-local: {}",
        suite.tables, suite.all_agree, suite.all_local
    );
    Ok(())
}
