//! Seeded randomized cross-checks of the three α routes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::alpha::{alpha_via_iteration, alpha_via_lagrange, alpha_via_lemma};
use super::ctable::CTable;
use crate::exact::rational::{rat, ExactRational};

/// Random table with every key of the index set up to `max_b` populated:
/// numerators uniform in `[−9, 9]`, denominators uniform in `[1, 4]`.
pub fn random_table<R: Rng>(rng: &mut R, max_b: usize) -> CTable {
    let mut t = CTable::empty(max_b);
    for b in 1..=max_b {
        for a in b + 1..=2 * b {
            t.set(a, b, random_value(rng)).expect("key lies in the index set");
        }
    }
    t
}

pub fn random_value<R: Rng>(rng: &mut R) -> ExactRational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

#[derive(Clone, Debug, Serialize)]
pub struct RouteCase {
    pub index: usize,
    pub seed: u64,
    pub max_b: usize,
    pub n_max: usize,
    pub routes_agree: bool,
    pub truncation_local: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RouteSuiteReport {
    pub seed: u64,
    pub tables: usize,
    pub cases: Vec<RouteCase>,
    pub all_agree: bool,
    pub all_local: bool,
}

/// Runs `tables` seeded cases. Case `i` uses seed `seed + i`, draws
/// `max_b ∈ [1, max_b]`, `n_max ∈ [1, n_max]`, compares the three routes and
/// checks that perturbing entries with `b ≥ n` leaves `α_1..α_n` unchanged.
pub fn route_equivalence_suite(seed: u64, tables: usize, max_b: usize, n_max: usize) -> RouteSuiteReport {
    let cases: Vec<RouteCase> = (0..tables)
        .into_par_iter()
        .map(|i| {
            let case_seed = seed.wrapping_add(i as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
            let b = rng.gen_range(1..=max_b);
            let n = rng.gen_range(1..=n_max);
            let table = random_table(&mut rng, b);
            let lemma = alpha_via_lemma(&table, n);
            let iteration = alpha_via_iteration(&table, n);
            let lagrange = alpha_via_lagrange(&table, n);
            let routes_agree = matches!(&lagrange, Ok(l) if *l == lemma) && lemma == iteration;
            let truncation_local = truncation_locality_holds(&table, n, &mut rng);
            RouteCase { index: i, seed: case_seed, max_b: b, n_max: n, routes_agree, truncation_local }
        })
        .collect();
    RouteSuiteReport {
        seed,
        tables,
        all_agree: cases.iter().all(|c| c.routes_agree),
        all_local: cases.iter().all(|c| c.truncation_local),
        cases,
    }
}

/// For every `n ≤ n_max`: re-randomizing all entries with `b ≥ n` (and
/// adding fresh ones up to `b = n_max`) leaves `α_1..α_n` unchanged.
pub fn truncation_locality_holds<R: Rng>(table: &CTable, n_max: usize, rng: &mut R) -> bool {
    let base = alpha_via_lemma(table, n_max);
    (1..=n_max).all(|n| {
        let top = table.max_b().max(n_max);
        let mut perturbed = CTable::empty(top);
        for ((a, b), v) in table.entries() {
            perturbed.set(a, b, v.clone()).expect("same key set");
        }
        for b in n..=top {
            for a in b + 1..=2 * b {
                perturbed.set(a, b, random_value(rng)).expect("key in index set");
            }
        }
        let alpha = alpha_via_lemma(&perturbed, n);
        alpha.alpha[..] == base.alpha[..n]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_agrees() {
        let r = route_equivalence_suite(7, 12, 3, 6);
        assert!(r.all_agree && r.all_local);
        assert_eq!(r.cases.len(), 12);
    }

    #[test]
    fn random_tables_are_reproducible() {
        let a = random_table(&mut ChaCha8Rng::seed_from_u64(3), 4);
        let b = random_table(&mut ChaCha8Rng::seed_from_u64(3), 4);
        assert_eq!(a, b);
    }
}
