//! Invariants as randomized properties.

use ddseries::connective::{mu_estimates, mu_tau_transfer};
use ddseries::exact::rational::{int, rat, to_f64, ExactRational};
use ddseries::exact::PowerSeries;
use ddseries::resummation::{borel_coefficients_f64, CoefficientSource};
use ddseries::reversion::{alpha_via_iteration, alpha_via_lagrange, alpha_via_lemma, random_table, CTable};
use ddseries::walks::{canonical_classes_in, enumerate, WalkModel};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

mod common;
use common::revert_by_undetermined_coefficients;

fn coefficient() -> impl Strategy<Value = ExactRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn series(order: usize) -> impl Strategy<Value = PowerSeries> {
    proptest::collection::vec(coefficient(), order + 1).prop_map(PowerSeries::new)
}

fn unit_series() -> impl Strategy<Value = PowerSeries> {
    (0usize..=12)
        .prop_flat_map(series)
        .prop_filter("invertible", |s| !s.coeffs()[0].is_zero())
}

fn admissible() -> impl Strategy<Value = PowerSeries> {
    (1usize..=10).prop_flat_map(|order| {
        (coefficient().prop_filter("nonzero", |c| !c.is_zero()), proptest::collection::vec(coefficient(), order - 1))
            .prop_map(|(lead, rest)| {
                let mut c = vec![int(0), lead];
                c.extend(rest);
                PowerSeries::new(c)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_laws((a, b, c) in (0usize..=12).prop_flat_map(|o| (series(o), series(o), series(o)))) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn reciprocal_is_an_involution(a in unit_series()) {
        let r = a.recip().unwrap();
        prop_assert_eq!(&a * &r, PowerSeries::one(a.order()));
        prop_assert_eq!(r.recip().unwrap(), a);
    }

    #[test]
    fn reversion_inverts_composition(f in admissible()) {
        let g = f.revert().unwrap();
        prop_assert_eq!(PowerSeries::compose(&f, &g).unwrap(), PowerSeries::x(f.order()));
        prop_assert_eq!(PowerSeries::compose(&g, &f).unwrap(), PowerSeries::x(f.order()));
        prop_assert_eq!(g.coeffs(), &revert_by_undetermined_coefficients(f.coeffs())[..]);
    }

    #[test]
    fn borel_round_trip(a in (0usize..=12).prop_flat_map(series)) {
        prop_assert_eq!(a.borel_transform().inverse_borel(), a.clone());
        let exact = a.borel_transform().to_f64_coeffs();
        let src = CoefficientSource::synthetic(a.coeffs()[1..].to_vec(), "random");
        let float = borel_coefficients_f64(&src);
        for (n, (x, y)) in exact.iter().zip(&float).enumerate().skip(1) {
            prop_assert!((x - y).abs() <= 1e-15 * x.abs().max(1e-300), "n = {}: {} vs {}", n, x, y);
        }
    }

    #[test]
    fn alpha_routes_agree_and_are_truncation_local(seed in any::<u64>(), max_b in 1usize..=5, n in 1usize..=10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = random_table(&mut rng, max_b);
        let lemma = alpha_via_lemma(&table, n);
        prop_assert_eq!(&alpha_via_iteration(&table, n), &lemma);
        prop_assert_eq!(&alpha_via_lagrange(&table, n).unwrap(), &lemma);
        // Entries with b ≥ n cannot reach α_1..α_n.
        let mut perturbed = CTable::empty(max_b.max(n));
        for ((a, b), v) in table.entries() {
            perturbed.set(a, b, if b >= n { v + int(3) } else { v.clone() }).unwrap();
        }
        for b in n..=max_b.max(n) {
            perturbed.set(2 * b, b, rat(-5, 2)).unwrap();
        }
        prop_assert_eq!(alpha_via_lemma(&perturbed, n), lemma);
    }

    #[test]
    fn nonnegative_tables_give_monotone_nonnegative_alphas(seed in any::<u64>(), max_b in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut table = random_table(&mut rng, max_b);
        let keys: Vec<(usize, usize)> = table.entries().map(|(k, _)| k).collect();
        for &(a, b) in &keys {
            let v = table.get(a, b).abs();
            table.set(a, b, v).unwrap();
        }
        let n = 7;
        let base = alpha_via_lemma(&table, n);
        prop_assert!(base.alpha.iter().all(|x| !x.is_negative()));
        for &(a, b) in &keys {
            let bumped = table.clone().with(a, b, table.get(a, b) + rat(1, 3)).unwrap();
            let up = alpha_via_lemma(&bumped, n);
            for (x, y) in base.alpha.iter().zip(&up.alpha) {
                prop_assert!(y >= x);
            }
        }
    }
}

#[test]
fn walk_sets_are_nested_and_saw_counts_submultiplicative() {
    for d in 1..=3 {
        let n = 9;
        let saw = enumerate(WalkModel::SelfAvoiding, d, n).unwrap();
        let m6 = enumerate(WalkModel::Memory(6), d, n).unwrap();
        let m4 = enumerate(WalkModel::Memory(4), d, n).unwrap();
        let m2 = enumerate(WalkModel::Memory(2), d, n).unwrap();
        let simple = enumerate(WalkModel::Simple, d, n).unwrap();
        for k in 1..=n {
            assert!(saw.count(k) <= m6.count(k));
            assert!(m6.count(k) <= m4.count(k));
            assert!(m4.count(k) <= m2.count(k));
            assert!(m2.count(k) <= simple.count(k));
        }
        for census in [&saw, &m4, &m2] {
            for i in 1..n {
                for j in 1..=n - i {
                    assert!(census.count(i + j) <= &(census.count(i) * census.count(j)));
                }
            }
        }
    }
}

#[test]
fn canonical_counts_ignore_extra_ambient_dimensions() {
    for model in [WalkModel::SelfAvoiding, WalkModel::Memory(4)] {
        for n in 1..=8 {
            let a = canonical_classes_in(model, n, n).unwrap();
            let b = canonical_classes_in(model, n, n + 1).unwrap();
            for k in 1..=n {
                for d in 1..=4 {
                    assert_eq!(a.get(k, d), b.get(k, d));
                }
            }
            assert_eq!(a.census(7), b.census(7));
        }
    }
}

#[test]
fn connective_constant_estimates_are_ordered() {
    let mut previous = 0.0;
    for d in 1..=4 {
        let n = [0, 20, 14, 10, 8][d];
        let est = mu_estimates(&enumerate(WalkModel::SelfAvoiding, d, n).unwrap()).unwrap();
        assert!(est.within_sanity_bounds(), "d = {d}: {}", est.point_estimate);
        assert!(est.below_upper_bounds());
        assert!(est.point_estimate > previous);
        previous = est.point_estimate;
        let mu4 = mu_tau_transfer(d, 4).unwrap().eigenvalue;
        let mu2 = mu_tau_transfer(d, 2).unwrap().eigenvalue;
        assert!(est.point_estimate - est.uncertainty <= mu4 && mu4 <= mu2);
    }
}

#[test]
fn memory_census_ratios_approach_transfer_root() {
    let t = mu_tau_transfer(2, 4).unwrap();
    let counts = t.counts(60);
    let ratio = |n: usize| to_f64(&ExactRational::new(counts[n].1.clone().into(), counts[n - 1].1.clone().into()));
    let errors: Vec<f64> = [10, 20, 30, 40, 50].iter().map(|&n| (ratio(n) - t.eigenvalue).abs()).collect();
    // the eigenvalue itself is only good to the power-iteration tolerance
    let floor = 1e-12 * t.eigenvalue;
    assert!(errors.windows(2).all(|w| w[1] < w[0] || w[1] < floor), "{errors:?}");
    assert!(errors[4] < 1e-9);
}

#[test]
fn geometric_error_does_not_grow_with_pade_order() {
    use ddseries::resummation::borel_sum;
    // Odd diagonal approximants of e^t − 1 carry a real positive pole and are
    // rejected; the comparison runs over the even ones.
    for s in [0.1, 0.25, 0.5] {
        let mut previous = f64::INFINITY;
        for k in (2..=20).step_by(2) {
            let src = CoefficientSource::geometric(2 * k + 1);
            let err = (borel_sum(&src, s, k, k, 1e-12).unwrap().value - s / (1.0 - s)).abs();
            assert!(err <= previous.max(1e-14), "s = {s}, [{k}/{k}]: {err:e} after {previous:e}");
            previous = err;
        }
        assert!(borel_sum(&CoefficientSource::geometric(7), s, 3, 3, 1e-12).is_err());
    }
}
