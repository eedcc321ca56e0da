//! Library results against independently coded oracles.

use ddseries::exact::rational::{int, rat, to_f64, ExactRational};
use ddseries::exact::PowerSeries;
use ddseries::numeric::{integrate, QuadratureOptions};
use ddseries::resummation::{borel_sum, default_pade_order, CoefficientSource};
use ddseries::reversion::{alpha_via_lemma, CTable};
use ddseries::spherical::{kc_direct, SphericalSeries};
use ddseries::connective::mu_tau_transfer;
use ddseries::walks::{brute_force_enumerate, enumerate, WalkModel};
use num_traits::{One, Zero};

mod common;
use common::{alternating_toy_oracle, poly_mul, revert_by_undetermined_coefficients, Poly, composite, gauss_legendre, lattice_green_function_3d};

#[test]
fn reversion_matches_undetermined_coefficients() {
    let cases: Vec<Vec<ExactRational>> = vec![
        vec![int(0), int(1), int(-1), int(0), int(0), int(0), int(0)],
        vec![int(0), rat(2, 3), rat(-1, 5), int(7), rat(1, 2), int(-3), rat(5, 11), int(1)],
        vec![int(0), int(-1), int(0), rat(1, 6), int(0), rat(-1, 120), int(0), rat(1, 5040)],
    ];
    for f in cases {
        let lib = PowerSeries::new(f.clone()).revert().unwrap();
        assert_eq!(lib.coeffs(), &revert_by_undetermined_coefficients(&f)[..]);
    }
}

/// `β = s + Σ c_{a,b} β^a s^{b−a}` solved order by order in `u = β/s`,
/// written against plain coefficient vectors.
fn alpha_by_undetermined_coefficients(entries: &[((usize, usize), ExactRational)], n_max: usize) -> Poly {
    let deg = n_max - 1;
    let mut u = vec![ExactRational::zero(); deg + 1];
    u[0] = ExactRational::one();
    for m in 1..=deg {
        // [s^m] of Σ c s^b u^a only involves u_0..u_{m−1} because b ≥ 1.
        let mut total = ExactRational::zero();
        for ((a, b), c) in entries {
            if *b > m {
                continue;
            }
            let mut power = vec![ExactRational::zero(); deg + 1];
            power[0] = ExactRational::one();
            for _ in 0..*a {
                power = poly_mul(&power, &u, deg);
            }
            total += c * &power[m - b];
        }
        u[m] = total;
    }
    u
}

#[test]
fn alpha_matches_undetermined_coefficients() {
    let table = CTable::empty(3)
        .with(2, 1, rat(1, 2))
        .unwrap()
        .with(3, 2, int(-2))
        .unwrap()
        .with(4, 2, rat(3, 7))
        .unwrap()
        .with(5, 3, int(4))
        .unwrap()
        .with(6, 3, rat(-1, 3))
        .unwrap();
    let entries: Vec<_> = table.entries().map(|(k, v)| (k, v.clone())).collect();
    assert_eq!(alpha_via_lemma(&table, 9).alpha, alpha_by_undetermined_coefficients(&entries, 9));
}

fn catalan(n: u64) -> u64 {
    // C_n = binom(2n, n)/(n+1)
    (0..n).fold(1u64, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

#[test]
fn catalan_table_gives_catalan_numbers() {
    let alpha = alpha_via_lemma(&CTable::empty(1).with(2, 1, int(1)).unwrap(), 15);
    for (n, a) in alpha.alpha.iter().enumerate() {
        assert_eq!(*a, int(catalan(n as u64) as i64), "n = {}", n + 1);
    }
}

#[test]
fn dfs_matches_brute_force() {
    for model in [WalkModel::SelfAvoiding, WalkModel::Memory(2), WalkModel::Memory(4), WalkModel::Memory(6), WalkModel::Simple] {
        for d in 1..=3 {
            let n = if d == 3 { 6 } else { 8 };
            assert_eq!(enumerate(model, d, n).unwrap(), brute_force_enumerate(model, d, n).unwrap(), "{model} d={d}");
        }
    }
}

#[test]
fn kc_three_matches_lattice_integral() {
    let oracle = 0.5 * lattice_green_function_3d();
    let direct = kc_direct(3, 1e-12).unwrap().value;
    assert!((direct - oracle).abs() <= 1e-6 * oracle, "direct {direct}, oracle {oracle}");
}

#[test]
fn quadrature_reproduces_gamma_function() {
    let opts = QuadratureOptions::default();
    for z in [1.5f64, 2.0, 3.7, 6.25] {
        let r = integrate(|t| t.powf(z - 1.0) * (-t).exp(), 0.0, 80.0, &opts).unwrap();
        let exact = statrs::function::gamma::gamma(z);
        assert!((r.value - exact).abs() <= 1e-11 * exact, "z = {z}: {} vs {exact}", r.value);
    }
}

#[test]
fn alternating_toy_matches_series_oracle() {
    let src = CoefficientSource::alternating_factorial(30);
    let m = default_pade_order(&src);
    let r = borel_sum(&src, 1.0, m, m, 1e-12).unwrap();
    let oracle = alternating_toy_oracle();
    assert!((r.value - oracle).abs() <= 1e-8, "{} vs {oracle}", r.value);
    // and the integrand itself, by composite Gauss–Legendre on a long interval
    let rule = gauss_legendre(20);
    let direct = composite(|t| (-t).exp() * t.ln_1p(), 0.0, 60.0, 60, &rule);
    assert!((direct - oracle).abs() <= 1e-12);
}

#[test]
fn inverse_of_g_starts_one_quarter_eighth() {
    let s = SphericalSeries::new(8).unwrap();
    assert_eq!(&s.g_inverse.coeffs()[..4], &[int(0), int(1), rat(1, 4), rat(1, 8)]);
    assert_eq!(s.a()[0], int(1));
    let id = PowerSeries::compose(&s.g, &s.g_inverse).unwrap();
    assert_eq!(id, PowerSeries::x(8));
}

/// Smallest-order linear recurrence `c_{n+k} = Σ r_i c_{n+k−i}` consistent
/// with every term from `start` on, by exact Gaussian elimination.
fn fit_recurrence(c: &[ExactRational], start: usize) -> Option<Vec<ExactRational>> {
    let data = &c[start..];
    for k in 1..=data.len() / 3 {
        // k unknowns from k equations, checked against the rest
        let mut m: Vec<Vec<ExactRational>> = (0..k)
            .map(|row| {
                let mut r: Vec<ExactRational> = (1..=k).map(|i| data[row + k - i].clone()).collect();
                r.push(data[row + k].clone());
                r
            })
            .collect();
        let mut singular = false;
        for col in 0..k {
            let Some(p) = (col..k).find(|&r| !m[r][col].is_zero()) else {
                singular = true;
                break;
            };
            m.swap(col, p);
            let pivot = m[col][col].clone();
            for v in m[col].iter_mut() {
                *v /= &pivot;
            }
            for r in 0..k {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    let pivot_row = m[col].clone();
                    for (v, p) in m[r].iter_mut().zip(&pivot_row) {
                        *v -= &f * p;
                    }
                }
            }
        }
        if singular {
            continue;
        }
        let coeffs: Vec<ExactRational> = m.iter().map(|row| row[k].clone()).collect();
        let holds = (k..data.len()).all(|n| {
            let predicted = (1..=k).fold(ExactRational::zero(), |acc, i| acc + &coeffs[i - 1] * &data[n - i]);
            predicted == data[n]
        });
        if holds {
            return Some(coeffs);
        }
    }
    None
}

#[test]
fn memory_four_root_matches_fitted_recurrence() {
    let census = enumerate(WalkModel::Memory(4), 2, 16).unwrap();
    let values: Vec<ExactRational> = census.counts.iter().map(|c| ExactRational::from_integer(c.clone().into())).collect();
    let r: Vec<f64> = fit_recurrence(&values, 2).expect("a recurrence fits").iter().map(to_f64).collect();
    assert!(r.len() <= 5);
    // dominant root of x^k − Σ r_i x^{k−i} by bisection on [1, 4]
    let p = |x: f64| x.powi(r.len() as i32) - r.iter().enumerate().map(|(i, ri)| ri * x.powi((r.len() - 1 - i) as i32)).sum::<f64>();
    let (mut lo, mut hi) = (2.0, 4.0);
    assert!(p(lo) < 0.0 && p(hi) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if p(mid) < 0.0 { lo = mid } else { hi = mid }
    }
    let transfer = mu_tau_transfer(2, 4).unwrap().eigenvalue;
    assert!((lo - transfer).abs() <= 1e-11 * transfer, "fit {lo}, transfer {transfer}");
}
