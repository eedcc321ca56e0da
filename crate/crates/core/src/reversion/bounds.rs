//! Exhaustive checks of the factorial bounds on `α_n` and on powers of the
//! factorial generating functions `φ(β) = Σ_{k≥0} k! β^k` and
//! `ψ(β) = Σ_{k≥1} k! β^k`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::alpha::alpha_via_lemma;
use super::ctable::CTable;
use crate::error::{Error, Result};
use crate::exact::rational::{factorial, format_rational, int, to_f64, ExactRational};

/// Largest `k`/`n` accepted by the exhaustive power checks.
pub const EXHAUSTIVE_LIMIT: usize = 14;

#[derive(Clone, Debug, Serialize)]
pub struct AlphaBoundRow {
    pub n: usize,
    pub alpha: String,
    pub bound: String,
    pub ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaBoundReport {
    pub c3: String,
    pub rows: Vec<AlphaBoundRow>,
    pub max_ratio: f64,
    pub holds: bool,
}

fn pow_rat(base: &ExactRational, e: usize) -> ExactRational {
    (0..e).fold(ExactRational::one(), |acc, _| acc * base)
}

fn big(n: BigUint) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n))
}

/// Checks `|α_n| ≤ 6^{2n} C3^n n!` for `n ≤ n_max`, after confirming the
/// table satisfies `c_b ≤ C3^b b!` for every `b ≤ max_b`.
pub fn check_alpha_factorial_bound(
    c: &CTable,
    c3: &ExactRational,
    n_max: usize,
) -> Result<AlphaBoundReport> {
    for b in 1..=c.max_b() {
        let row = c.row_sum(b);
        let bound = pow_rat(c3, b) * big(factorial(b));
        if row > bound {
            return Err(Error::RowSumBound {
                b,
                row_sum: format_rational(&row),
                bound: format_rational(&bound),
            });
        }
    }
    let alpha = alpha_via_lemma(c, n_max);
    let mut rows = Vec::with_capacity(n_max);
    let mut holds = true;
    let mut max_ratio = 0.0f64;
    for n in 1..=n_max {
        let a = alpha.get(n);
        let bound = pow_rat(&int(36), n) * pow_rat(c3, n) * big(factorial(n));
        let ratio = a.abs() / &bound;
        holds &= ratio <= ExactRational::one();
        let r = to_f64(&ratio);
        max_ratio = max_ratio.max(r);
        rows.push(AlphaBoundRow {
            n,
            alpha: format_rational(a),
            bound: format_rational(&bound),
            ratio: r,
        });
    }
    Ok(AlphaBoundReport { c3: format_rational(c3), rows, max_ratio, holds })
}

/// `[β^k] f^n` for `k ≤ k_max`, by repeated truncated convolution.
pub fn power_coefficients(base: &[BigUint], n: usize, k_max: usize) -> Vec<BigUint> {
    let mut acc = vec![BigUint::zero(); k_max + 1];
    acc[0] = BigUint::one();
    for _ in 0..n {
        let mut next = vec![BigUint::zero(); k_max + 1];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in base.iter().enumerate().take(k_max + 1 - i) {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}

fn factorial_series(k_max: usize, skip_constant: bool) -> Vec<BigUint> {
    (0..=k_max)
        .map(|k| if skip_constant && k == 0 { BigUint::zero() } else { factorial(k) })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiBoundRow {
    pub n: usize,
    pub k: usize,
    pub value: String,
    pub product_bound: String,
    pub six_bound: String,
    /// `value / product_bound`
    pub tightness: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiBoundReport {
    pub k_max: usize,
    pub n_max: usize,
    pub rows: Vec<PhiBoundRow>,
    /// `(n, k)` pairs where the product bound is attained exactly.
    pub equality_cases: Vec<(usize, usize)>,
    pub product_bound_holds: bool,
    pub six_bound_holds: bool,
}

impl PhiBoundReport {
    pub fn holds(&self) -> bool {
        self.product_bound_holds && self.six_bound_holds
    }
}

/// Exhausts `[β^k] φ^n ≤ k! ∏_{j=1}^{k}(1 + (n−1)/j²) ≤ 6^n k!` for
/// `1 ≤ n ≤ n_max`, `0 ≤ k ≤ k_max`.
pub fn check_phi_power_bound(k_max: usize, n_max: usize) -> Result<PhiBoundReport> {
    if k_max > EXHAUSTIVE_LIMIT || n_max > EXHAUSTIVE_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "k_max and n_max must be at most {EXHAUSTIVE_LIMIT}"
        )));
    }
    let phi = factorial_series(k_max, false);
    let mut rows = Vec::new();
    let mut equality_cases = Vec::new();
    let (mut product_ok, mut six_ok) = (true, true);
    for n in 1..=n_max {
        let coeffs = power_coefficients(&phi, n, k_max);
        for (k, value) in coeffs.into_iter().enumerate() {
            let product = (1..=k)
                .map(|j| int(1) + ExactRational::new(BigInt::from(n - 1), BigInt::from(j * j)))
                .fold(ExactRational::one(), |acc, f| acc * f);
            let product_bound = big(factorial(k)) * product;
            let six_bound = BigUint::from(6u32).pow(n as u32) * factorial(k);
            let v = big(value.clone());
            product_ok &= v <= product_bound;
            six_ok &= product_bound <= big(six_bound.clone());
            if v == product_bound {
                equality_cases.push((n, k));
            }
            rows.push(PhiBoundRow {
                n,
                k,
                value: value.to_string(),
                product_bound: format_rational(&product_bound),
                six_bound: six_bound.to_string(),
                tightness: to_f64(&(v / &product_bound)),
            });
        }
    }
    Ok(PhiBoundReport {
        k_max,
        n_max,
        rows,
        equality_cases,
        product_bound_holds: product_ok,
        six_bound_holds: six_ok,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiBoundRow {
    pub n: usize,
    pub k: usize,
    pub value: String,
    pub bound: String,
    pub tightness: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiBoundReport {
    pub k_max: usize,
    pub n_max: usize,
    pub rows: Vec<PsiBoundRow>,
    pub holds: bool,
}

/// Exhausts `[β^k] ψ^n ≤ 6^k (k−n)!` for `1 ≤ n ≤ k ≤ k_max`, `n ≤ n_max`.
pub fn check_psi_power_bound(k_max: usize, n_max: usize) -> Result<PsiBoundReport> {
    if k_max > EXHAUSTIVE_LIMIT || n_max > EXHAUSTIVE_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "k_max and n_max must be at most {EXHAUSTIVE_LIMIT}"
        )));
    }
    let psi = factorial_series(k_max, true);
    let mut rows = Vec::new();
    let mut holds = true;
    for n in 1..=n_max.min(k_max) {
        let coeffs = power_coefficients(&psi, n, k_max);
        for (k, value) in coeffs.iter().enumerate().skip(n) {
            let bound = BigUint::from(6u32).pow(k as u32) * factorial(k - n);
            holds &= *value <= bound;
            rows.push(PsiBoundRow {
                n,
                k,
                value: value.to_string(),
                bound: bound.to_string(),
                tightness: to_f64(&(big(value.clone()) / big(bound.clone()))),
            });
        }
    }
    Ok(PsiBoundReport { k_max, n_max, rows, holds })
}
