//! Three independent routes from a c-table to the expansion coefficients
//! `α_n` of `β = s[1 + Σ_I c_{a,b} β^a s^{b−a}]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::ctable::CTable;
use crate::error::{Error, Result};
use crate::exact::lagrange::{lagrange_burmann, LbCoeff};
use crate::exact::rational::{format_rational, int, ExactRational, FactorialCache};
use crate::exact::PowerSeries;

/// `α_1, α_2, …, α_order` (stored from index 0 = `α_1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaSeries {
    pub alpha: Vec<ExactRational>,
}

impl AlphaSeries {
    pub fn order(&self) -> usize {
        self.alpha.len()
    }

    /// `α_n`, 1-based.
    pub fn get(&self, n: usize) -> &ExactRational {
        &self.alpha[n - 1]
    }

    pub fn from_ints(values: &[i64]) -> Self {
        AlphaSeries { alpha: values.iter().map(|&v| int(v)).collect() }
    }

    /// `β = Σ α_n s^n` as a power series of order `self.order()`.
    pub fn to_series(&self) -> PowerSeries {
        let mut c = vec![ExactRational::zero()];
        c.extend(self.alpha.iter().cloned());
        PowerSeries::new(c)
    }
}

impl Serialize for AlphaSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            order: usize,
            alpha: Vec<String>,
        }
        Repr { order: self.order(), alpha: self.alpha.iter().map(format_rational).collect() }.serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Lemma,
    Iteration,
    Lagrange,
}

impl std::str::FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemma" => Ok(Route::Lemma),
            "iteration" => Ok(Route::Iteration),
            "lagrange" => Ok(Route::Lagrange),
            other => Err(Error::InvalidArgument(format!("unknown route {other:?}"))),
        }
    }
}

pub fn alpha(c: &CTable, n_max: usize, route: Route) -> Result<AlphaSeries> {
    match route {
        Route::Lemma => Ok(alpha_via_lemma(c, n_max)),
        Route::Iteration => Ok(alpha_via_iteration(c, n_max)),
        Route::Lagrange => alpha_via_lagrange(c, n_max),
    }
}

/// Closed multinomial sum over
/// `S_n = {(n_{a,b}) : n = 1 + Σ b·n_{a,b}}`:
///
/// `α_n = Σ_{S_n} [Σ a·n_{a,b}]! / ([∏ n_{a,b}!] [1 + Σ (a−1)·n_{a,b}]!) · ∏ c_{a,b}^{n_{a,b}}`.
pub fn alpha_via_lemma(c: &CTable, n_max: usize) -> AlphaSeries {
    assert!(n_max >= 1, "n_max must be at least 1");
    let mut fac = FactorialCache::new();
    fac.get(2 * n_max);
    let mut alpha = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let entries = c.entries_up_to_b(n - 1);
        let mut total = ExactRational::zero();
        let mut state = LemmaState {
            entries: &entries,
            fac: &mut fac,
            sum_a: 0,
            sum_a_minus_1: 0,
            mult_fact: BigInt::one(),
            product: ExactRational::one(),
        };
        state.walk(0, n - 1, &mut total);
        alpha.push(total);
    }
    AlphaSeries { alpha }
}

struct LemmaState<'a> {
    entries: &'a [((usize, usize), ExactRational)],
    fac: &'a mut FactorialCache,
    sum_a: usize,
    sum_a_minus_1: usize,
    mult_fact: BigInt,
    product: ExactRational,
}

impl LemmaState<'_> {
    /// Lexicographic walk over multiplicities of `entries[i..]` with the
    /// remaining `b`-budget.
    fn walk(&mut self, i: usize, budget: usize, total: &mut ExactRational) {
        if budget == 0 {
            let num = BigInt::from(self.fac.get(self.sum_a).clone());
            let den = &self.mult_fact * BigInt::from(self.fac.get(1 + self.sum_a_minus_1).clone());
            *total += &self.product * ExactRational::new(num, den);
            return;
        }
        if i == self.entries.len() {
            return;
        }
        let ((a, b), ref value) = self.entries[i];
        let saved = (
            self.sum_a,
            self.sum_a_minus_1,
            self.mult_fact.clone(),
            self.product.clone(),
        );
        let mut mult = 0usize;
        let mut remaining = budget;
        loop {
            self.walk(i + 1, remaining, total);
            if remaining < b {
                break;
            }
            remaining -= b;
            mult += 1;
            self.sum_a += a;
            self.sum_a_minus_1 += a - 1;
            self.mult_fact *= BigInt::from(mult);
            self.product *= value;
        }
        (self.sum_a, self.sum_a_minus_1, self.mult_fact, self.product) = saved;
    }
}

/// Fixed-point iteration of `β ← s[1 + Σ_I c_{a,b} β^a s^{b−a}]` from `β = 0`.
///
/// Carried out on `u = β/s`, which satisfies `u ← 1 + Σ_I c_{a,b} s^b u^a`
/// and has no negative powers of `s`. Each pass fixes at least one more
/// coefficient, so the loop stops within `n_max + 1` passes.
pub fn alpha_via_iteration(c: &CTable, n_max: usize) -> AlphaSeries {
    let (alpha, _) = alpha_via_iteration_traced(c, n_max);
    alpha
}

/// As [`alpha_via_iteration`], also returning the iterates `β^{(1)}, β^{(2)}, …`.
pub fn alpha_via_iteration_traced(c: &CTable, n_max: usize) -> (AlphaSeries, Vec<AlphaSeries>) {
    assert!(n_max >= 1, "n_max must be at least 1");
    let order = n_max - 1;
    let entries = c.entries_up_to_b(order);
    let max_a = entries.iter().map(|((a, _), _)| *a).max().unwrap_or(0);
    let mut u = PowerSeries::zero(order);
    let mut trace = Vec::new();
    for _ in 0..=n_max + 1 {
        let mut powers = Vec::with_capacity(max_a + 1);
        powers.push(PowerSeries::one(order));
        for a in 1..=max_a {
            let next = powers[a - 1].mul(&u);
            powers.push(next);
        }
        let mut next = PowerSeries::one(order);
        for ((a, b), value) in &entries {
            let term = shift(&powers[*a], *b).scale(value);
            next = &next + &term;
        }
        trace.push(AlphaSeries { alpha: next.coeffs().to_vec() });
        if next == u {
            return (AlphaSeries { alpha: next.into_coeffs() }, trace);
        }
        u = next;
    }
    unreachable!("iteration gains one order per pass")
}

/// Multiplies by `s^b`, keeping the order.
fn shift(p: &PowerSeries, b: usize) -> PowerSeries {
    let order = p.order();
    let mut c = vec![ExactRational::zero(); b.min(order + 1)];
    c.extend(p.coeffs().iter().take(order + 1 - c.len()).cloned());
    PowerSeries::new(c)
}

/// Laurent polynomial in `s` with exact coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent(BTreeMap<i64, ExactRational>);

impl Laurent {
    pub fn monomial(power: i64, c: ExactRational) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(power, c);
        }
        Laurent(m)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &ExactRational)> {
        self.0.iter().map(|(&p, c)| (p, c))
    }
}

impl LbCoeff for Laurent {
    fn additive_identity() -> Self {
        Laurent(BTreeMap::new())
    }
    fn vanishes(&self) -> bool {
        self.0.is_empty()
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = BTreeMap::new();
        for (p, a) in &self.0 {
            for (q, b) in &other.0 {
                let slot = out.entry(p + q).or_insert_with(ExactRational::zero);
                *slot += a * b;
            }
        }
        out.retain(|_, v: &mut ExactRational| !v.is_zero());
        Laurent(out)
    }
    fn accumulate(&mut self, other: &Self) {
        for (p, b) in &other.0 {
            let slot = self.0.entry(*p).or_insert_with(ExactRational::zero);
            *slot += b;
            if slot.is_zero() {
                self.0.remove(p);
            }
        }
    }
    fn divide_by(&self, k: u64) -> Self {
        let k = int(k as i64);
        Laurent(self.0.iter().map(|(&p, c)| (p, c / &k)).collect())
    }
}

/// Lagrange–Bürmann route: `β/φ(β) = s` with
/// `φ(β) = 1 + Σ_I c_{a,b} β^a s^{b−a}` (coefficients Laurent in `s`), so
/// `β = Σ_k (s^k/k)[β^{k−1}]φ^k`.
///
/// Terms are graded by total degree (β-power plus s-power), which equals
/// `Σ b·n_{a,b} ≥ 0` and never decreases under multiplication; anything of
/// total degree above `n_max − 1` cannot reach `s^{n_max}` and is pruned.
pub fn alpha_via_lagrange(c: &CTable, n_max: usize) -> Result<AlphaSeries> {
    assert!(n_max >= 1, "n_max must be at least 1");
    let terms = 2 * n_max - 1;
    let mut phi: Vec<Laurent> = vec![Laurent::additive_identity(); terms];
    phi[0] = Laurent::monomial(0, int(1));
    for ((a, b), value) in c.entries_up_to_b(n_max - 1) {
        if a < terms {
            phi[a].accumulate(&Laurent::monomial(b as i64 - a as i64, value));
        }
    }
    let cap = n_max as i64 - 1;
    let r = lagrange_burmann(&phi, terms, |coef: &mut Laurent, j| {
        coef.0.retain(|&p, _| j as i64 + p <= cap);
    });
    let mut by_power: BTreeMap<i64, ExactRational> = BTreeMap::new();
    for (k, rk) in r.iter().enumerate() {
        let k = k as i64 + 1;
        for (p, coef) in rk.terms() {
            let slot = by_power.entry(p + k).or_insert_with(ExactRational::zero);
            *slot += coef;
        }
    }
    let mut alpha = vec![ExactRational::zero(); n_max];
    for (power, coef) in by_power {
        if coef.is_zero() {
            continue;
        }
        if power < 1 {
            return Err(Error::NegativePowerSurvived { n: n_max, power });
        }
        if power as usize <= n_max {
            alpha[power as usize - 1] = coef;
        }
    }
    Ok(AlphaSeries { alpha })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn catalan_table() -> CTable {
        CTable::empty(1).with(2, 1, int(1)).unwrap()
    }

    fn all_routes(c: &CTable, n: usize) -> [AlphaSeries; 3] {
        [
            alpha_via_lemma(c, n),
            alpha_via_iteration(c, n),
            alpha_via_lagrange(c, n).unwrap(),
        ]
    }

    #[test]
    fn empty_table_gives_bare_s() {
        for a in all_routes(&CTable::empty(3), 6) {
            assert_eq!(a, AlphaSeries::from_ints(&[1, 0, 0, 0, 0, 0]));
        }
    }

    #[test]
    fn catalan_table_gives_catalan_numbers() {
        for a in all_routes(&catalan_table(), 6) {
            assert_eq!(a, AlphaSeries::from_ints(&[1, 1, 2, 5, 14, 42]));
        }
    }

    #[test]
    fn third_coefficient_matches_display() {
        let t = CTable::empty(2)
            .with(2, 1, int(1))
            .unwrap()
            .with(3, 2, int(1))
            .unwrap()
            .with(4, 2, int(1))
            .unwrap();
        for a in all_routes(&t, 3) {
            assert_eq!(a.get(3), &int(4));
        }
        // symbolic shape 2c21^2 + c32 + c42 with distinct values
        let t = CTable::empty(2)
            .with(2, 1, rat(1, 3))
            .unwrap()
            .with(3, 2, int(5))
            .unwrap()
            .with(4, 2, int(-7))
            .unwrap();
        let want = int(2) * rat(1, 9) + int(5) - int(7);
        for a in all_routes(&t, 3) {
            assert_eq!(a.get(2), &rat(1, 3));
            assert_eq!(a.get(3), &want);
        }
    }

    #[test]
    fn iteration_gains_an_order_per_pass() {
        let (_, trace) = alpha_via_iteration_traced(&catalan_table(), 6);
        // β^{(1)} = s, β^{(2)} = s + s² (+ higher junk), …
        assert_eq!(trace[0].alpha[0], int(1));
        assert_eq!(&trace[1].alpha[..2], &[int(1), int(1)]);
        assert_eq!(&trace[2].alpha[..3], &[int(1), int(1), int(2)]);
        assert!(trace.len() <= 7);
    }

    #[test]
    fn first_three_against_display_with_only_c21() {
        let a = alpha_via_iteration(&catalan_table(), 3);
        assert_eq!(a, AlphaSeries::from_ints(&[1, 1, 2]));
    }
}
