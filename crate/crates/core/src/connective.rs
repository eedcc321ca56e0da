//! Connective constants from censuses and transfer matrices, the ordering
//! of critical points across memory lengths, and the remainder harness for
//! the `1/(2d)` expansion of `β_c`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, to_f64, ExactRational};
use crate::walks::{WalkCensus, WalkModel};

#[derive(Clone, Debug, Serialize)]
pub struct MuEstimate {
    pub d: usize,
    pub model: WalkModel,
    pub point_estimate: f64,
    /// `c_n^{1/n}` for `n = 1..`; each bounds `μ` from above.
    pub rigorous_upper_bounds: Vec<f64>,
    pub lower_estimate_method: String,
    pub uncertainty: f64,
    /// The accelerated sequence whose last entry is the point estimate.
    pub accelerated: Vec<f64>,
}

impl MuEstimate {
    pub fn within_sanity_bounds(&self) -> bool {
        let d = self.d as f64;
        self.point_estimate >= d - self.uncertainty && self.point_estimate <= 2.0 * d + self.uncertainty
    }

    pub fn below_upper_bounds(&self) -> bool {
        self.rigorous_upper_bounds.iter().all(|&b| b >= self.point_estimate - self.uncertainty)
    }

    /// `1/μ̂` and its propagated uncertainty.
    pub fn beta(&self) -> (f64, f64) {
        let m = self.point_estimate;
        (1.0 / m, self.uncertainty / (m * m))
    }
}

fn big_to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

fn aitken(x: &[f64]) -> Vec<f64> {
    x.windows(3)
        .map(|w| {
            let den = w[2] - 2.0 * w[1] + w[0];
            if den.abs() <= 1e-15 * w[2].abs() {
                w[2]
            } else {
                w[2] - (w[2] - w[1]).powi(2) / den
            }
        })
        .collect()
}

/// Ratios `r_n = c_n/c_{n−1}` are first corrected for the leading `1/n`
/// term by the linear intercepts `n·r_n − (n−1)·r_{n−1}`, then accelerated
/// by one level of Aitken's Δ². The uncertainty is the spread of the last
/// three accelerated values.
pub fn mu_estimates(census: &WalkCensus) -> Result<MuEstimate> {
    let c = &census.counts;
    if c.len() < 6 {
        return Err(Error::InvalidArgument(format!(
            "need at least 6 counts for a connective-constant estimate, have {}",
            c.len()
        )));
    }
    let upper: Vec<f64> = c.iter().enumerate().map(|(i, v)| big_to_f64(v).powf(1.0 / (i + 1) as f64)).collect();
    // r[k] = c_{k+2}/c_{k+1}
    let ratios: Vec<f64> = c
        .windows(2)
        .map(|w| to_f64(&ExactRational::new(BigInt::from(w[1].clone()), BigInt::from(w[0].clone()))))
        .collect();
    let intercepts: Vec<f64> = ratios
        .windows(2)
        .enumerate()
        .map(|(k, w)| {
            let n = (k + 3) as f64;
            n * w[1] - (n - 1.0) * w[0]
        })
        .collect();
    let accelerated = aitken(&intercepts);
    let tail = &accelerated[accelerated.len().saturating_sub(3)..];
    let hi = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = tail.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(MuEstimate {
        d: census.d,
        model: census.model,
        point_estimate: *accelerated.last().expect("at least two accelerated values"),
        rigorous_upper_bounds: upper,
        lower_estimate_method: "linear-intercept ratios, one level of Aitken delta-squared".into(),
        uncertainty: hi - lo,
        accelerated,
    })
}

/// Steps are `±(axis + 1)`.
type Step = i8;

fn canonical(steps: &[Step]) -> Vec<Step> {
    // (original axis, new axis, sign of first use)
    let mut relabel: Vec<(i8, i8, i8)> = Vec::new();
    steps
        .iter()
        .map(|&s| {
            let axis = s.abs();
            let (_, label, first) = match relabel.iter().find(|r| r.0 == axis) {
                Some(&r) => r,
                None => {
                    let r = (axis, relabel.len() as i8 + 1, s.signum());
                    relabel.push(r);
                    r
                }
            };
            label * s.signum() * first
        })
        .collect()
}

/// True if appending `next` keeps every one of the last `tau` sites distinct
/// from the new one: no suffix of length `1..=tau` may sum to zero.
fn memory_allows(history: &[Step], next: Step, tau: usize, d: usize) -> bool {
    let mut sum = vec![0i32; d];
    let add = |s: Step, sum: &mut Vec<i32>| sum[(s.abs() - 1) as usize] += s.signum() as i32;
    add(next, &mut sum);
    for (j, &s) in history.iter().rev().enumerate() {
        if j + 2 > tau {
            break;
        }
        add(s, &mut sum);
        if sum.iter().all(|&v| v == 0) {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferResult {
    pub d: usize,
    pub tau: usize,
    /// Canonical shapes of the last `τ−1` steps.
    pub states: Vec<Vec<Step>>,
    /// `matrix[i][j]`: moves taking state `i` to state `j`.
    pub matrix: Vec<Vec<u64>>,
    /// Walks of length `τ−1` in each state.
    pub initial: Vec<u64>,
    /// Monic characteristic polynomial, constant term first.
    pub characteristic_polynomial: Vec<String>,
    pub eigenvalue: f64,
    pub iterations: usize,
}

impl TransferResult {
    /// `c_n` for `n = τ−1..=n_max` from the matrix, exactly.
    pub fn counts(&self, n_max: usize) -> Vec<(usize, BigUint)> {
        let mut v: Vec<BigUint> = self.initial.iter().map(|&x| BigUint::from(x)).collect();
        let mut out = Vec::new();
        for n in self.tau - 1..=n_max {
            out.push((n, v.iter().sum()));
            let mut next = vec![BigUint::zero(); v.len()];
            for (i, vi) in v.iter().enumerate() {
                for (j, &m) in self.matrix[i].iter().enumerate() {
                    if m != 0 {
                        next[j] += vi * m;
                    }
                }
            }
            v = next;
        }
        out
    }

    /// Matrix counts agree with a census wherever both are defined.
    pub fn matches_census(&self, census: &WalkCensus) -> bool {
        self.counts(census.max_length())
            .iter()
            .filter(|(n, _)| *n >= 1)
            .all(|(n, c)| census.count(*n) == c)
    }
}

const POWER_TOL: f64 = 1e-12;
const POWER_MAX_ITER: usize = 100_000;

/// Transfer system for memory-`τ` walks on `Z^d`, reduced by signed axis
/// permutations, and its Perron root by power iteration.
pub fn mu_tau_transfer(d: usize, tau: usize) -> Result<TransferResult> {
    if d == 0 || !(tau == 2 || tau == 4) {
        return Err(Error::InvalidArgument(format!("transfer matrices need d >= 1 and tau in {{2, 4}}, got d = {d}, tau = {tau}")));
    }
    let width = tau - 1;
    let all_steps: Vec<Step> = (1..=d as i8).flat_map(|a| [a, -a]).collect();

    // Every valid walk of `width` steps, grouped by canonical shape.
    let mut initial: BTreeMap<Vec<Step>, u64> = BTreeMap::new();
    let mut stack: Vec<Vec<Step>> = vec![vec![]];
    while let Some(w) = stack.pop() {
        if w.len() == width {
            *initial.entry(canonical(&w)).or_default() += 1;
            continue;
        }
        for &s in &all_steps {
            if memory_allows(&w, s, tau, d) {
                let mut n = w.clone();
                n.push(s);
                stack.push(n);
            }
        }
    }
    let states: Vec<Vec<Step>> = initial.keys().cloned().collect();
    let index: BTreeMap<&Vec<Step>, usize> = states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut matrix = vec![vec![0u64; states.len()]; states.len()];
    for (i, st) in states.iter().enumerate() {
        for &s in &all_steps {
            if memory_allows(st, s, tau, d) {
                let mut next: Vec<Step> = st[1..].to_vec();
                next.push(s);
                let j = index[&canonical(&next)];
                matrix[i][j] += 1;
            }
        }
    }
    let (eigenvalue, iterations) = perron_root(&matrix)?;
    Ok(TransferResult {
        d,
        tau,
        initial: states.iter().map(|s| initial[s]).collect(),
        characteristic_polynomial: characteristic_polynomial(&matrix).iter().map(format_rational).collect(),
        states,
        matrix,
        eigenvalue,
        iterations,
    })
}

fn perron_root(m: &[Vec<u64>]) -> Result<(f64, usize)> {
    let k = m.len();
    let mut v = vec![1.0 / k as f64; k];
    let mut lambda = 0.0;
    let mut trace = Vec::new();
    for it in 1..=POWER_MAX_ITER {
        let mut w = vec![0.0; k];
        for (i, row) in m.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                w[j] += v[i] * x as f64;
            }
        }
        let norm: f64 = w.iter().sum();
        w.iter_mut().for_each(|x| *x /= norm);
        let change = v.iter().zip(&w).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let lambda_change = (norm - lambda).abs() / norm;
        lambda = norm;
        v = w;
        if trace.len() < 64 {
            trace.push(lambda);
        }
        if change <= POWER_TOL && lambda_change <= POWER_TOL {
            return Ok((lambda, it));
        }
        if it == POWER_MAX_ITER {
            return Err(Error::NoConvergence { iterations: it, last_change: lambda_change, trace });
        }
    }
    unreachable!()
}

/// Faddeev–LeVerrier, exact.
fn characteristic_polynomial(m: &[Vec<u64>]) -> Vec<ExactRational> {
    let k = m.len();
    let a: Vec<Vec<ExactRational>> =
        m.iter().map(|r| r.iter().map(|&x| ExactRational::from_integer(BigInt::from(x))).collect()).collect();
    let mut coeffs = vec![ExactRational::zero(); k + 1];
    coeffs[k] = ExactRational::from_integer(1.into());
    let mut mk = vec![vec![ExactRational::zero(); k]; k];
    for i in 1..=k {
        // M_i = A·M_{i−1} + c_{k−i+1}·I
        let mut next = vec![vec![ExactRational::zero(); k]; k];
        for r in 0..k {
            for c in 0..k {
                let mut acc = ExactRational::zero();
                for t in 0..k {
                    if !a[r][t].is_zero() && !mk[t][c].is_zero() {
                        acc += &a[r][t] * &mk[t][c];
                    }
                }
                next[r][c] = acc;
            }
            next[r][r] += &coeffs[k - i + 1];
        }
        mk = next;
        let mut trace = ExactRational::zero();
        for r in 0..k {
            for t in 0..k {
                trace += &a[r][t] * &mk[t][r];
            }
        }
        coeffs[k - i] = -trace / ExactRational::from_integer(BigInt::from(i));
    }
    coeffs
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderingReport {
    pub d: usize,
    pub beta_2: f64,
    pub beta_4: f64,
    pub beta_hat: f64,
    pub beta_hat_uncertainty: f64,
    pub holds: bool,
}

/// `β_2 ≤ β_4 ≤ β̂_c`, each critical point being `1/μ`; the last inequality
/// is allowed the estimate's uncertainty.
pub fn beta_ordering_check(mu_2: f64, mu_4: f64, saw: &MuEstimate) -> OrderingReport {
    let (beta_hat, du) = saw.beta();
    let (beta_2, beta_4) = (1.0 / mu_2, 1.0 / mu_4);
    OrderingReport {
        d: saw.d,
        beta_2,
        beta_4,
        beta_hat,
        beta_hat_uncertainty: du,
        holds: beta_2 <= beta_4 * (1.0 + 1e-12) && beta_4 <= beta_hat + du,
    }
}

pub const EMPIRICAL_C1_CAP: f64 = 100.0;

#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Report {
    pub d: u32,
    pub s: f64,
    pub alphas: Vec<String>,
    pub beta_hat: f64,
    pub beta_source: String,
    /// `R_M = |β̂ − Σ_{n<M} α_n s^n| / (s^M M!)` for `M = 1..=M_max`.
    pub remainders: Vec<f64>,
    pub empirical_c1: f64,
    pub all_finite: bool,
    pub within_cap: bool,
}

/// Remainders of the expansion at `s = 1/(2d)` against an estimate `β̂`.
/// `β̂` must lie in `[s, 2s]`.
pub fn theorem1_check(
    alphas: &[ExactRational],
    beta_hat: f64,
    beta_source: &str,
    d: u32,
    m_max: usize,
) -> Result<Theorem1Report> {
    let s = 1.0 / (2.0 * d as f64);
    if m_max == 0 || alphas.len() < m_max {
        return Err(Error::InvalidArgument(format!(
            "M_max = {m_max} needs that many coefficients, have {}",
            alphas.len()
        )));
    }
    if !(beta_hat >= s && beta_hat <= 2.0 * s) {
        return Err(Error::InvalidArgument(format!(
            "beta estimate {beta_hat} lies outside [s, 2s] = [{s}, {}]",
            2.0 * s
        )));
    }
    let s_exact = ExactRational::new(1.into(), BigInt::from(2 * d));
    let beta_exact = ExactRational::from_float(beta_hat).expect("finite");
    let mut partial = ExactRational::zero();
    let mut power = ExactRational::from_integer(1.into());
    let mut factorial = 1.0f64;
    let mut remainders = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        // partial = Σ_{n<m} α_n s^n, power = s^{m−1} before the update
        power = &power * &s_exact;
        factorial *= m as f64;
        let diff = to_f64(&(&beta_exact - &partial)).abs();
        remainders.push(diff / (to_f64(&power) * factorial));
        partial += &alphas[m - 1] * &power;
    }
    let all_finite = remainders.iter().all(|r| r.is_finite() && *r > 0.0);
    let empirical_c1 = remainders
        .iter()
        .enumerate()
        .map(|(i, r)| r.powf(1.0 / (i + 1) as f64))
        .fold(0.0, f64::max);
    Ok(Theorem1Report {
        d,
        s,
        alphas: alphas[..m_max].iter().map(format_rational).collect(),
        beta_hat,
        beta_source: beta_source.to_string(),
        remainders,
        within_cap: all_finite && empirical_c1 <= EMPIRICAL_C1_CAP,
        empirical_c1,
        all_finite,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walks::enumerate;

    #[test]
    fn canonical_shapes() {
        assert_eq!(canonical(&[-2, 1, 2]), vec![1, 2, -1]);
        assert_eq!(canonical(&[3, 3, -1]), vec![1, 1, 2]);
    }

    #[test]
    fn memory_two_is_exact() {
        for d in 1..=4 {
            let t = mu_tau_transfer(d, 2).unwrap();
            assert_eq!(t.states.len(), 1);
            assert!((t.eigenvalue - (2 * d - 1) as f64).abs() <= 1e-12 * (2 * d) as f64);
        }
    }

    #[test]
    fn memory_four_matrix_reproduces_counts() {
        for d in 2..=3 {
            let t = mu_tau_transfer(d, 4).unwrap();
            let census = enumerate(WalkModel::Memory(4), d, 9).unwrap();
            assert!(t.matches_census(&census), "d={d}");
        }
    }

    #[test]
    fn flat_ratios_give_exact_estimate() {
        let census = enumerate(WalkModel::Memory(2), 2, 8).unwrap();
        let e = mu_estimates(&census).unwrap();
        assert_eq!(e.point_estimate, 3.0);
        assert_eq!(e.uncertainty, 0.0);
        let line = enumerate(WalkModel::SelfAvoiding, 1, 8).unwrap();
        assert_eq!(mu_estimates(&line).unwrap().point_estimate, 1.0);
        assert!(mu_estimates(&line.prefix(5)).is_err());
    }

    #[test]
    fn first_remainder_is_beta_over_s() {
        let a = vec![ExactRational::from_integer(1.into()); 3];
        let r = theorem1_check(&a, 0.15, "test", 4, 3).unwrap();
        assert!((r.remainders[0] - 0.15 / 0.125).abs() < 1e-15);
        assert!(theorem1_check(&a, 0.3, "test", 4, 3).is_err());
    }
}
