//! Endpoint distributions of simple random walks and the bounds used to
//! control them.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{binomial, factorial, to_f64, ExactRational};

/// Lattice cells times steps the dynamic program may touch.
pub const SIMPLE_WALK_BUDGET: u64 = 400_000_000;

/// `c_k(x)`: simple walks of length `k` from the origin ending at `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleWalkCounts {
    pub d: usize,
    pub m_max: usize,
    /// `returns[m-1] = c_{2m}(0)`.
    #[serde(with = "super::decimal::list")]
    pub returns: Vec<BigUint>,
    /// `to_neighbor[m-1] = c_{2m−1}(e_1)`.
    #[serde(with = "super::decimal::list")]
    pub to_neighbor: Vec<BigUint>,
    /// `even_peak[m-1] = max_x c_{2m}(x)`.
    #[serde(with = "super::decimal::list")]
    pub even_peak: Vec<BigUint>,
    /// `weighted_sup[k-1] = max_x k·c_k(x)` for `k ≤ 2m_max`.
    #[serde(with = "super::decimal::list")]
    pub weighted_sup: Vec<BigUint>,
}

pub fn simple_walk_counts(d: usize, m_max: usize) -> Result<SimpleWalkCounts> {
    if d == 0 || m_max == 0 {
        return Err(Error::InvalidArgument("need d >= 1 and m_max >= 1".into()));
    }
    let k_max = 2 * m_max;
    let side = 2 * k_max + 1;
    let cells = (side as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
    if cells.saturating_mul(k_max as u64) > SIMPLE_WALK_BUDGET {
        return Err(Error::Budget(format!(
            "{cells} cells over {k_max} steps exceed the simple-walk budget"
        )));
    }
    let cells = cells as usize;
    let strides: Vec<usize> = (0..d).map(|i| side.pow(i as u32)).collect();
    let centre: usize = strides.iter().map(|s| s * k_max).sum();
    let neighbour = centre + strides[0];

    let mut current = vec![0u128; cells];
    current[centre] = 1;
    let mut out = SimpleWalkCounts {
        d,
        m_max,
        returns: Vec::new(),
        to_neighbor: Vec::new(),
        even_peak: Vec::new(),
        weighted_sup: Vec::new(),
    };
    for k in 1..=k_max {
        let mut next = vec![0u128; cells];
        for (i, &c) in current.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &s in &strides {
                // Walks of length < k_max never reach the boundary layer.
                next[i + s] += c;
                next[i - s] += c;
            }
        }
        current = next;
        let peak = *current.iter().max().expect("nonempty grid");
        out.weighted_sup.push(BigUint::from(peak) * BigUint::from(k));
        if k % 2 == 0 {
            out.returns.push(BigUint::from(current[centre]));
            out.even_peak.push(BigUint::from(peak));
        } else {
            out.to_neighbor.push(BigUint::from(current[neighbour]));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleBoundRow {
    pub m: usize,
    /// `2d·c_{2m−1}(e_1) = c_{2m}(0)`.
    pub identity: bool,
    /// `c_{2m}(x) ≤ c_{2m}(0)` for all `x`.
    pub origin_is_peak: bool,
    /// `c_{2m}(0) / binom(d, m)(2m)^{2m}` for `m ≤ d`, else `/ (2d)^{2m}`.
    pub subspace_ratio: f64,
    /// `2m·c_{2m}(0) / (20^m (2d)^m m!)`.
    pub factorial_ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleBoundReport {
    pub d: usize,
    pub rows: Vec<SimpleBoundRow>,
    pub worst_subspace_ratio: f64,
    pub worst_factorial_ratio: f64,
    pub holds: bool,
}

/// Checks the odd/even identity, the subspace bound and the factorial bound
/// with constant 20 for every stored `m`. Comparisons are exact; ratios are
/// reported as floats.
pub fn check_simple_walk_bounds(counts: &SimpleWalkCounts) -> SimpleBoundReport {
    let d = counts.d;
    let two_d = BigUint::from(2 * d);
    let mut rows = Vec::new();
    let mut holds = true;
    for m in 1..=counts.m_max {
        let ret = &counts.returns[m - 1];
        let identity = &counts.to_neighbor[m - 1] * &two_d == *ret;
        let origin_is_peak = counts.even_peak[m - 1] == *ret;
        let subspace = if m <= d {
            binomial(d, m) * BigUint::from(2 * m).pow(2 * m as u32)
        } else {
            two_d.pow(2 * m as u32)
        };
        let factorial_bound =
            BigUint::from(20u32).pow(m as u32) * two_d.pow(m as u32) * factorial(m);
        let lhs = ret * BigUint::from(2 * m);
        let ok = identity && origin_is_peak && *ret <= subspace && lhs <= factorial_bound;
        holds &= ok;
        rows.push(SimpleBoundRow {
            m,
            identity,
            origin_is_peak,
            subspace_ratio: ratio(ret, &subspace),
            factorial_ratio: ratio(&lhs, &factorial_bound),
        });
    }
    let worst = |f: fn(&SimpleBoundRow) -> f64| rows.iter().map(f).fold(0.0, f64::max);
    SimpleBoundReport {
        d,
        worst_subspace_ratio: worst(|r| r.subspace_ratio),
        worst_factorial_ratio: worst(|r| r.factorial_ratio),
        rows,
        holds,
    }
}

fn ratio(num: &BigUint, den: &BigUint) -> f64 {
    if den.is_zero() {
        return f64::INFINITY;
    }
    to_f64(&ExactRational::new(num.clone().into(), den.clone().into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let c = simple_walk_counts(2, 3).unwrap();
        assert_eq!(c.returns[0], BigUint::from(4u32));
        assert_eq!(c.returns[1], BigUint::from(36u32));
        let one = simple_walk_counts(1, 6).unwrap();
        for m in 1..=6 {
            assert_eq!(one.returns[m - 1], binomial(2 * m, m));
        }
    }

    #[test]
    fn bounds_hold_in_three_dimensions() {
        let r = check_simple_walk_bounds(&simple_walk_counts(3, 5).unwrap());
        assert!(r.holds, "{r:?}");
        assert!(r.worst_factorial_ratio < 1.0);
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(simple_walk_counts(9, 8), Err(Error::Budget(_))));
    }
}
