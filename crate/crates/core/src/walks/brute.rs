//! Step-sequence exhaustion: generates every sequence of `n` unit steps and
//! filters by the model predicate. Shares nothing with the DFS enumerator
//! so it can serve as its oracle.

use num_bigint::BigUint;

use super::model::{WalkCensus, WalkModel};
use crate::error::{Error, Result};

/// Total sequences examined, summed over all lengths, may not exceed this.
pub const BRUTE_FORCE_BUDGET: u64 = 50_000_000;

pub fn brute_force_enumerate(model: WalkModel, d: usize, n_max: usize) -> Result<WalkCensus> {
    if d == 0 || n_max == 0 {
        return Err(Error::InvalidArgument("need d >= 1 and n_max >= 1".into()));
    }
    let choices = 2 * d as u64;
    let mut total: u64 = 0;
    for n in 1..=n_max {
        let here = choices
            .checked_pow(n as u32)
            .ok_or_else(|| Error::Budget(format!("(2d)^{n} overflows")))?;
        total = total.saturating_add(here);
    }
    if total > BRUTE_FORCE_BUDGET {
        return Err(Error::Budget(format!(
            "{total} step sequences exceed the brute-force budget {BRUTE_FORCE_BUDGET}"
        )));
    }
    let mut counts = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut count: u64 = 0;
        for code in 0..choices.pow(n as u32) {
            let walk = decode(code, n, d);
            if satisfies(model, &walk) {
                count += 1;
            }
        }
        counts.push(BigUint::from(count));
    }
    Ok(WalkCensus { model, d, counts, requested: n_max })
}

/// Sites `ω_0..ω_n` for the base-`2d` digits of `code`.
fn decode(mut code: u64, n: usize, d: usize) -> Vec<Vec<i64>> {
    let mut sites = vec![vec![0i64; d]];
    for _ in 0..n {
        let digit = (code % (2 * d as u64)) as usize;
        code /= 2 * d as u64;
        let mut next = sites.last().unwrap().clone();
        next[digit / 2] += if digit % 2 == 0 { 1 } else { -1 };
        sites.push(next);
    }
    sites
}

fn satisfies(model: WalkModel, sites: &[Vec<i64>]) -> bool {
    let memory = match model {
        WalkModel::Simple => return true,
        WalkModel::SelfAvoiding => usize::MAX,
        WalkModel::Memory(t) => t as usize,
    };
    for j in 0..sites.len() {
        for i in 0..j {
            if j - i <= memory && sites[i] == sites[j] {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_saw_of_length_two() {
        let c = brute_force_enumerate(WalkModel::SelfAvoiding, 1, 2).unwrap();
        assert_eq!(c.counts[1], BigUint::from(2u32));
    }

    #[test]
    fn memory_walks_contain_saws() {
        let saw = brute_force_enumerate(WalkModel::SelfAvoiding, 2, 6).unwrap();
        let mem = brute_force_enumerate(WalkModel::Memory(4), 2, 6).unwrap();
        assert!(mem.counts[5] >= saw.counts[5]);
    }

    #[test]
    fn budget_rejects_large_runs() {
        assert!(matches!(
            brute_force_enumerate(WalkModel::Simple, 3, 12),
            Err(Error::Budget(_))
        ));
    }
}
