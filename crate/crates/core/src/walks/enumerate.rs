//! Depth-first exact enumeration, split into independent subtrees at a
//! fixed prefix depth and summed deterministically.

use num_bigint::BigUint;
use rayon::prelude::*;

use super::model::{WalkCensus, WalkModel};
use super::site::{apply, LifoSet, Packing};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    /// Upper limit on visited nodes, estimated before the run from
    /// `WalkModel::count_bound`. Lengths past the limit are dropped.
    pub max_nodes: f64,
    pub prefix_depth: usize,
    pub parallel: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { max_nodes: 4e9, prefix_depth: 4, parallel: true }
    }
}

/// Longest length `≤ n_max` whose predicted cost fits in the budget.
pub(crate) fn attainable_length(model: WalkModel, d: usize, n_max: usize, max_nodes: f64) -> usize {
    let mut total = 0.0;
    for n in 1..=n_max {
        total += model.count_bound(d, n);
        if total > max_nodes {
            return n - 1;
        }
    }
    n_max
}

pub fn enumerate(model: WalkModel, d: usize, n_max: usize) -> Result<WalkCensus> {
    enumerate_with(model, d, n_max, &EnumerateOptions::default())
}

/// Exact counts `c_1..c_n` of walks from the origin.
///
/// If the node budget cannot cover `n_max`, the census stops at the longest
/// affordable length and reports `truncated()`.
pub fn enumerate_with(
    model: WalkModel,
    d: usize,
    n_max: usize,
    opts: &EnumerateOptions,
) -> Result<WalkCensus> {
    if d == 0 || n_max == 0 {
        return Err(Error::InvalidArgument("need d >= 1 and n_max >= 1".into()));
    }
    let reach = attainable_length(model, d, n_max, opts.max_nodes);
    if reach == 0 {
        return Err(Error::Budget(format!(
            "not even length 1 fits in {:e} nodes",
            opts.max_nodes
        )));
    }
    let packing = Packing::new(d, reach)?;
    let steps = packing.steps();
    let prefix_depth = opts.prefix_depth.min(reach);

    // Phase 1: all valid prefixes, counting short lengths on the way.
    let mut head = Walker::new(model, &steps, reach, packing.origin());
    let mut prefixes: Vec<Vec<u128>> = Vec::new();
    head.collect_prefixes(prefix_depth, &mut prefixes);
    let mut counts = head.counts;

    // Phase 2: independent subtrees, private counters, ordered sum.
    let run = |prefix: &Vec<u128>| -> Vec<u64> {
        let mut w = Walker::new(model, &steps, reach, prefix[0]);
        for &site in &prefix[1..] {
            w.push(site);
        }
        if prefix.len() - 1 < reach {
            w.extend(prefix.len() - 1);
        }
        w.counts
    };
    let partials: Vec<Vec<u64>> = if opts.parallel {
        prefixes.par_iter().map(run).collect()
    } else {
        prefixes.iter().map(run).collect()
    };
    for p in partials {
        for (n, c) in p.into_iter().enumerate() {
            counts[n] += c;
        }
    }
    // Tallies stay far below u64::MAX because the node budget bounds them.
    Ok(WalkCensus {
        model,
        d,
        counts: counts[1..].iter().map(|&c| BigUint::from(c)).collect(),
        requested: n_max,
    })
}

struct Walker<'a> {
    model: WalkModel,
    window: Option<usize>,
    steps: &'a [(u128, bool)],
    n_max: usize,
    path: Vec<u128>,
    occupied: LifoSet,
    counts: Vec<u64>,
}

impl<'a> Walker<'a> {
    fn new(model: WalkModel, steps: &'a [(u128, bool)], n_max: usize, origin: u128) -> Self {
        let mut w = Walker {
            model,
            window: model.window(),
            steps,
            n_max,
            path: Vec::with_capacity(n_max + 1),
            occupied: LifoSet::with_capacity(n_max + 1),
            counts: vec![0; n_max + 1],
        };
        w.push(origin);
        w
    }

    #[inline]
    fn push(&mut self, site: u128) {
        self.path.push(site);
        if self.model == WalkModel::SelfAvoiding {
            self.occupied.push(site);
        }
    }

    #[inline]
    fn pop(&mut self) {
        self.path.pop();
        if self.model == WalkModel::SelfAvoiding {
            self.occupied.pop();
        }
    }

    #[inline]
    fn allowed(&self, next: u128) -> bool {
        match self.window {
            None => !self.occupied.contains(next),
            Some(0) | Some(1) => true,
            Some(w) => {
                let len = self.path.len();
                !self.path[len.saturating_sub(w)..].contains(&next)
            }
        }
    }

    /// Extends a walk of length `len` (path holds `len + 1` sites).
    fn extend(&mut self, len: usize) {
        let here = self.path[len];
        for &step in self.steps {
            let next = apply(here, step);
            if self.allowed(next) {
                self.counts[len + 1] += 1;
                if len + 1 < self.n_max {
                    self.push(next);
                    self.extend(len + 1);
                    self.pop();
                }
            }
        }
    }

    fn collect_prefixes(&mut self, depth: usize, out: &mut Vec<Vec<u128>>) {
        let len = self.path.len() - 1;
        if len == depth {
            out.push(self.path.clone());
            return;
        }
        let here = self.path[len];
        for &step in self.steps {
            let next = apply(here, step);
            if self.allowed(next) {
                self.counts[len + 1] += 1;
                self.push(next);
                self.collect_prefixes(depth, out);
                self.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(model: WalkModel, d: usize, n: usize) -> Vec<u64> {
        enumerate(model, d, n)
            .unwrap()
            .counts
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect()
    }

    #[test]
    fn square_lattice_saw() {
        assert_eq!(counts(WalkModel::SelfAvoiding, 2, 8), vec![4, 12, 36, 100, 284, 780, 2172, 5916]);
    }

    #[test]
    fn memory_two_closed_form() {
        for d in 1..=3u64 {
            let c = counts(WalkModel::Memory(2), d as usize, 7);
            for (i, &v) in c.iter().enumerate() {
                assert_eq!(v, 2 * d * (2 * d - 1).pow(i as u32));
            }
        }
    }

    #[test]
    fn simple_and_one_dimensional() {
        assert_eq!(counts(WalkModel::Simple, 1, 6), vec![2, 4, 8, 16, 32, 64]);
        assert_eq!(counts(WalkModel::SelfAvoiding, 1, 6), vec![2; 6]);
        assert_eq!(counts(WalkModel::SelfAvoiding, 2, 3), vec![4, 12, 36]);
    }

    #[test]
    fn serial_and_parallel_agree() {
        let serial = EnumerateOptions { parallel: false, ..Default::default() };
        let a = enumerate_with(WalkModel::Memory(4), 3, 7, &serial).unwrap();
        let b = enumerate(WalkModel::Memory(4), 3, 7).unwrap();
        assert_eq!(a, b);
        let shallow = EnumerateOptions { prefix_depth: 1, ..Default::default() };
        assert_eq!(enumerate_with(WalkModel::Memory(4), 3, 7, &shallow).unwrap(), b);
    }

    #[test]
    fn budget_truncates() {
        let opts = EnumerateOptions { max_nodes: 500.0, ..Default::default() };
        let c = enumerate_with(WalkModel::SelfAvoiding, 2, 10, &opts).unwrap();
        assert!(c.truncated());
        // predicted 4 + 12 + 36 + 108 + 324 = 484 fits, adding 972 does not
        assert_eq!(c.max_length(), 5);
        assert_eq!(c.requested, 10);
        let tiny = EnumerateOptions { max_nodes: 1.0, ..Default::default() };
        assert!(matches!(enumerate_with(WalkModel::Simple, 2, 3, &tiny), Err(Error::Budget(_))));
    }
}
