//! Symmetry-reduced enumeration. A walk is canonical when its axes are first
//! touched in the order 0, 1, 2, … and the first step along each axis is
//! positive. Every walk of dimensionality `D` in `Z^d` is the image of
//! exactly one canonical walk under exactly `2d(2d−2)…(2d−2D+2)` signed
//! permutations: the first use of each axis fixes both its image and sign,
//! so stabilizers are trivial.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::model::{Tau, WalkCensus, WalkModel};
use super::site::{apply, LifoSet, Packing};
use crate::error::{Error, Result};
use crate::exact::rational::from_biguint;
use crate::exact::FallingFactorialPoly;

/// Longest length whose canonical walks fit in the 128-bit site packing
/// with one axis per step.
pub const CANONICAL_LIMIT: usize = 21;

/// `f(n, D)`: canonical length-`n` walks of dimensionality `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimTable {
    pub model: WalkModel,
    pub n_max: usize,
    /// Number of axes available during the run; results are independent of
    /// it once `ambient ≥ n_max`.
    pub ambient: usize,
    /// `f[n-1][D]` for `0 ≤ D ≤ ambient`.
    #[serde(with = "super::decimal::rows")]
    pub f: Vec<Vec<BigUint>>,
}

impl DimTable {
    pub fn tau(&self) -> Tau {
        self.model.tau()
    }

    pub fn get(&self, n: usize, dim: usize) -> BigUint {
        self.f
            .get(n.wrapping_sub(1))
            .and_then(|row| row.get(dim))
            .cloned()
            .unwrap_or_default()
    }

    /// Total canonical walks of length `n`.
    pub fn classes(&self, n: usize) -> u64 {
        self.f[n - 1].iter().map(|v| v.to_u64().unwrap_or(u64::MAX)).sum()
    }

    /// `c_n(d) = Σ_D f(n, D)·2d(2d−2)…(2d−2D+2)` as an exact polynomial.
    pub fn dimensional_polynomial(&self, n: usize) -> Result<FallingFactorialPoly> {
        if n == 0 || n > self.n_max {
            return Err(Error::InvalidArgument(format!(
                "length {n} outside the table range 1..={}",
                self.n_max
            )));
        }
        Ok(FallingFactorialPoly::from_pairs(
            self.f[n - 1]
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(dim, v)| (dim, from_biguint(v))),
        ))
    }

    /// Counts in dimension `d` obtained by evaluating every polynomial.
    pub fn census(&self, d: usize) -> WalkCensus {
        let counts = (1..=self.n_max)
            .map(|n| {
                let value = self.dimensional_polynomial(n).expect("n in range").evaluate(d as u64);
                value.to_integer().to_biguint().expect("walk counts are nonnegative")
            })
            .collect();
        WalkCensus { model: self.model, d, counts, requested: self.n_max }
    }
}

pub fn canonical_classes(model: WalkModel, n_max: usize) -> Result<DimTable> {
    canonical_classes_in(model, n_max, n_max)
}

/// Canonical-class counts using only the first `ambient` axes.
pub fn canonical_classes_in(model: WalkModel, n_max: usize, ambient: usize) -> Result<DimTable> {
    if model == WalkModel::Simple {
        return Err(Error::InvalidArgument(
            "canonical classes are defined for saw and memory models".into(),
        ));
    }
    if n_max == 0 || ambient == 0 {
        return Err(Error::InvalidArgument("need n_max >= 1 and ambient >= 1".into()));
    }
    if n_max > CANONICAL_LIMIT {
        return Err(Error::Budget(format!(
            "canonical enumeration is limited to n <= {CANONICAL_LIMIT}"
        )));
    }
    let packing = Packing::new(ambient, n_max)?;
    let prefix_depth = 5.min(n_max);

    let mut head = Canon::new(model, &packing, n_max, ambient);
    let mut prefixes = Vec::new();
    head.collect(prefix_depth, &mut prefixes);
    let mut f = head.f;

    let partials: Vec<Vec<Vec<u64>>> = prefixes
        .par_iter()
        .map(|(path, used)| {
            let mut w = Canon::new(model, &packing, n_max, ambient);
            for &site in &path[1..] {
                w.push(site);
            }
            w.used = *used;
            if path.len() - 1 < n_max {
                w.extend(path.len() - 1);
            }
            w.f
        })
        .collect();
    for p in partials {
        for (row, prow) in f.iter_mut().zip(p) {
            for (v, pv) in row.iter_mut().zip(prow) {
                *v += pv;
            }
        }
    }
    Ok(DimTable {
        model,
        n_max,
        ambient,
        f: f[1..].iter().map(|row| row.iter().map(|&v| BigUint::from(v)).collect()).collect(),
    })
}

struct Canon {
    model: WalkModel,
    window: Option<usize>,
    n_max: usize,
    ambient: usize,
    units: Vec<u128>,
    path: Vec<u128>,
    occupied: LifoSet,
    used: usize,
    f: Vec<Vec<u64>>,
}

impl Canon {
    fn new(model: WalkModel, packing: &Packing, n_max: usize, ambient: usize) -> Self {
        let mut c = Canon {
            model,
            window: model.window(),
            n_max,
            ambient,
            units: (0..ambient).map(|a| packing.unit(a)).collect(),
            path: Vec::with_capacity(n_max + 1),
            occupied: LifoSet::with_capacity(n_max + 1),
            used: 0,
            f: vec![vec![0; ambient + 1]; n_max + 1],
        };
        c.push(packing.origin());
        c
    }

    fn push(&mut self, site: u128) {
        self.path.push(site);
        if self.model == WalkModel::SelfAvoiding {
            self.occupied.push(site);
        }
    }

    fn pop(&mut self) {
        self.path.pop();
        if self.model == WalkModel::SelfAvoiding {
            self.occupied.pop();
        }
    }

    fn allowed(&self, next: u128) -> bool {
        match self.window {
            None => !self.occupied.contains(next),
            Some(0) | Some(1) => true,
            Some(w) => !self.path[self.path.len().saturating_sub(w)..].contains(&next),
        }
    }

    /// Canonical moves: both directions on used axes, the positive
    /// direction on the next fresh axis.
    fn step(&mut self, len: usize, depth: Option<usize>, out: &mut Vec<(Vec<u128>, usize)>) {
        let here = self.path[len];
        let top = self.used;
        for axis in 0..(top + 1).min(self.ambient) {
            for negative in [false, true] {
                let opens = axis == top;
                if opens && negative {
                    continue;
                }
                self.visit(len, here, (self.units[axis], negative), opens, depth, out);
            }
        }
    }

    fn visit(
        &mut self,
        len: usize,
        here: u128,
        st: (u128, bool),
        opens: bool,
        depth: Option<usize>,
        out: &mut Vec<(Vec<u128>, usize)>,
    ) {
        let next = apply(here, st);
        if !self.allowed(next) {
            return;
        }
        if opens {
            self.used += 1;
        }
        self.f[len + 1][self.used] += 1;
        match depth {
            Some(dp) if len + 1 == dp => {
                self.push(next);
                out.push((self.path.clone(), self.used));
                self.pop();
            }
            _ if len + 1 < self.n_max => {
                self.push(next);
                self.step(len + 1, depth, out);
                self.pop();
            }
            _ => {}
        }
        if opens {
            self.used -= 1;
        }
    }

    fn extend(&mut self, len: usize) {
        let mut sink = Vec::new();
        self.step(len, None, &mut sink);
    }

    fn collect(&mut self, depth: usize, out: &mut Vec<(Vec<u128>, usize)>) {
        self.step(0, Some(depth), out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walks::enumerate::enumerate;

    #[test]
    fn short_saw_classes() {
        let t = canonical_classes(WalkModel::SelfAvoiding, 4).unwrap();
        assert_eq!(t.get(1, 1), BigUint::from(1u32));
        assert_eq!(t.get(2, 1), BigUint::from(1u32));
        assert_eq!(t.get(2, 2), BigUint::from(1u32));
        assert_eq!(t.get(3, 4), BigUint::zero());
        assert_eq!(t.census(2).counts[3], BigUint::from(100u32));
    }

    #[test]
    fn polynomials_match_enumeration() {
        for model in [WalkModel::SelfAvoiding, WalkModel::Memory(4)] {
            let t = canonical_classes(model, 7).unwrap();
            for d in 1..=3 {
                assert_eq!(t.census(d), enumerate(model, d, 7).unwrap(), "{model} d={d}");
            }
        }
    }

    #[test]
    fn ambient_beyond_length_changes_nothing() {
        let a = canonical_classes_in(WalkModel::SelfAvoiding, 6, 6).unwrap();
        let b = canonical_classes_in(WalkModel::SelfAvoiding, 6, 7).unwrap();
        for n in 1..=6 {
            for dim in 0..=6 {
                assert_eq!(a.get(n, dim), b.get(n, dim));
            }
        }
    }

    #[test]
    fn simple_model_rejected() {
        assert!(canonical_classes(WalkModel::Simple, 3).is_err());
    }
}
