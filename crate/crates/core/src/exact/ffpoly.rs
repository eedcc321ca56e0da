//! Polynomials in `2d` written in the falling basis
//! `p_D(2d) = 2d(2d−2)…(2d−2D+2)`, the orbit size of a dimensionality-`D`
//! object under signed coordinate permutations.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, int, ExactRational};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FallingFactorialPoly {
    coeffs: BTreeMap<usize, ExactRational>,
}

impl FallingFactorialPoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, ExactRational)>>(pairs: I) -> Self {
        let mut p = Self::new();
        for (dim, c) in pairs {
            p.add_term(dim, c);
        }
        p
    }

    pub fn add_term(&mut self, dim: usize, c: ExactRational) {
        let slot = self.coeffs.entry(dim).or_insert_with(ExactRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&dim);
        }
    }

    pub fn coeff(&self, dim: usize) -> ExactRational {
        self.coeffs.get(&dim).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &ExactRational)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    /// Value at lattice dimension `d`; orbit factors vanish for `D > d`.
    pub fn evaluate(&self, d: u64) -> ExactRational {
        let two_d = 2 * d as i64;
        self.coeffs
            .iter()
            .map(|(&dim, c)| {
                let orbit: i64 = (0..dim as i64).map(|j| two_d - 2 * j).product();
                c * int(orbit)
            })
            .fold(ExactRational::zero(), |a, b| a + b)
    }

    /// Coefficients in the monomial basis `(2d)^m`, index `m`.
    pub fn to_monomial(&self) -> Vec<ExactRational> {
        let mut out = vec![ExactRational::zero(); self.degree() + 1];
        for (&dim, c) in &self.coeffs {
            for (m, b) in falling_basis(dim).into_iter().enumerate() {
                out[m] += c * b;
            }
        }
        out
    }

    /// Inverse of [`to_monomial`](Self::to_monomial).
    pub fn from_monomial(monomial: &[ExactRational]) -> Self {
        let mut rest = monomial.to_vec();
        let mut out = Self::new();
        for dim in (0..rest.len()).rev() {
            let lead = rest[dim].clone();
            if lead.is_zero() {
                continue;
            }
            for (m, b) in falling_basis(dim).into_iter().enumerate() {
                rest[m] -= &lead * b;
            }
            out.add_term(dim, lead);
        }
        out
    }

    /// Expansion in powers of `s = 1/(2d)`: `(2d)^m = s^{-m}`. Pairs are
    /// `(power of s, coefficient)` sorted by power, zero terms omitted.
    pub fn expand(&self) -> Vec<(i64, ExactRational)> {
        let mut pairs: Vec<(i64, ExactRational)> = self
            .to_monomial()
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (-(m as i64), c))
            .collect();
        pairs.sort_by_key(|(p, _)| *p);
        pairs
    }
}

/// Integer monomial coefficients of `x(x−2)…(x−2D+2)`.
fn falling_basis(dim: usize) -> Vec<ExactRational> {
    let mut poly: Vec<ExactRational> = vec![int(1)];
    for j in 0..dim {
        let shift = int(-2 * j as i64);
        let mut next = vec![ExactRational::zero(); poly.len() + 1];
        for (m, c) in poly.iter().enumerate() {
            next[m + 1] += c;
            next[m] += c * &shift;
        }
        poly = next;
    }
    poly
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    dim: usize,
    coeff: String,
}

impl Serialize for FallingFactorialPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .coeffs
            .iter()
            .map(|(&dim, c)| TermRepr { dim, coeff: format_rational(c) })
            .collect();
        terms.serialize(s)
    }
}
