//! Truncated formal power series over exact rationals.
//!
//! A series of order `N` knows its coefficients exactly through `x^N` and
//! nothing beyond. Binary operations truncate to the smaller order, so a
//! result never claims more precision than its least precise input.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::lagrange::lagrange_burmann;
use super::rational::{format_rational, int, parse_rational, ExactRational, FactorialCache};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<ExactRational>,
}

impl PowerSeries {
    /// Builds a series of order `coeffs.len() - 1`. Panics on an empty vector.
    pub fn new(coeffs: Vec<ExactRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        PowerSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// Builds an order-`order` series from a (possibly shorter) prefix,
    /// padding with zeros.
    pub fn with_order(mut coeffs: Vec<ExactRational>, order: usize) -> Self {
        coeffs.resize(order + 1, ExactRational::zero());
        Self::new(coeffs)
    }

    pub fn zero(order: usize) -> Self {
        Self::with_order(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(int(1), order)
    }

    pub fn constant(c: ExactRational, order: usize) -> Self {
        Self::with_order(vec![c], order)
    }

    /// The identity series `x`, exact through `order`.
    pub fn x(order: usize) -> Self {
        Self::monomial(int(1), 1, order)
    }

    pub fn monomial(c: ExactRational, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactRational> {
        self.coeffs
    }

    /// Coefficient of `x^n`, or `None` past the truncation order where it is unknown.
    pub fn coeff(&self, n: usize) -> Option<&ExactRational> {
        self.coeffs.get(n)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self::new(self.coeffs[..=order].to_vec())
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Cauchy product, order `min(order(a), order(b))`.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![ExactRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NonInvertible);
        }
        let inv0 = a0.recip();
        let n = self.order();
        let mut out: Vec<ExactRational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = ExactRational::zero();
            for j in 1..=k {
                let aj = &self.coeffs[j];
                if !aj.is_zero() {
                    acc += aj * &out[k - j];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(Self::new(out))
    }

    /// `outer(inner(x))`; `inner` must have zero constant term.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        let order = outer.order().min(inner.order());
        let inner = inner.truncate(order);
        // Horner in the inner series
        let mut acc = Self::constant(outer.coeffs[order].clone(), order);
        for k in (0..order).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += &outer.coeffs[k];
        }
        Ok(acc)
    }

    /// Logarithm of a series with constant term 1, via
    /// `n·l_n = n·a_n − Σ_{k<n} k·l_k·a_{n−k}`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::LogConstantTerm(format_rational(&self.coeffs[0])));
        }
        let n = self.order();
        let mut l = vec![ExactRational::zero(); n + 1];
        for m in 1..=n {
            let mut acc = &self.coeffs[m] * int(m as i64);
            for k in 1..m {
                if !l[k].is_zero() && !self.coeffs[m - k].is_zero() {
                    acc -= &l[k] * &self.coeffs[m - k] * int(k as i64);
                }
            }
            l[m] = acc / int(m as i64);
        }
        Ok(Self::new(l))
    }

    /// Exponential of a series with constant term 0, via
    /// `n·e_n = Σ_{k=1}^{n} k·a_k·e_{n−k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ExpConstantTerm(format_rational(&self.coeffs[0])));
        }
        let n = self.order();
        let mut e = vec![ExactRational::zero(); n + 1];
        e[0] = int(1);
        for m in 1..=n {
            let mut acc = ExactRational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &e[m - k] * int(k as i64);
                }
            }
            e[m] = acc / int(m as i64);
        }
        Ok(Self::new(e))
    }

    /// Compositional inverse by the Lagrange–Bürmann formula.
    ///
    /// Writing `f(β) = β/φ(β)` with `φ = x/f`, the inverse is
    /// `g(s) = Σ_k (s^k/k)[β^{k−1}]φ^k`. Order is preserved.
    pub fn revert(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(Error::NotRevertible);
        }
        let f_over_x = Self::new(self.coeffs[1..].to_vec());
        let phi = f_over_x.recip()?;
        let r = lagrange_burmann(phi.coeffs(), n, |_, _| {});
        let mut out = Vec::with_capacity(n + 1);
        out.push(ExactRational::zero());
        out.extend(r);
        Ok(Self::new(out))
    }

    /// Divides coefficient `n` by `n!`.
    pub fn borel_transform(&self) -> Self {
        let mut fac = FactorialCache::new();
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| a / ExactRational::from_integer(fac.get(n).clone().into()))
                .collect(),
        )
    }

    /// Multiplies coefficient `n` by `n!`.
    pub fn inverse_borel(&self) -> Self {
        let mut fac = FactorialCache::new();
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| a * ExactRational::from_integer(fac.get(n).clone().into()))
                .collect(),
        )
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, a)| a * int(n as i64))
                .collect(),
        )
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(super::rational::to_f64).collect()
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries::new((0..=order).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect())
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries::new((0..=order).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect())
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries::mul(self, rhs)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for PowerSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            order: self.order(),
            coeffs: self.coeffs.iter().map(format_rational).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PowerSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = SeriesRepr::deserialize(deserializer)?;
        if repr.coeffs.len() != repr.order + 1 {
            return Err(D::Error::custom(format!(
                "order {} requires {} coefficients, found {}",
                repr.order,
                repr.order + 1,
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(PowerSeries::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn ones(order: usize) -> PowerSeries {
        PowerSeries::from_ints(&vec![1; order + 1])
    }

    #[test]
    fn mul_examples() {
        let one = PowerSeries::one(6);
        assert_eq!(one.mul(&ones(6)), ones(6));
        let a = PowerSeries::from_ints(&[1, 1, 0]);
        let b = PowerSeries::from_ints(&[1, -1, 0]);
        assert_eq!(a.mul(&b), PowerSeries::from_ints(&[1, 0, -1]));
        assert_eq!(ones(6).mul(&ones(6)), PowerSeries::from_ints(&[1, 2, 3, 4, 5, 6, 7]));
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let a = ones(3);
        let b = ones(7);
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!((&b - &a).order(), 3);
    }

    #[test]
    fn recip_examples() {
        let a = PowerSeries::from_ints(&[1, -1, 0, 0, 0]);
        assert_eq!(a.recip().unwrap(), ones(4));
        assert_eq!(
            PowerSeries::from_ints(&[2]).recip().unwrap(),
            PowerSeries::new(vec![rat(1, 2)])
        );
        assert!(matches!(
            PowerSeries::from_ints(&[0, 1]).recip(),
            Err(Error::NonInvertible)
        ));
    }

    #[test]
    fn compose_examples() {
        let f = PowerSeries::from_ints(&[0, 1, 4, 1, 5]);
        assert_eq!(PowerSeries::compose(&PowerSeries::x(4), &f).unwrap(), f);
        let inner = PowerSeries::from_ints(&[0, 1, 1, 0, 0]);
        let sq = PowerSeries::monomial(int(1), 2, 4);
        assert_eq!(
            PowerSeries::compose(&sq, &inner).unwrap(),
            PowerSeries::from_ints(&[0, 0, 1, 2, 1])
        );
        let shifted = PowerSeries::from_ints(&[3, 1, 4, 1, 5]);
        assert!(matches!(
            PowerSeries::compose(&sq, &shifted),
            Err(Error::NonzeroInnerConstant)
        ));
    }

    #[test]
    fn log_examples() {
        assert_eq!(PowerSeries::one(5).log().unwrap(), PowerSeries::zero(5));
        let mercator = PowerSeries::from_ints(&[1, 1, 0, 0, 0]).log().unwrap();
        assert_eq!(
            mercator,
            PowerSeries::new(vec![int(0), int(1), rat(-1, 2), rat(1, 3), rat(-1, 4)])
        );
        assert!(PowerSeries::from_ints(&[2, 1]).log().is_err());
    }

    #[test]
    fn exp_inverts_log() {
        let a = PowerSeries::new(vec![int(1), rat(2, 3), rat(-5, 7), int(4), rat(1, 9)]);
        assert_eq!(a.log().unwrap().exp().unwrap(), a);
        assert!(PowerSeries::from_ints(&[1, 1]).exp().is_err());
    }

    #[test]
    fn revert_examples() {
        assert_eq!(PowerSeries::x(5).revert().unwrap(), PowerSeries::x(5));
        let f = PowerSeries::from_ints(&[0, 1, -1, 0, 0, 0]);
        assert_eq!(f.revert().unwrap(), PowerSeries::from_ints(&[0, 1, 1, 2, 5, 14]));
        assert!(PowerSeries::from_ints(&[1, 1]).revert().is_err());
        assert!(PowerSeries::from_ints(&[0, 0, 1]).revert().is_err());
        assert!(PowerSeries::from_ints(&[0]).revert().is_err());
    }

    #[test]
    fn borel_examples() {
        let fact = PowerSeries::from_ints(&[0, 1, 2, 6, 24, 120]);
        assert_eq!(fact.borel_transform(), PowerSeries::from_ints(&[0, 1, 1, 1, 1, 1]));
        let saw = PowerSeries::from_ints(&[0, 1, 1, 2, 6, 27, 157]);
        let want = PowerSeries::new(vec![
            int(0),
            int(1),
            rat(1, 2),
            rat(1, 3),
            rat(1, 4),
            rat(27, 120),
            rat(157, 720),
        ]);
        assert_eq!(saw.borel_transform(), want);
        assert_eq!(saw.borel_transform().inverse_borel(), saw);
    }

    #[test]
    fn json_format() {
        let s = PowerSeries::new(vec![int(1), rat(-1, 2)]);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"order":1,"coeffs":["1/1","-1/2"]}"#);
        let back: PowerSeries = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<PowerSeries>(r#"{"order":2,"coeffs":["1"]}"#).is_err());
    }
}
