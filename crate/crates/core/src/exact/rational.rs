//! Exact scalars and the decimal `"num/den"` string encoding shared by every
//! file format in the crate.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational kept in lowest terms with a positive denominator.
pub type ExactRational = BigRational;

pub fn rat(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn from_biguint(n: &BigUint) -> ExactRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// Formats as `"num/den"` with exact decimal integers, denominators included
/// even when they equal 1.
pub fn format_rational(q: &ExactRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"num/den"` or a bare integer `"num"`.
pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let bad = || Error::ParseRational(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Correctly rounded enough for our purposes: scales both parts down before
/// dividing so huge numerators and denominators do not overflow to inf/NaN.
pub fn to_f64(q: &ExactRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift_n = (nb - 900).max(0) as usize;
    let shift_d = (db - 900).max(0) as usize;
    let n = (q.numer().abs() >> shift_n).to_f64().unwrap_or(f64::INFINITY);
    let d = (q.denom() >> shift_d).to_f64().unwrap_or(f64::INFINITY);
    let mag = n / d * 2f64.powi((shift_n as i64 - shift_d as i64) as i32);
    if q.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Table of `0!, 1!, …` grown on demand.
#[derive(Debug, Clone)]
pub struct FactorialCache {
    table: Vec<BigUint>,
}

impl Default for FactorialCache {
    fn default() -> Self {
        Self::new()
    }
}

impl FactorialCache {
    pub fn new() -> Self {
        FactorialCache { table: vec![BigUint::one()] }
    }

    pub fn get(&mut self, n: usize) -> &BigUint {
        while self.table.len() <= n {
            let k = self.table.len();
            let next = &self.table[k - 1] * BigUint::from(k);
            self.table.push(next);
        }
        &self.table[n]
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(5)), "5/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn denominators_are_positive() {
        let q = rat(3, -9);
        assert_eq!(q.numer(), &BigInt::from(-1));
        assert_eq!(q.denom(), &BigInt::from(3));
    }

    #[test]
    fn huge_rationals_convert() {
        let big = BigInt::from(10).pow(400);
        let q = BigRational::new(big.clone() * 3, big * 4);
        assert!((to_f64(&q) - 0.75).abs() < 1e-15);
        let q = BigRational::new(BigInt::from(10).pow(400), BigInt::from(7));
        assert!(to_f64(&q).is_infinite());
    }

    #[test]
    fn factorials_and_binomials() {
        let mut cache = FactorialCache::new();
        assert_eq!(cache.get(10), &BigUint::from(3_628_800u32));
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(binomial(12, 6), BigUint::from(924u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
    }
}
