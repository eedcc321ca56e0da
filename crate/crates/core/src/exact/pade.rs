//! Padé approximants built in exact arithmetic, evaluated in floats.

use num_traits::{One, Zero};
use serde::Serialize;

use super::rational::{to_f64, ExactRational};
use crate::error::{Error, Result};

/// `P(t)/Q(t)` with `Q(0) = 1`, matching the input series through
/// `t^{num_degree + den_degree}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pade {
    pub numerator: Vec<ExactRational>,
    pub denominator: Vec<ExactRational>,
    /// Requested denominator degree when the linear system was singular and
    /// the degree had to be lowered.
    pub reduced_from: Option<usize>,
}

impl Pade {
    /// Builds the `[num_degree/den_degree]` approximant of the series with
    /// coefficients `c[0..]`. Needs `num_degree + den_degree + 1` coefficients.
    /// A singular denominator system lowers `den_degree` until solvable.
    pub fn build(c: &[ExactRational], num_degree: usize, den_degree: usize) -> Result<Pade> {
        let needed = num_degree + den_degree + 1;
        if c.len() < needed {
            return Err(Error::InvalidArgument(format!(
                "[{num_degree}/{den_degree}] approximant needs {needed} coefficients, have {}",
                c.len()
            )));
        }
        let coeff = |i: i64| -> ExactRational {
            if i < 0 {
                ExactRational::zero()
            } else {
                c[i as usize].clone()
            }
        };
        let mut m = den_degree;
        loop {
            // Σ_{j=0}^{m} q_j c_{L+i−j} = 0 for i = 1..m, q_0 = 1
            let l = num_degree as i64;
            let mut rows: Vec<Vec<ExactRational>> = (1..=m as i64)
                .map(|i| {
                    let mut row: Vec<ExactRational> =
                        (1..=m as i64).map(|j| coeff(l + i - j)).collect();
                    row.push(-coeff(l + i));
                    row
                })
                .collect();
            if let Some(q_tail) = solve(&mut rows, m) {
                let mut q = vec![ExactRational::one()];
                q.extend(q_tail);
                let p: Vec<ExactRational> = (0..=num_degree)
                    .map(|i| {
                        (0..=i.min(m))
                            .map(|j| &q[j] * &c[i - j])
                            .fold(ExactRational::zero(), |a, b| a + b)
                    })
                    .collect();
                return Ok(Pade {
                    numerator: p,
                    denominator: q,
                    reduced_from: (m != den_degree).then_some(den_degree),
                });
            }
            if m == 0 {
                unreachable!("an empty system is always solvable");
            }
            m -= 1;
        }
    }

    pub fn to_f64(&self) -> RationalFunction {
        RationalFunction {
            numerator: self.numerator.iter().map(to_f64).collect(),
            denominator: self.denominator.iter().map(to_f64).collect(),
        }
    }
}

/// Gaussian elimination with exact pivots on an `m × (m+1)` augmented system.
fn solve(rows: &mut [Vec<ExactRational>], m: usize) -> Option<Vec<ExactRational>> {
    for col in 0..m {
        let pivot = (col..m).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for k in col..=m {
            rows[col][k] = &rows[col][k] * &inv;
        }
        for r in 0..m {
            if r != col && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for k in col..=m {
                    let delta = &factor * &rows[col][k];
                    rows[r][k] -= delta;
                }
            }
        }
    }
    Some(rows.iter().map(|r| r[m].clone()).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct RationalFunction {
    pub numerator: Vec<f64>,
    pub denominator: Vec<f64>,
}

impl RationalFunction {
    pub fn eval(&self, t: f64) -> f64 {
        horner(&self.numerator, t) / horner(&self.denominator, t)
    }

    pub fn denominator_at(&self, t: f64) -> f64 {
        horner(&self.denominator, t)
    }

    /// First real zero of the denominator in `[0, upper]`, located by sign
    /// changes on a geometric grid and refined by bisection.
    pub fn first_pole_in(&self, upper: f64) -> Option<f64> {
        let grid = geometric_grid(upper, 4000);
        let mut prev_t = 0.0;
        let mut prev = self.denominator_at(0.0);
        if prev == 0.0 {
            return Some(0.0);
        }
        for &t in &grid {
            let v = self.denominator_at(t);
            if v == 0.0 {
                return Some(t);
            }
            if v.signum() != prev.signum() {
                let (mut lo, mut hi) = (prev_t, t);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if self.denominator_at(mid).signum() == prev.signum() {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                return Some(0.5 * (lo + hi));
            }
            prev_t = t;
            prev = v;
        }
        None
    }
}

fn horner(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * t + a)
}

fn geometric_grid(upper: f64, points: usize) -> Vec<f64> {
    let lo: f64 = 1e-6_f64.min(upper);
    let ratio = (upper / lo).powf(1.0 / (points - 1) as f64);
    let mut grid: Vec<f64> = (0..points).map(|i| lo * ratio.powi(i as i32)).collect();
    // uniform points as well, so wide gaps near `upper` stay resolved
    grid.extend((1..=points).map(|i| upper * i as f64 / points as f64));
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup();
    grid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn geometric_series_is_reproduced_exactly() {
        let c: Vec<ExactRational> = (0..5).map(|_| int(1)).collect();
        let p = Pade::build(&c, 1, 1).unwrap();
        assert_eq!(p.denominator, vec![int(1), int(-1)]);
        assert_eq!(p.numerator, vec![int(1), int(0)]);
        assert_eq!(p.reduced_from, None);
    }

    #[test]
    fn exp_one_one() {
        let c = vec![int(1), int(1), rat(1, 2), rat(1, 6)];
        let p = Pade::build(&c, 1, 1).unwrap();
        assert_eq!(p.numerator, vec![int(1), rat(1, 2)]);
        assert_eq!(p.denominator, vec![int(1), rat(-1, 2)]);
        let f = p.to_f64();
        assert_eq!(f.first_pole_in(10.0).map(|t| (t * 1e9).round() / 1e9), Some(2.0));
        assert_eq!(f.first_pole_in(1.5), None);
    }

    #[test]
    fn singular_system_reduces_denominator() {
        // a polynomial: the [2/2] and [2/1] systems are singular
        let c = vec![int(1), int(2), int(0), int(0), int(0)];
        let p = Pade::build(&c, 2, 2).unwrap();
        assert!(p.reduced_from.is_some());
        assert_eq!(p.to_f64().eval(0.5), 2.0);
    }

    #[test]
    fn too_few_coefficients() {
        assert!(Pade::build(&[int(1)], 1, 1).is_err());
    }
}
