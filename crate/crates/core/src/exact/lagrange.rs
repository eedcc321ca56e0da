//! Lagrange–Bürmann reversion over a generic coefficient ring.
//!
//! If `β = s·φ(β)` with `φ(0) ≠ 0`, then
//! `β = Σ_k (s^k / k) [β^{k-1}] φ(β)^k`. The coefficient ring is abstract so
//! the same routine reverts plain rational series and series whose
//! coefficients are Laurent polynomials in a second variable.

use num_bigint::BigInt;
use num_traits::Zero;

use super::rational::ExactRational;

/// Minimal ring interface needed by [`lagrange_burmann`].
pub trait LbCoeff: Clone {
    fn additive_identity() -> Self;
    fn vanishes(&self) -> bool;
    fn times(&self, other: &Self) -> Self;
    fn accumulate(&mut self, other: &Self);
    fn divide_by(&self, k: u64) -> Self;
}

impl LbCoeff for ExactRational {
    fn additive_identity() -> Self {
        <ExactRational as Zero>::zero()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn accumulate(&mut self, other: &Self) {
        *self += other;
    }
    fn divide_by(&self, k: u64) -> Self {
        self / ExactRational::from_integer(BigInt::from(k))
    }
}

/// Returns `r_k = [β^{k-1}] φ^k / k` for `k = 1..=terms`.
///
/// `phi` must hold at least `terms` coefficients (powers `0..terms`). The
/// `truncate` hook is applied to every coefficient of every power `φ^k` at
/// β-power `j`; rings that need an additional grading (total degree) prune
/// there, plain series pass a no-op.
pub fn lagrange_burmann<C, F>(phi: &[C], terms: usize, truncate: F) -> Vec<C>
where
    C: LbCoeff,
    F: Fn(&mut C, usize),
{
    assert!(phi.len() >= terms, "phi needs {terms} coefficients");
    let width = terms;
    let phi = &phi[..width];
    let mut power: Vec<C> = phi.to_vec();
    for (j, c) in power.iter_mut().enumerate() {
        truncate(c, j);
    }
    let mut out = Vec::with_capacity(terms);
    for k in 1..=terms {
        if k > 1 {
            power = mul_truncated(&power, phi, width, &truncate);
        }
        out.push(power[k - 1].divide_by(k as u64));
    }
    out
}

fn mul_truncated<C, F>(a: &[C], b: &[C], width: usize, truncate: &F) -> Vec<C>
where
    C: LbCoeff,
    F: Fn(&mut C, usize),
{
    let mut out = vec![C::additive_identity(); width];
    for (i, ai) in a.iter().enumerate() {
        if ai.vanishes() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(width - i) {
            if bj.vanishes() {
                continue;
            }
            out[i + j].accumulate(&ai.times(bj));
        }
    }
    for (j, c) in out.iter_mut().enumerate() {
        truncate(c, j);
    }
    out
}
