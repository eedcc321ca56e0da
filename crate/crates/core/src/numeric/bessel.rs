//! Modified Bessel functions `I_0`, `I_1` for `x ≥ 0`, by power series below
//! [`SWITCH`] and by the large-argument expansion above it.

use std::f64::consts::PI;

/// Crossover between the power series and the asymptotic expansion.
pub const SWITCH: f64 = 20.0;

/// `Σ_{k≥1} (x²/4)^k / (k!)² = I_0(x) − 1`.
fn i0_minus_one_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 1..500 {
        term *= q / (k * k) as f64;
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    sum
}

/// `I_1(x) = (x/2) Σ (x²/4)^k / (k!(k+1)!)`.
fn i1_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 0.5 * x;
    let mut sum = term;
    for k in 1..500 {
        term *= q / (k * (k + 1)) as f64;
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    sum
}

/// Sums `Σ_k c_k x^{−k}` with `c_0 = 1` and
/// `c_k = c_{k−1}(4ν² − (2k−1)²)/(−8k)`, stopping at the smallest term.
fn asymptotic_sum(nu: f64, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        let next = term * (odd * odd - 4.0 * nu * nu) / (8.0 * k as f64 * x);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// `Σ_{k≥1} (c_k(0) − c_k(1)) x^{−k}`, so that
/// `e^{−x}(I_0 − I_1)(x) ≈ difference / √(2πx)` without cancellation.
fn asymptotic_difference(x: f64) -> f64 {
    let (mut p, mut q) = (1.0f64, 1.0f64);
    let mut sum = 0.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        let scale = 8.0 * k as f64 * x;
        p *= odd * odd / scale;
        q *= (odd * odd - 4.0) / scale;
        let term = p - q;
        if term.abs() >= last {
            break;
        }
        sum += term;
        last = term.abs();
        if last < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// `e^{−x} I_0(x)`.
pub fn i0e(x: f64) -> f64 {
    let x = x.abs();
    if x < SWITCH {
        (-x).exp() * (1.0 + i0_minus_one_series(x))
    } else {
        asymptotic_sum(0.0, x) / (2.0 * PI * x).sqrt()
    }
}

/// `I_0(x) / (e^x/√(2πx))`, finite for every `x` including `+∞`.
pub fn i0_over_envelope(x: f64) -> f64 {
    if x < SWITCH {
        i0e(x) * (2.0 * PI * x).sqrt()
    } else {
        asymptotic_sum(0.0, x)
    }
}

/// `e^{−x} I_1(x)`.
pub fn i1e(x: f64) -> f64 {
    if x < SWITCH {
        (-x).exp() * i1_series(x)
    } else {
        asymptotic_sum(1.0, x) / (2.0 * PI * x).sqrt()
    }
}

/// `x − log I_0(x)`, accurate relative to its own size near 0.
pub fn x_minus_log_i0(x: f64) -> f64 {
    if x < SWITCH {
        x - i0_minus_one_series(x).ln_1p()
    } else {
        0.5 * (2.0 * PI * x).ln() - asymptotic_sum(0.0, x).ln()
    }
}

/// `1 − I_1(x)/I_0(x)`, the derivative of [`x_minus_log_i0`]; tends to
/// `1/(2x)` for large `x` and is computed there without cancellation.
pub fn one_minus_i1_over_i0(x: f64) -> f64 {
    if x < SWITCH {
        1.0 - i1_series(x) / (1.0 + i0_minus_one_series(x))
    } else {
        asymptotic_difference(x) / asymptotic_sum(0.0, x)
    }
}
