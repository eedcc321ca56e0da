//! Oracles shared by the integration tests.
#![allow(dead_code)]

use ddseries::exact::rational::ExactRational;
use num_traits::{One, Zero};

pub type Poly = Vec<ExactRational>;

pub fn poly_mul(a: &Poly, b: &Poly, deg: usize) -> Poly {
    let mut out = vec![ExactRational::zero(); deg + 1];
    for (i, x) in a.iter().enumerate().take(deg + 1) {
        for (j, y) in b.iter().enumerate().take(deg + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Inverse of `f = Σ_{k≥1} f_k x^k` by undetermined coefficients: the
/// coefficient of `t^n` in `f(g(t))` is linear in `g_n` with slope `f_1`.
pub fn revert_by_undetermined_coefficients(f: &[ExactRational]) -> Poly {
    let n_max = f.len() - 1;
    let mut g = vec![ExactRational::zero(); n_max + 1];
    for n in 1..=n_max {
        g[n] = ExactRational::zero();
        let mut composed = vec![ExactRational::zero(); n_max + 1];
        let mut power = {
            let mut p = vec![ExactRational::zero(); n_max + 1];
            p[0] = ExactRational::one();
            p
        };
        for fk in f.iter().skip(1) {
            power = poly_mul(&power, &g, n_max);
            for (c, p) in composed.iter_mut().zip(&power) {
                *c += fk * p;
            }
        }
        let target = if n == 1 { ExactRational::one() } else { ExactRational::zero() };
        g[n] = (target - &composed[n]) / &f[1];
    }
    g
}


/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (1..=n)
        .map(|i| {
            let mut x = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
            loop {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    let w = 2.0 / ((1.0 - x * x) * dp * dp);
                    return (x, w);
                }
            }
        })
        .collect()
}

pub fn composite<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize, rule: &[(f64, f64)]) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|p| {
            let (lo, hi) = (a + p as f64 * h, a + (p + 1) as f64 * h);
            rule.iter().map(|(x, w)| w * f(0.5 * (lo + hi) + 0.5 * (hi - lo) * x)).sum::<f64>() * 0.5 * (hi - lo)
        })
        .sum()
}

/// `(1/π³)∫_{[0,π]³} dθ / (3 − Σ cos θ_i)`, with the third angle integrated
/// in closed form and polar coordinates about the origin, where the
/// remaining integrand behaves like `1/r`.
pub fn lattice_green_function_3d() -> f64 {
    let rule = gauss_legendre(24);
    let pi = std::f64::consts::PI;
    let radial = |phi: f64| {
        let r_max = pi / phi.cos();
        composite(
            |r| {
                let (x, y) = (r * phi.cos(), r * phi.sin());
                let a = 3.0 - x.cos() - y.cos();
                // 1/√(a² − 1) = 1/√((a − 1)(a + 1)), with a − 1 computed without cancellation
                let am1 = 2.0 * ((x / 2.0).sin().powi(2) + (y / 2.0).sin().powi(2));
                r / (am1 * (a + 1.0)).sqrt()
            },
            0.0,
            r_max,
            16,
            &rule,
        )
    };
    // Symmetric in the two angles: twice the triangle below the diagonal.
    2.0 * composite(radial, 0.0, pi / 4.0, 16, &rule) / (pi * pi)
}

/// `∫_0^∞ e^{−t} ln(1+t) dt = e·E_1(1)`, with `E_1` from its convergent series.
pub fn alternating_toy_oracle() -> f64 {
    let euler_gamma = 0.577_215_664_901_532_9;
    let mut term = 1.0f64;
    let mut series = 0.0;
    for k in 1..40 {
        term *= -1.0 / k as f64;
        series += term / k as f64;
    }
    std::f64::consts::E * (-euler_gamma - series)
}
