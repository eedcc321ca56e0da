//! The spherical model: `K_c(d) = ½∫₀^∞ e^{−d·g(x)} dx` with
//! `g(x) = x − log I_0(x)`, its divergent `1/d` expansion from the exact
//! coefficients of `g⁻¹`, and two Borel evaluations of that expansion.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rational::{factorial, to_f64, ExactRational};
use crate::exact::{Pade, PowerSeries};
use crate::numeric::bessel::{i0_over_envelope, i0e, one_minus_i1_over_i0, x_minus_log_i0};
use crate::numeric::{integrate, QuadratureOptions};

/// `I_0(x) = Σ_k (x/2)^{2k}/(k!)²` through `x^order`.
pub fn i0_series(order: usize) -> PowerSeries {
    let coeffs = (0..=order)
        .map(|n| {
            if n % 2 == 1 {
                return ExactRational::zero();
            }
            let k = n / 2;
            let kf = BigInt::from(factorial(k));
            ExactRational::new(BigInt::from(1), &kf * &kf * BigInt::from(4).pow(k as u32))
        })
        .collect();
    PowerSeries::new(coeffs)
}

/// `g(x) = x − log I_0(x)` through `x^order`.
pub fn g_series(order: usize) -> Result<PowerSeries> {
    if order < 2 {
        return Err(Error::InvalidArgument("g needs order >= 2".into()));
    }
    let log_i0 = i0_series(order).log()?;
    Ok(&PowerSeries::x(order) - &log_i0)
}

#[derive(Clone, Debug, Serialize)]
pub struct SphericalSeries {
    pub g: PowerSeries,
    pub g_inverse: PowerSeries,
}

impl SphericalSeries {
    pub fn new(order: usize) -> Result<Self> {
        let g = g_series(order)?;
        let g_inverse = g.revert()?;
        Ok(SphericalSeries { g, g_inverse })
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    /// `a_1..a_order`, the coefficients of `g⁻¹(t) = Σ a_n t^n`.
    pub fn a(&self) -> &[ExactRational] {
        &self.g_inverse.coeffs()[1..]
    }
}

/// `a_1..a_order`.
pub fn a_coefficients(order: usize) -> Result<Vec<ExactRational>> {
    Ok(SphericalSeries::new(order)?.a().to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignRuns {
    /// `(sign, length)` with `sign = ±1`, consecutive signs opposite.
    pub runs: Vec<(i8, usize)>,
}

impl SignRuns {
    pub fn lengths(&self) -> Vec<usize> {
        self.runs.iter().map(|r| r.1).collect()
    }

    /// Run lengths known to be complete: the final run may continue past
    /// the computed order and is dropped.
    pub fn complete_lengths(&self) -> Vec<usize> {
        let mut l = self.lengths();
        l.pop();
        l
    }
}

/// Run-length encoding of the signs of `a[0], a[1], …` (`a[0] = a_1`).
pub fn sign_runs(a: &[ExactRational]) -> Result<SignRuns> {
    let mut runs: Vec<(i8, usize)> = Vec::new();
    for (i, v) in a.iter().enumerate() {
        if v.is_zero() {
            return Err(Error::ZeroCoefficient(i + 1));
        }
        let s = if v.is_positive() { 1 } else { -1 };
        match runs.last_mut() {
            Some((sign, len)) if *sign == s => *len += 1,
            _ => runs.push((s, 1)),
        }
    }
    Ok(SignRuns { runs })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct KcDirect {
    pub value: f64,
    pub error: f64,
}

/// Where the `x`-integral is split between a plain panel and the mapped tail.
const TAIL_START: f64 = 40.0;

/// `K_c(d)` by quadrature in `x`. `[0, X]` is integrated directly; the tail
/// `[X, ∞)` is mapped by `x = X/v²` onto `(0, 1]`, where the integrand
/// behaves like `v^{d−3}` and stays bounded.
pub fn kc_direct(d: u32, tol: f64) -> Result<KcDirect> {
    if d <= 2 {
        return Err(Error::InvalidArgument(format!("K_c diverges for d = {d} <= 2")));
    }
    let df = d as f64;
    let opts = QuadratureOptions { abs_tol: tol * 1e-3, rel_tol: tol / 4.0, max_panels: 50_000 };
    let head = integrate(|x| i0e(x).powf(df), 0.0, TAIL_START, &opts)?;
    let x0 = TAIL_START;
    // i0e(x)·√(2πx) → 1, so write the integrand as S(x)^d (2πX)^{−d/2} v^d · 2X v^{−3}.
    let prefactor = 2.0 * x0 * (2.0 * std::f64::consts::PI * x0).powf(-df / 2.0);
    let tail = integrate(
        |v| {
            if v <= 0.0 {
                return 0.0;
            }
            prefactor * i0_over_envelope(x0 / (v * v)).powf(df) * v.powf(df - 3.0)
        },
        0.0,
        1.0,
        &opts,
    )?;
    Ok(KcDirect { value: 0.5 * (head.value + tail.value), error: 0.5 * (head.error + tail.error) })
}

/// Solves `g(x) = t` for `t ≥ 0`. Since `g(x) ≤ x`, the root lies at or
/// above `t`; the upper end starts at `t + 2 + 4t` and doubles until it
/// brackets, because `g⁻¹(t)` grows like `e^{2t}`.
pub fn g_inverse(t: f64) -> Result<f64> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::Bracket(t));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let mut lo = t;
    let mut hi = t + 2.0 + 4.0 * t;
    let mut doublings = 0;
    while x_minus_log_i0(hi) < t {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > 1100 || !hi.is_finite() {
            return Err(Error::Bracket(t));
        }
    }
    while hi - lo > 1e-13 * hi {
        let mid = 0.5 * (lo + hi);
        if x_minus_log_i0(mid) < t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    Ok(x - (x_minus_log_i0(x) - t) / one_minus_i1_over_i0(x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum BorelMethod {
    /// `(g⁻¹)′(t) = 1/g′(g⁻¹(t))` with `g⁻¹` by root finding.
    InverseFunction,
    /// `[m/n]` Padé approximant of `(g⁻¹)′` from the exact `a_n`.
    Pade { m: usize, n: usize },
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct KcBorel {
    pub value: f64,
    pub error: f64,
    pub method: BorelMethod,
    /// Upper end of the `t`-integration.
    pub cutoff: f64,
}

/// `½∫₀^∞ e^{−td} (g⁻¹)′(t) dt`. `a` is needed only by the Padé method.
pub fn kc_borel(d: u32, method: BorelMethod, a: &[ExactRational], tol: f64) -> Result<KcBorel> {
    if d <= 2 {
        return Err(Error::InvalidArgument(format!("K_c diverges for d = {d} <= 2")));
    }
    let df = d as f64;
    let opts = QuadratureOptions { abs_tol: tol * 1e-3, rel_tol: tol / 4.0, max_panels: 50_000 };
    match method {
        BorelMethod::InverseFunction => {
            // (g⁻¹)′(t) ≈ 2g⁻¹(t) ~ e^{2t}/π, so the integrand decays like
            // e^{−(d−2)t}; stop once the neglected tail is below tol.
            let tail_bound = |t: f64| -> Result<f64> {
                let x = g_inverse(t)?;
                Ok((-t * df).exp() / one_minus_i1_over_i0(x) / (df - 2.0))
            };
            let mut cutoff = 10.0;
            while tail_bound(cutoff)? > tol * 1e-3 {
                cutoff *= 1.25;
            }
            let derivative = |t: f64| match g_inverse(t) {
                Ok(x) => (-t * df).exp() / one_minus_i1_over_i0(x),
                Err(_) => f64::NAN,
            };
            let r = integrate(derivative, 0.0, cutoff, &opts)?;
            let tail = tail_bound(cutoff)?;
            Ok(KcBorel { value: 0.5 * r.value, error: 0.5 * (r.error + tail), method, cutoff })
        }
        BorelMethod::Pade { m, n } => {
            // coefficients of (g⁻¹)′: (j+1)·a_{j+1}
            let derivative: Vec<ExactRational> = a
                .iter()
                .enumerate()
                .map(|(j, v)| v * ExactRational::from_integer(BigInt::from(j + 1)))
                .collect();
            let approximant = Pade::build(&derivative, m, n)?.to_f64();
            let cutoff = ((1.0 / tol).ln() + 30.0) / df;
            if let Some(pole) = approximant.first_pole_in(cutoff) {
                return Err(Error::PoleOnContour(pole));
            }
            let r = integrate(|t| (-t * df).exp() * approximant.eval(t), 0.0, cutoff, &opts)?;
            Ok(KcBorel { value: 0.5 * r.value, error: 0.5 * r.error, method, cutoff })
        }
    }
}

/// Partial sums `½Σ_{n≤N} a_n n!/d^n` for `N = 1..=a.len()`, summed exactly
/// and converted at the end.
pub fn kc_asymptotic(d: u32, a: &[ExactRational]) -> Vec<f64> {
    let mut sum = ExactRational::zero();
    let mut weight = ExactRational::from_integer(BigInt::from(1));
    let dd = ExactRational::from_integer(BigInt::from(d));
    a.iter()
        .enumerate()
        .map(|(i, an)| {
            let n = i + 1;
            weight = &weight * ExactRational::from_integer(BigInt::from(n)) / &dd;
            sum += an * &weight;
            to_f64(&sum) / 2.0
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct KcResult {
    pub d: u32,
    pub direct: KcDirect,
    pub borel_inverse_function: KcBorel,
    pub borel_pade: Option<KcBorel>,
    /// Why the Padé evaluation is absent, if it is.
    pub pade_failure: Option<String>,
    pub asymptotic_partials: Vec<f64>,
    /// `N` minimizing `|partial_N − direct|`.
    pub optimal_truncation: usize,
}

pub fn kc_result(d: u32, a: &[ExactRational], pade: (usize, usize), tol: f64) -> Result<KcResult> {
    let direct = kc_direct(d, tol)?;
    let borel_inverse_function = kc_borel(d, BorelMethod::InverseFunction, a, tol)?;
    let (borel_pade, pade_failure) =
        match kc_borel(d, BorelMethod::Pade { m: pade.0, n: pade.1 }, a, tol) {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        };
    let asymptotic_partials = kc_asymptotic(d, a);
    let optimal_truncation = asymptotic_partials
        .iter()
        .enumerate()
        .min_by(|x, y| (x.1 - direct.value).abs().total_cmp(&(y.1 - direct.value).abs()))
        .map(|(i, _)| i + 1)
        .unwrap_or(0);
    Ok(KcResult {
        d,
        direct,
        borel_inverse_function,
        borel_pade,
        pade_failure,
        asymptotic_partials,
        optimal_truncation,
    })
}

/// `N,partial_sum,relative_error` rows for plotting the divergence.
pub fn partial_sum_csv(partials: &[f64], reference: f64) -> String {
    let mut out = String::from("N,partial_sum,relative_error\n");
    for (i, p) in partials.iter().enumerate() {
        out.push_str(&format!("{},{:.17e},{:.6e}\n", i + 1, p, ((p - reference) / reference).abs()));
    }
    out
}
