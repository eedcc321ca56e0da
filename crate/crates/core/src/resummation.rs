//! Borel–Padé summation of a coefficient list:
//! `Σ α_n s^n ↦ (1/s)∫₀^∞ e^{−t/s} B(t) dt` with `B(t) = Σ α_n t^n/n!`
//! continued along the positive axis by a Padé approximant.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{factorial, format_rational, parse_rational, to_f64, ExactRational};
use crate::exact::{Pade, PowerSeries};
use crate::numeric::{integrate, QuadratureOptions};

/// The expansion coefficients of `β_c` printed for the self-avoiding walk.
pub const SAW_LEADING: [i64; 6] = [1, 1, 2, 6, 27, 157];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Paper,
    ExternalFile,
    Synthetic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SourceEntry {
    pub n: usize,
    #[serde(with = "rational_text")]
    pub value: ExactRational,
    pub tag: Provenance,
}

mod rational_text {
    use super::*;

    pub fn serialize<S: serde::Serializer>(v: &ExactRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(v))
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<ExactRational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Coefficients `α_1, α_2, …` with a provenance tag on every entry.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientSource {
    pub entries: Vec<SourceEntry>,
    pub origin: String,
}

impl CoefficientSource {
    /// Entries must be exactly `n = 1, 2, …, L` in order.
    pub fn new(entries: Vec<SourceEntry>, origin: &str) -> Result<Self> {
        for (i, e) in entries.iter().enumerate() {
            if e.n != i + 1 {
                return Err(Error::SourceViolation {
                    n: e.n,
                    reason: format!("expected index {}; entries must run 1, 2, 3, …", i + 1),
                });
            }
        }
        Ok(CoefficientSource { entries, origin: origin.to_string() })
    }

    pub fn tagged(values: Vec<ExactRational>, tag: Provenance, origin: &str) -> Self {
        let entries =
            values.into_iter().enumerate().map(|(i, value)| SourceEntry { n: i + 1, value, tag }).collect();
        CoefficientSource { entries, origin: origin.to_string() }
    }

    pub fn synthetic(values: Vec<ExactRational>, origin: &str) -> Self {
        Self::tagged(values, Provenance::Synthetic, origin)
    }

    /// `α_1..α_6` of the self-avoiding walk.
    pub fn saw_leading() -> Self {
        Self::tagged(
            SAW_LEADING.iter().map(|&v| ExactRational::from_integer(v.into())).collect(),
            Provenance::Paper,
            "printed expansion of beta_c in powers of 1/(2d)",
        )
    }

    /// Appends further entries, e.g. externally supplied `α_7, α_8, …`.
    pub fn extended(mut self, more: Vec<SourceEntry>, origin: &str) -> Result<Self> {
        self.entries.extend(more);
        let origin = format!("{} + {}", self.origin, origin);
        Self::new(self.entries, &origin)
    }

    /// `α_n = 1`: `Σ s^n = s/(1−s)`, `B(t) = e^t − 1`.
    pub fn geometric(len: usize) -> Self {
        Self::synthetic(vec![ExactRational::from_integer(1.into()); len], "geometric toy")
    }

    /// `α_n = (−1)^{n+1}(n−1)!`: `B(t) = log(1+t)`.
    pub fn alternating_factorial(len: usize) -> Self {
        let values = (1..=len)
            .map(|n| {
                let f = BigInt::from(factorial(n - 1));
                ExactRational::from_integer(if n % 2 == 1 { f } else { -f })
            })
            .collect();
        Self::synthetic(values, "alternating factorial toy")
    }

    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        let entries: Vec<SourceEntry> = serde_json::from_str(text)?;
        Self::new(entries, origin)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?, &path.display().to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries).expect("entries serialize")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn values(&self) -> Vec<ExactRational> {
        self.entries.iter().map(|e| e.value.clone()).collect()
    }

    /// `Σ α_n s^n` as a series with zero constant term.
    pub fn series(&self) -> PowerSeries {
        let mut c = vec![ExactRational::zero()];
        c.extend(self.values());
        PowerSeries::new(c)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SourceReport {
    pub origin: String,
    /// Sign of each entry, `0` for zero.
    pub signs: Vec<i8>,
    pub notes: Vec<String>,
}

/// Paper-tagged entries 1..6 must be `1, 1, 2, 6, 27, 157`; external
/// entries 12 and 13, when present, must be negative.
pub fn validate_source(src: &CoefficientSource) -> Result<SourceReport> {
    let mut notes = Vec::new();
    for e in &src.entries {
        match e.tag {
            Provenance::Paper => {
                let expected = SAW_LEADING
                    .get(e.n - 1)
                    .map(|&v| ExactRational::from_integer(v.into()))
                    .ok_or_else(|| Error::SourceViolation {
                        n: e.n,
                        reason: "only entries 1..6 can carry the paper tag".into(),
                    })?;
                if e.value != expected {
                    return Err(Error::SourceViolation {
                        n: e.n,
                        reason: format!("expected {}, found {}", expected, format_rational(&e.value)),
                    });
                }
            }
            Provenance::ExternalFile if (e.n == 12 || e.n == 13) && !e.value.is_negative() => {
                return Err(Error::SourceViolation {
                    n: e.n,
                    reason: format!("must be negative, found {}", format_rational(&e.value)),
                });
            }
            _ => {}
        }
    }
    if src.entries.iter().all(|e| e.tag == Provenance::Synthetic) {
        notes.push("synthetic source: no printed constraints apply".into());
    }
    let signs = src
        .entries
        .iter()
        .map(|e| if e.value.is_zero() { 0 } else if e.value.is_positive() { 1 } else { -1 })
        .collect();
    Ok(SourceReport { origin: src.origin.clone(), signs, notes })
}

/// Running sums `Σ_{n≤M} α_n s^n`, exact in `s` as given, converted last.
pub fn partial_sums(src: &CoefficientSource, s: f64) -> Vec<f64> {
    let Some(s_exact) = ExactRational::from_f64(s) else {
        return vec![f64::NAN; src.len()];
    };
    let mut power = ExactRational::from_integer(1.into());
    let mut sum = ExactRational::zero();
    src.entries
        .iter()
        .map(|e| {
            power = &power * &s_exact;
            sum += &e.value * &power;
            to_f64(&sum)
        })
        .collect()
}

/// Float Borel coefficients `α_n/n!`, index 0 holding the zero constant.
pub fn borel_coefficients_f64(src: &CoefficientSource) -> Vec<f64> {
    let mut out = vec![0.0];
    let mut fact = 1.0f64;
    for e in &src.entries {
        fact *= e.n as f64;
        out.push(to_f64(&e.value) / fact);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct BorelMethodInfo {
    pub pade_m: usize,
    pub pade_n: usize,
    /// Requested denominator degree, when a singular system forced a lower one.
    pub reduced_from: Option<usize>,
    pub quadrature_tol: f64,
    pub cutoff: f64,
    pub panels: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BorelSumResult {
    pub s: f64,
    pub value: f64,
    pub method: BorelMethodInfo,
    /// Quadrature error plus the neglected Laplace tail.
    pub error_estimate: f64,
}

/// `⌊(L−1)/2⌋` for coefficients `α_1..α_L`.
pub fn default_pade_order(src: &CoefficientSource) -> usize {
    src.len().saturating_sub(1) / 2
}

/// Borel–Padé sum at `s > 0` with a `[pade_m/pade_n]` approximant of `B`.
pub fn borel_sum(src: &CoefficientSource, s: f64, pade_m: usize, pade_n: usize, tol: f64) -> Result<BorelSumResult> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidArgument(format!("evaluation point s = {s} must be positive")));
    }
    let borel = src.series().borel_transform();
    let pade = Pade::build(borel.coeffs(), pade_m, pade_n)?;
    let approximant = pade.to_f64();
    let integrand = |t: f64| (-t / s).exp() * approximant.eval(t) / s;

    // Start at s·log(1/tol) plus a margin and push outwards until the
    // integrand is negligible; B may grow, so the nominal cutoff can be short.
    let mut cutoff = s * ((1.0 / tol).ln() + 10.0);
    let tail = |t: f64| (integrand(t) * s).abs();
    let mut guard = 0;
    while tail(cutoff) > tol * 1e-2 || tail(0.9 * cutoff) > tol * 1e-2 {
        cutoff *= 1.5;
        guard += 1;
        if guard > 60 {
            return Err(Error::Quadrature { tol, estimate: f64::NAN, error: tail(cutoff) });
        }
    }
    if let Some(pole) = approximant.first_pole_in(cutoff) {
        return Err(Error::PoleOnContour(pole));
    }
    let opts = QuadratureOptions { abs_tol: tol * 1e-2, rel_tol: tol / 4.0, max_panels: 50_000 };
    let r = integrate(integrand, 0.0, cutoff, &opts)?;
    Ok(BorelSumResult {
        s,
        value: r.value,
        method: BorelMethodInfo {
            pade_m,
            pade_n: pade.denominator.len() - 1,
            reduced_from: pade.reduced_from,
            quadrature_tol: tol,
            cutoff,
            panels: r.panels,
        },
        error_estimate: r.error + tail(cutoff),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn paper_entries_pass_and_bad_signs_fail() {
        let src = CoefficientSource::saw_leading();
        assert!(validate_source(&src).is_ok());
        let mut bad = src.clone();
        bad.entries[4].value = rat(26, 1);
        assert!(matches!(validate_source(&bad), Err(Error::SourceViolation { n: 5, .. })));
        let external: Vec<SourceEntry> = (7..=13)
            .map(|n| SourceEntry {
                n,
                value: rat(if n == 12 { 5 } else { -1 }, 1),
                tag: Provenance::ExternalFile,
            })
            .collect();
        let joined = src.extended(external, "test").unwrap();
        assert!(matches!(validate_source(&joined), Err(Error::SourceViolation { n: 12, .. })));
    }

    #[test]
    fn partial_sums_of_printed_coefficients() {
        let p = partial_sums(&CoefficientSource::saw_leading(), 0.1);
        for (got, want) in p.iter().zip([0.1, 0.11, 0.112, 0.1126]) {
            assert!((got - want).abs() < 1e-15);
        }
        assert!(partial_sums(&CoefficientSource::synthetic(vec![], "empty"), 0.1).is_empty());
    }

    #[test]
    fn json_round_trip() {
        let src = CoefficientSource::saw_leading();
        let back = CoefficientSource::from_json(&src.to_json(), &src.origin).unwrap();
        assert_eq!(back.entries, src.entries);
        assert!(src.to_json().contains(r#""tag": "paper""#));
        assert!(CoefficientSource::from_json(r#"[{"n":2,"value":"1/1","tag":"synthetic"}]"#, "x").is_err());
    }
}
