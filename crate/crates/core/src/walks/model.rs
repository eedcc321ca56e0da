use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which self-intersections are forbidden.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WalkModel {
    /// `ω(i) ≠ ω(j)` for all `i ≠ j`.
    SelfAvoiding,
    /// `ω(i) ≠ ω(j)` for `0 < |i − j| ≤ τ`.
    Memory(u32),
    /// Nearest-neighbour steps, no constraint.
    Simple,
}

impl WalkModel {
    pub fn name(&self) -> &'static str {
        match self {
            WalkModel::SelfAvoiding => "saw",
            WalkModel::Memory(_) => "memory",
            WalkModel::Simple => "simple",
        }
    }

    pub fn tau(&self) -> Tau {
        match self {
            WalkModel::SelfAvoiding => Tau::Infinite,
            WalkModel::Memory(t) => Tau::Finite(*t),
            WalkModel::Simple => Tau::Finite(0),
        }
    }

    /// Look-back window for the occupancy test; `None` means the whole path.
    pub(crate) fn window(&self) -> Option<usize> {
        match self {
            WalkModel::SelfAvoiding => None,
            WalkModel::Memory(t) => Some(*t as usize),
            WalkModel::Simple => Some(0),
        }
    }

    pub fn from_parts(name: &str, tau: Option<u32>) -> Result<Self> {
        match (name, tau) {
            ("saw", _) => Ok(WalkModel::SelfAvoiding),
            ("simple", _) => Ok(WalkModel::Simple),
            ("memory", Some(t)) => Ok(WalkModel::Memory(t)),
            ("memory", None) => Err(Error::InvalidArgument("memory model needs tau".into())),
            (other, _) => Err(Error::InvalidArgument(format!("unknown model {other:?}"))),
        }
    }

    /// Upper bound on the number of length-`n` walks, used for budgeting:
    /// `(2d)^n` for simple walks, `2d(2d−1)^{n−1}` once reversals are banned.
    pub(crate) fn count_bound(&self, d: usize, n: usize) -> f64 {
        let two_d = 2.0 * d as f64;
        match self.window() {
            Some(w) if w <= 1 => two_d.powi(n as i32),
            _ => two_d * (two_d - 1.0).powi(n as i32 - 1),
        }
    }
}

impl FromStr for WalkModel {
    type Err = Error;

    /// Accepts the `Display` form: `saw`, `simple`, `memory-4`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('-') {
            Some(("memory", t)) => t
                .parse()
                .map(WalkModel::Memory)
                .map_err(|_| Error::InvalidArgument(format!("bad memory length in {s:?}"))),
            _ => WalkModel::from_parts(s, None),
        }
    }
}

impl Serialize for WalkModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for WalkModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for WalkModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WalkModel::Memory(t) => write!(f, "memory-{t}"),
            other => write!(f, "{}", other.name()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tau {
    Finite(u32),
    Infinite,
}

impl Serialize for Tau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Tau::Finite(t) => s.serialize_u32(*t),
            Tau::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Tau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) if s == "inf" => Ok(Tau::Infinite),
            serde_json::Value::Number(n) => n
                .as_u64()
                .and_then(|v| u32::try_from(v).ok())
                .map(Tau::Finite)
                .ok_or_else(|| D::Error::custom("tau must be a small nonnegative integer")),
            other => Err(D::Error::custom(format!("invalid tau {other}"))),
        }
    }
}

/// Exact walk counts from the origin, `counts[n-1] = c_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkCensus {
    pub model: WalkModel,
    pub d: usize,
    pub counts: Vec<BigUint>,
    /// Length the caller asked for; larger than `max_length()` when the
    /// node budget cut the run short.
    pub requested: usize,
}

impl WalkCensus {
    pub fn max_length(&self) -> usize {
        self.counts.len()
    }

    pub fn truncated(&self) -> bool {
        self.counts.len() < self.requested
    }

    /// `c_n` for `1 ≤ n ≤ max_length()`.
    pub fn count(&self, n: usize) -> &BigUint {
        &self.counts[n - 1]
    }

    /// Keeps the first `n` lengths.
    pub fn prefix(&self, n: usize) -> WalkCensus {
        WalkCensus {
            model: self.model,
            d: self.d,
            counts: self.counts[..n.min(self.counts.len())].to_vec(),
            requested: n,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (i, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{},{}\n", i + 1, c));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct CensusRepr {
    model: String,
    d: usize,
    tau: Tau,
    counts: Vec<String>,
}

impl Serialize for WalkCensus {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CensusRepr {
            model: self.model.name().to_string(),
            d: self.d,
            tau: self.model.tau(),
            counts: self.counts.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WalkCensus {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CensusRepr::deserialize(d)?;
        let model = match (repr.model.as_str(), repr.tau) {
            ("saw", Tau::Infinite) => WalkModel::SelfAvoiding,
            ("simple", Tau::Finite(0)) => WalkModel::Simple,
            ("memory", Tau::Finite(t)) => WalkModel::Memory(t),
            (m, t) => return Err(D::Error::custom(format!("inconsistent model {m:?} with tau {t:?}"))),
        };
        let counts = repr
            .counts
            .iter()
            .map(|c| c.parse::<BigUint>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(WalkCensus { model, d: repr.d, requested: counts.len(), counts })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_json_schema() {
        let c = WalkCensus {
            model: WalkModel::SelfAvoiding,
            d: 2,
            counts: vec![4u32, 12].into_iter().map(BigUint::from).collect(),
            requested: 2,
        };
        let j = serde_json::to_string(&c).unwrap();
        assert_eq!(j, r#"{"model":"saw","d":2,"tau":"inf","counts":["4","12"]}"#);
        assert_eq!(serde_json::from_str::<WalkCensus>(&j).unwrap(), c);
        let m = WalkCensus { model: WalkModel::Memory(4), ..c.clone() };
        let j = serde_json::to_string(&m).unwrap();
        assert!(j.contains(r#""tau":4"#));
        assert_eq!(serde_json::from_str::<WalkCensus>(&j).unwrap(), m);
        assert!(serde_json::from_str::<WalkCensus>(
            r#"{"model":"saw","d":2,"tau":3,"counts":[]}"#
        )
        .is_err());
    }

    #[test]
    fn csv_export() {
        let c = WalkCensus {
            model: WalkModel::Simple,
            d: 1,
            counts: vec![BigUint::from(2u32), BigUint::from(4u32)],
            requested: 2,
        };
        assert_eq!(c.to_csv(), "n,count\n1,2\n2,4\n");
    }
}
