use std::collections::BTreeMap;
use std::path::Path;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, parse_rational, ExactRational};

/// Sparse table of `c_{a,b}` on the index set `I = {(a,b): b ≥ 1, b+1 ≤ a ≤ 2b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CTable {
    entries: BTreeMap<(usize, usize), ExactRational>,
    max_b: usize,
}

pub fn in_index_set(a: i64, b: i64) -> bool {
    b >= 1 && a >= b + 1 && a <= 2 * b
}

impl CTable {
    pub fn empty(max_b: usize) -> Self {
        CTable { entries: BTreeMap::new(), max_b }
    }

    pub fn max_b(&self) -> usize {
        self.max_b
    }

    /// Inserts (or with a zero value, removes) `c_{a,b}`.
    pub fn set(&mut self, a: usize, b: usize, value: ExactRational) -> Result<()> {
        if !in_index_set(a as i64, b as i64) {
            return Err(Error::KeyOutsideIndexSet { a: a as i64, b: b as i64 });
        }
        if b > self.max_b {
            return Err(Error::KeyAboveMaxB { a: a as i64, b: b as i64, max_b: self.max_b as i64 });
        }
        if value.is_zero() {
            self.entries.remove(&(a, b));
        } else {
            self.entries.insert((a, b), value);
        }
        Ok(())
    }

    pub fn with(mut self, a: usize, b: usize, value: ExactRational) -> Result<Self> {
        self.set(a, b, value)?;
        Ok(self)
    }

    pub fn get(&self, a: usize, b: usize) -> ExactRational {
        self.entries.get(&(a, b)).cloned().unwrap_or_else(ExactRational::zero)
    }

    /// Nonzero entries in lexicographic `(a, b)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &ExactRational)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    /// Nonzero entries with `b ≤ max_b`, lexicographic in `(a, b)`.
    pub fn entries_up_to_b(&self, max_b: usize) -> Vec<((usize, usize), ExactRational)> {
        self.entries
            .iter()
            .filter(|((_, b), _)| *b <= max_b)
            .map(|(&k, v)| (k, v.clone()))
            .collect()
    }

    /// Row sum `c_b = Σ_a |c_{a,b}|`.
    pub fn row_sum(&self, b: usize) -> ExactRational {
        self.entries
            .iter()
            .filter(|((_, bb), _)| *bb == b)
            .map(|(_, v)| v.abs())
            .fold(ExactRational::zero(), |a, b| a + b)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let repr: CTableRepr = serde_json::from_str(text)?;
        repr.try_into()
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CTableRepr::from(self)).expect("table serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    a: i64,
    b: i64,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct CTableRepr {
    max_b: i64,
    entries: Vec<EntryRepr>,
}

impl TryFrom<CTableRepr> for CTable {
    type Error = Error;
    fn try_from(repr: CTableRepr) -> Result<Self> {
        if repr.max_b < 0 {
            return Err(Error::InvalidArgument(format!("max_b = {} is negative", repr.max_b)));
        }
        let mut table = CTable::empty(repr.max_b as usize);
        for e in repr.entries {
            if !in_index_set(e.a, e.b) {
                return Err(Error::KeyOutsideIndexSet { a: e.a, b: e.b });
            }
            if e.b > repr.max_b {
                return Err(Error::KeyAboveMaxB { a: e.a, b: e.b, max_b: repr.max_b });
            }
            table.set(e.a as usize, e.b as usize, parse_rational(&e.value)?)?;
        }
        Ok(table)
    }
}

impl From<&CTable> for CTableRepr {
    fn from(t: &CTable) -> Self {
        CTableRepr {
            max_b: t.max_b as i64,
            entries: t
                .entries
                .iter()
                .map(|(&(a, b), v)| EntryRepr { a: a as i64, b: b as i64, value: format_rational(v) })
                .collect(),
        }
    }
}

impl Serialize for CTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CTableRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        CTableRepr::deserialize(d)?.try_into().map_err(D::Error::custom)
    }
}
