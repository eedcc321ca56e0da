//! Memoized censuses keyed by `(model, d)`, optionally backed by a
//! [`ContentStore`](crate::store::ContentStore).

use std::collections::HashMap;
use std::sync::Mutex;

use super::canonical::{canonical_classes, DimTable, CANONICAL_LIMIT};
use super::enumerate::{enumerate_with, EnumerateOptions};
use super::model::{WalkCensus, WalkModel};
use crate::error::Result;
use crate::store::ContentStore;

/// Dimensions from which symmetry-reduced counting replaces direct DFS.
pub const DIMPOLY_FROM_D: usize = 4;

#[derive(Default)]
pub struct CensusCache {
    censuses: Mutex<HashMap<(WalkModel, usize), WalkCensus>>,
    tables: Mutex<HashMap<WalkModel, DimTable>>,
    disk: Option<ContentStore>,
    options: EnumerateOptions,
}

impl CensusCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_store(store: ContentStore) -> Self {
        CensusCache { disk: Some(store), ..Self::default() }
    }

    pub fn with_options(mut self, options: EnumerateOptions) -> Self {
        self.options = options;
        self
    }

    /// Counts `c_1..c_n`. A cached census at least as long is reused;
    /// otherwise the walks are counted directly (small `d`) or through
    /// dimensional polynomials (large `d`).
    pub fn census(&self, model: WalkModel, d: usize, n: usize) -> Result<WalkCensus> {
        if let Some(c) = self.censuses.lock().unwrap().get(&(model, d)) {
            if c.max_length() >= n {
                return Ok(c.prefix(n));
            }
        }
        let key = (model, d);
        if let Some(disk) = &self.disk {
            if let Some(c) = disk.lookup::<_, WalkCensus>("census", &key) {
                if c.max_length() >= n && c.model == model && c.d == d {
                    self.censuses.lock().unwrap().insert(key, c.clone());
                    return Ok(c.prefix(n));
                }
            }
        }
        let fresh = if d >= DIMPOLY_FROM_D && model != WalkModel::Simple && n <= CANONICAL_LIMIT {
            self.dim_table(model, n)?.census(d)
        } else {
            enumerate_with(model, d, n, &self.options)?
        };
        if let Some(disk) = &self.disk {
            if !fresh.truncated() {
                disk.store("census", &key, &fresh)?;
            }
        }
        self.censuses.lock().unwrap().insert(key, fresh.clone());
        Ok(fresh)
    }

    pub fn dim_table(&self, model: WalkModel, n: usize) -> Result<DimTable> {
        if let Some(t) = self.tables.lock().unwrap().get(&model) {
            if t.n_max >= n {
                return Ok(t.clone());
            }
        }
        if let Some(disk) = &self.disk {
            if let Some(t) = disk.lookup::<_, DimTable>("dimtable", &model) {
                if t.n_max >= n && t.model == model {
                    self.tables.lock().unwrap().insert(model, t.clone());
                    return Ok(t);
                }
            }
        }
        let t = canonical_classes(model, n)?;
        if let Some(disk) = &self.disk {
            disk.store("dimtable", &model, &t)?;
        }
        self.tables.lock().unwrap().insert(model, t.clone());
        Ok(t)
    }
}
