//! Content-addressed census cache and reproducible run manifests.
//!
//! Run with `cargo run --example cache_and_manifest`.

use ddseries::store::{ContentStore, RunManifest};
use ddseries::walks::{CensusCache, WalkModel};

fn main() -> ddseries::Result<()> {
    let dir = std::env::temp_dir().join("ddseries-example-cache");
    let first = CensusCache::with_store(ContentStore::open(&dir)?);
    let census = first.census(WalkModel::SelfAvoiding, 3, 9)?;

    // A fresh cache over the same directory reads the stored blob.
    let second = CensusCache::with_store(ContentStore::open(&dir)?);
    assert_eq!(second.census(WalkModel::SelfAvoiding, 3, 9)?, census);
    println!("cached census in {}", dir.display());

    let mut manifest = RunManifest::new("enumerate", serde_json::json!({"model": "saw", "d": 3, "n": 9}));
    manifest.output_digest = ddseries::store::sha256_hex(serde_json::to_string(&census)?.as_bytes());
    println!("{}", serde_json::to_string_pretty(&manifest)?);
    println!("configuration digest {}", manifest.config_digest());
    Ok(())
}
