//! Persisting truncated lattices between runs.
//!
//! `cargo run --example lattice_cache -- /tmp/bf-cache`

use burnside::cache::DiskCache;
use burnside::ideal::{IdealEngine, IdealSpec, SearchBox};
use burnside::ring::LaurentPoly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(std::path::PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("bf-cache"));
    let cache = DiskCache::new(&dir)?;
    let spec = IdealSpec::jq(3)?;
    let b = SearchBox::default_for(&spec);
    println!("cache file: {}", cache.path_for(&spec, &b).display());

    let engine = IdealEngine::with_disk_cache(cache);
    let p = LaurentPoly::parse("(1 - x)^2*(1 - y)", 2)?;
    let started = std::time::Instant::now();
    let v = engine.member(&p, &spec, &b, false)?;
    println!("{p} in {spec}: {} ({:?})", v.label(), started.elapsed());

    // a fresh engine loads the stored basis instead of rebuilding it
    let engine = IdealEngine::with_disk_cache(DiskCache::new(&dir)?);
    let started = std::time::Instant::now();
    let basis = engine.lattice(&spec, &b)?;
    println!("reloaded rank {} lattice in {:?}", basis.rank(), started.elapsed());
    Ok(())
}
