//! On-disk lattice cache: one versioned JSON file per `(spec, box)` key.
//!
//! Loads never trust the file: version, key, monomial index, HNF shape and
//! every stored transform are re-checked against freshly enumerated
//! generator products. Anything off is reported as [`LoadOutcome::Rebuilt`]
//! and the caller rebuilds. Writers take a per-key lock file and publish by
//! atomic rename.

use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ideal::hnf::{Column, SparseVec};
use crate::ideal::{IdealKind, IdealSpec, LatticeBasis, SearchBox, FORMAT_VERSION};
use crate::ring::ExpVec;

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "BF_CACHE_DIR";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache io: {0}")]
    Io(#[from] io::Error),
    #[error("cache encoding: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug)]
pub enum LoadOutcome {
    Hit(LatticeBasis),
    Miss,
    /// The file existed but was rejected; the reason is logged.
    Rebuilt(String),
}

#[derive(Serialize, Deserialize)]
struct SparseColumn(Vec<(usize, String)>);

#[derive(Serialize, Deserialize)]
struct HnfMatrix {
    rows: usize,
    columns: Vec<SparseColumn>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format_version: u32,
    spec: IdealSpec,
    #[serde(rename = "box")]
    search_box: SearchBox,
    monomial_index: Vec<Vec<i32>>,
    hnf_matrix: HnfMatrix,
    /// Per column: combination of generator products producing it.
    transform: Vec<SparseColumn>,
}

fn encode(v: &SparseVec) -> SparseColumn {
    SparseColumn(v.entries().iter().map(|(i, c)| (*i, c.to_string())).collect())
}

fn decode(c: &SparseColumn) -> Result<SparseVec, String> {
    let mut pairs = Vec::with_capacity(c.0.len());
    for (i, s) in &c.0 {
        let v: BigInt = s.parse().map_err(|_| format!("bad integer {s:?}"))?;
        pairs.push((*i, v));
    }
    let v = SparseVec::from_pairs(pairs);
    if v.entries().len() != c.0.len() {
        return Err("non-canonical sparse column".into());
    }
    Ok(v)
}

#[derive(Clone, Debug)]
pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self, CacheError> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(DiskCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// File holding the lattice for `(spec, box)`.
    pub fn path_for(&self, spec: &IdealSpec, search_box: &SearchBox) -> PathBuf {
        let kind = match spec.kind {
            IdealKind::SigmaPow { m } => format!("sigma{m}"),
            IdealKind::Iq => "iq".into(),
            IdealKind::Jq => "jq".into(),
        };
        let q = spec.q.map_or(0, |q| q.q());
        let SearchBox { d_unit, d_shift, window } = *search_box;
        self.dir.join(format!("{kind}_q{q}_k{}_u{d_unit}_s{d_shift}_w{window}.json", spec.k))
    }

    pub fn load(&self, spec: &IdealSpec, search_box: &SearchBox) -> LoadOutcome {
        let path = self.path_for(spec, search_box);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return LoadOutcome::Miss,
            Err(e) => return LoadOutcome::Rebuilt(format!("unreadable {}: {e}", path.display())),
        };
        match Self::parse(&text, spec, search_box) {
            Ok(b) => LoadOutcome::Hit(b),
            Err(reason) => LoadOutcome::Rebuilt(format!("{}: {reason}", path.display())),
        }
    }

    fn parse(text: &str, spec: &IdealSpec, search_box: &SearchBox) -> Result<LatticeBasis, String> {
        let file: CacheFile = serde_json::from_str(text).map_err(|e| format!("corrupt json: {e}"))?;
        if file.format_version != FORMAT_VERSION {
            return Err(format!("format version {} != {FORMAT_VERSION}", file.format_version));
        }
        if file.spec != spec.without_t() || file.search_box != *search_box {
            return Err("key mismatch".into());
        }
        if file.transform.len() != file.hnf_matrix.columns.len() {
            return Err("transform and matrix column counts differ".into());
        }
        let k = spec.k;
        let mut index = Vec::with_capacity(file.monomial_index.len());
        for e in &file.monomial_index {
            if e.len() != k {
                return Err("monomial of wrong length".into());
            }
            index.push(ExpVec::from_x(e));
        }
        if index.len() != file.hnf_matrix.rows {
            return Err("row count does not match the monomial index".into());
        }
        let mut columns = Vec::with_capacity(file.transform.len());
        for (v, c) in file.hnf_matrix.columns.iter().zip(&file.transform) {
            let vector = decode(v)?;
            if vector.is_zero() {
                return Err("zero column".into());
            }
            columns.push(Column { vector, combo: Some(decode(c)?) });
        }
        LatticeBasis::from_parts(spec, search_box, index, columns)
    }

    pub fn store(&self, basis: &LatticeBasis) -> Result<(), CacheError> {
        let path = self.path_for(&basis.spec, &basis.search_box);
        let lock = path.with_extension("lock");
        let guard = match OpenOptions::new().write(true).create_new(true).open(&lock) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::AlreadyExists => {
                log::debug!("{} is locked by another writer; skipping store", path.display());
                return Ok(());
            }
            Err(e) => return Err(e.into()),
        };
        let result = self.write_locked(basis, &path);
        drop(guard);
        let _ = fs::remove_file(&lock);
        result
    }

    fn write_locked(&self, basis: &LatticeBasis, path: &Path) -> Result<(), CacheError> {
        let file = CacheFile {
            format_version: basis.format_version,
            spec: basis.spec,
            search_box: basis.search_box,
            monomial_index: basis.monomial_index.iter().map(|e| e.as_slice()[..basis.spec.k].to_vec()).collect(),
            hnf_matrix: HnfMatrix {
                rows: basis.monomial_index.len(),
                columns: basis.columns.iter().map(|c| encode(&c.vector)).collect(),
            },
            transform: basis
                .columns
                .iter()
                .map(|c| encode(c.combo.as_ref().expect("lattice bases track transforms")))
                .collect(),
        };
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let mut out = fs::File::create(&tmp)?;
        out.write_all(serde_json::to_string(&file)?.as_bytes())?;
        out.sync_all()?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (tempfile::TempDir, DiskCache, IdealSpec, SearchBox, LatticeBasis) {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::new(dir.path()).unwrap();
        let spec = IdealSpec::jq(2).unwrap();
        let b = SearchBox::new(1, 1, 3);
        let basis = LatticeBasis::build(&spec, &b).unwrap();
        (dir, cache, spec, b, basis)
    }

    #[test]
    fn round_trip_is_identical() {
        let (_dir, cache, spec, b, basis) = setup();
        assert!(matches!(cache.load(&spec, &b), LoadOutcome::Miss));
        cache.store(&basis).unwrap();
        let LoadOutcome::Hit(loaded) = cache.load(&spec, &b) else { panic!("expected hit") };
        assert_eq!(loaded, basis);
    }

    #[test]
    fn corruption_is_rejected() {
        let (_dir, cache, spec, b, basis) = setup();
        cache.store(&basis).unwrap();
        let path = cache.path_for(&spec, &b);
        fs::write(&path, "{ not json").unwrap();
        assert!(matches!(cache.load(&spec, &b), LoadOutcome::Rebuilt(_)));
    }

    #[test]
    fn tampered_entry_is_rejected() {
        let (_dir, cache, spec, b, basis) = setup();
        cache.store(&basis).unwrap();
        let path = cache.path_for(&spec, &b);
        let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        let entry = &mut v["hnf_matrix"]["columns"][0][0][1];
        let n: i64 = entry.as_str().unwrap().parse().unwrap();
        *entry = serde_json::Value::String((n + 2).to_string());
        fs::write(&path, v.to_string()).unwrap();
        assert!(matches!(cache.load(&spec, &b), LoadOutcome::Rebuilt(_)));
    }

    #[test]
    fn version_bump_is_rejected() {
        let (_dir, cache, spec, b, basis) = setup();
        cache.store(&basis).unwrap();
        let path = cache.path_for(&spec, &b);
        let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        v["format_version"] = serde_json::json!(FORMAT_VERSION + 1);
        fs::write(&path, v.to_string()).unwrap();
        let LoadOutcome::Rebuilt(reason) = cache.load(&spec, &b) else { panic!("expected rebuild") };
        assert!(reason.contains("version"));
    }
}
