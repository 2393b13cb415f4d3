//! On-disk enumeration cache.
//!
//! One file per `(n, kind, q, T)` key. The first line is a header with the
//! format version and a SHA-256 hash of the key; each further line holds the
//! row-major integer entries of one matrix, space-separated. Only matrices
//! are stored: Cartan data, boundary points and `Xi` are recomputed on load.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use boundary_lab_core::lattice::{IntMatrix, LatticeKind, LatticeSpec};
use sha2::{Digest, Sha256};

use crate::{LabError, LabResult};

pub const FORMAT_VERSION: u32 = 1;
/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "BOUNDARY_LAB_CACHE";
const MAGIC: &str = "boundary-lab-enumeration";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CacheKey {
    pub n: usize,
    pub q: u32,
    pub t_cap: f64,
}

impl CacheKey {
    pub fn of(spec: &LatticeSpec) -> Self {
        CacheKey {
            n: spec.n,
            q: spec.level(),
            t_cap: spec.t,
        }
    }

    fn kind(&self) -> &'static str {
        if self.q == 1 {
            "full"
        } else {
            "congruence"
        }
    }

    /// Canonical description hashed into the header.
    pub fn canonical(&self) -> String {
        format!(
            "{MAGIC} v{FORMAT_VERSION} n={} kind={} q={} T={:.16e}",
            self.n,
            self.kind(),
            self.q,
            self.t_cap
        )
    }

    pub fn hash(&self) -> String {
        Sha256::digest(self.canonical().as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    pub fn file_name(&self) -> String {
        format!("sl{}z-{}-q{}-T{:016x}.lat", self.n, self.kind(), self.q, self.t_cap.to_bits())
    }

    fn header(&self) -> String {
        format!("# {MAGIC} v{FORMAT_VERSION} sha256={}", self.hash())
    }

    pub fn spec(&self) -> LatticeSpec {
        LatticeSpec {
            n: self.n,
            kind: if self.q == 1 {
                LatticeKind::Full
            } else {
                LatticeKind::Congruence(self.q)
            },
            t: self.t_cap,
            theta: None,
        }
    }
}

pub fn write_matrices(path: &Path, key: &CacheKey, matrices: &[IntMatrix]) -> LabResult<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut w = BufWriter::new(fs::File::create(&tmp)?);
        writeln!(w, "{}", key.header())?;
        for m in matrices {
            let line: Vec<String> = m.entries().iter().map(i64::to_string).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        w.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn read_matrices(path: &Path, key: &CacheKey) -> LabResult<Vec<IntMatrix>> {
    let bad = |reason: String| LabError::Cache {
        path: path.display().to_string(),
        reason,
    };
    let mut lines = BufReader::new(fs::File::open(path)?).lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    if header != key.header() {
        return Err(bad("header does not match the requested key or format version".into()));
    }
    let mut out = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        let entries: Result<Vec<i64>, _> = line.split_whitespace().map(str::parse).collect();
        let entries = entries.map_err(|e| bad(format!("line {}: {e}", i + 2)))?;
        if entries.len() != key.n * key.n {
            return Err(bad(format!("line {}: expected {} entries", i + 2, key.n * key.n)));
        }
        out.push(IntMatrix::new(&entries).map_err(|e| bad(format!("line {}: {e}", i + 2)))?);
    }
    Ok(out)
}

/// A cache directory.
#[derive(Clone, Debug)]
pub struct EnumerationCache {
    dir: PathBuf,
}

impl EnumerationCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        EnumerationCache { dir: dir.into() }
    }

    /// Directory from an explicit setting, else from [`CACHE_ENV`].
    pub fn resolve(explicit: Option<&str>) -> Option<Self> {
        explicit
            .map(str::to_owned)
            .or_else(|| std::env::var(CACHE_ENV).ok().filter(|s| !s.is_empty()))
            .map(Self::new)
    }

    pub fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    /// Cached matrices for `key`, computing and storing them on a miss.
    pub fn load_or_compute(
        &self,
        key: &CacheKey,
        compute: impl FnOnce() -> LabResult<Vec<IntMatrix>>,
    ) -> LabResult<Vec<IntMatrix>> {
        let path = self.path(key);
        if path.exists() {
            return read_matrices(&path, key);
        }
        let matrices = compute()?;
        fs::create_dir_all(&self.dir)?;
        write_matrices(&path, key, &matrices)?;
        Ok(matrices)
    }
}
