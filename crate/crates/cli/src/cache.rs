//! On-disk contribution cache: one JSON file per graph class, named by the
//! SHA-256 of its canonical key.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use log::warn;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use logtangent_core::exactq::{parse_rat, Poly, Rat, RatFunc};
use logtangent_core::locgraph::CanonKey;

/// Bumped whenever evaluator output could change for a given key.
pub const EVALUATOR_VERSION: &str = "logtangent-split/1";

pub const CACHE_ENV: &str = "LOGTANGENT_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: String,
    pub key: String,
    /// Ascending coefficients.
    pub num: Vec<String>,
    pub den: Vec<String>,
}

fn coeff_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(Rat::to_string).collect()
}

impl CacheEntry {
    pub fn new(key: &CanonKey, value: &RatFunc) -> Self {
        CacheEntry {
            version: EVALUATOR_VERSION.to_owned(),
            key: key.as_str().to_owned(),
            num: coeff_strings(value.num()),
            den: coeff_strings(value.den()),
        }
    }

    /// The stored value, provided it is already in canonical form.
    pub fn value(&self) -> Option<RatFunc> {
        let poly = |cs: &[String]| -> Option<Poly> {
            cs.iter().map(|c| parse_rat(c).ok()).collect::<Option<Vec<_>>>().map(Poly::new)
        };
        let f = RatFunc::new(poly(&self.num)?, poly(&self.den)?).ok()?;
        let canonical = coeff_strings(f.num()) == self.num && coeff_strings(f.den()) == self.den;
        canonical.then_some(f)
    }
}

#[derive(Debug, Clone)]
pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    /// Opens (creating if needed) a cache directory. Returns `None`, with a
    /// warning, if it cannot be written.
    pub fn open(dir: impl Into<PathBuf>) -> Option<Self> {
        let dir = dir.into();
        let probe = dir.join(".probe");
        let ok = fs::create_dir_all(&dir)
            .and_then(|_| fs::write(&probe, b""))
            .and_then(|_| fs::remove_file(&probe));
        match ok {
            Ok(()) => Some(DiskCache { dir }),
            Err(e) => {
                warn!("cache directory {} is not writable ({e}); caching disabled", dir.display());
                None
            }
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &CanonKey) -> PathBuf {
        let digest = Sha256::digest(key.as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }

    pub fn load(&self, key: &CanonKey) -> Option<RatFunc> {
        let path = self.path_for(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                warn!("ignoring unreadable cache file {}: {e}", path.display());
                return None;
            }
        };
        let entry: CacheEntry = match serde_json::from_str(&text) {
            Ok(e) => e,
            Err(e) => {
                warn!("ignoring corrupt cache file {}: {e}", path.display());
                return None;
            }
        };
        if entry.version != EVALUATOR_VERSION {
            warn!("ignoring cache file {} from evaluator {}", path.display(), entry.version);
            return None;
        }
        if entry.key != key.as_str() {
            warn!("ignoring cache file {}: key mismatch", path.display());
            return None;
        }
        let value = entry.value();
        if value.is_none() {
            warn!("ignoring cache file {}: malformed value", path.display());
        }
        value
    }

    /// Writes through a temporary file so readers never see partial entries.
    pub fn store(&self, key: &CanonKey, value: &RatFunc) -> std::io::Result<()> {
        let path = self.path_for(key);
        let tmp = path.with_extension("json.tmp");
        let mut f = fs::File::create(&tmp)?;
        serde_json::to_writer(&mut f, &CacheEntry::new(key, value))?;
        f.write_all(b"\n")?;
        f.sync_all()?;
        fs::rename(tmp, path)
    }
}
