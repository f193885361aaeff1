//! On-disk cache of per-(p,q) algebra data: one JSON file `p_q.json`
//! holding riley, Ω and ι in poly-JSON.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::json::{poly_from_json, poly_to_json};
use crate::frobenius::{build_algebra, ParabolicAlgebra};
use crate::twobridge::make_params;

pub const CACHE_SCHEMA: u64 = 1;

/// Environment variable naming the cache directory when `--cache-dir` is absent.
pub const CACHE_ENV: &str = "PARABOLIC_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct AlgebraCache {
    dir: PathBuf,
}

impl AlgebraCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        AlgebraCache { dir: dir.into() }
    }

    /// Explicit directory, else the environment variable, else no cache.
    pub fn resolve(explicit: Option<&Path>) -> Option<Self> {
        explicit
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
            .map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, p: i64, q: i64) -> PathBuf {
        self.dir.join(format!("{p}_{q}.json"))
    }

    /// Cached algebra if a valid entry exists; stale or corrupt entries are
    /// treated as misses.
    pub fn lookup(&self, p: i64, q: i64) -> Option<ParabolicAlgebra> {
        let text = fs::read_to_string(self.path_for(p, q)).ok()?;
        let v: Value = serde_json::from_str(&text).ok()?;
        if v["schema"].as_u64() != Some(CACHE_SCHEMA) || v["p"].as_i64() != Some(p) || v["q"].as_i64() != Some(q) {
            return None;
        }
        let riley = poly_from_json(&v["riley"]).ok()?;
        let omega = poly_from_json(&v["omega"]).ok()?;
        let iota = poly_from_json(&v["iota"]).ok()?;
        let alg = ParabolicAlgebra::with_omega(make_params(p, q).ok()?, &omega).ok()?;
        (alg.riley() == &riley && alg.iota().rep() == &iota).then_some(alg)
    }

    pub fn store(&self, alg: &ParabolicAlgebra) -> Result<()> {
        let (p, q) = (alg.params().p, alg.params().q);
        let doc = json!({
            "schema": CACHE_SCHEMA,
            "key": format!("{p}_{q}"),
            "p": p,
            "q": q,
            "riley": poly_to_json(alg.riley()),
            "omega": poly_to_json(alg.omega().rep()),
            "iota": poly_to_json(alg.iota().rep()),
        });
        let io = |path: &Path| {
            let path = path.to_path_buf();
            move |source| Error::Io { path, source }
        };
        fs::create_dir_all(&self.dir).map_err(io(&self.dir))?;
        let target = self.path_for(p, q);
        let tmp = self.dir.join(format!(".{p}_{q}.{}.tmp", std::process::id()));
        fs::write(&tmp, doc.to_string()).map_err(io(&tmp))?;
        fs::rename(&tmp, &target).map_err(io(&target))
    }

    pub fn get(&self, p: i64, q: i64) -> Result<ParabolicAlgebra> {
        if let Some(alg) = self.lookup(p, q) {
            return Ok(alg);
        }
        let alg = build_algebra(p, q)?;
        self.store(&alg)?;
        Ok(alg)
    }
}

/// Algebra for (p,q), going through the cache when one is configured.
pub fn load_algebra(cache: Option<&AlgebraCache>, p: i64, q: i64) -> Result<ParabolicAlgebra> {
    match cache {
        Some(c) => c.get(p, q),
        None => build_algebra(p, q),
    }
}
