//! On-disk character-table cache keyed by group content hash.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::chartable::{character_table_with, CharTableOptions, CharacterTable, TableJson};
use crate::error::Result;
use crate::group::{ConjugacyStructure, FiniteGroup};

pub const CACHE_ENV: &str = "ZAMEN_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".zamen-cache";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
}

#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: dir.into() }
    }

    /// `flag`, else `$ZAMEN_CACHE_DIR`, else `.zamen-cache`.
    pub fn resolve(flag: Option<&Path>) -> Self {
        let dir = flag
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
        TableCache::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, group_hash: &str) -> PathBuf {
        self.dir.join("chartable").join(format!("{group_hash}.json"))
    }

    /// A cached table, if present, readable, for this group, and within `tol`.
    pub fn load(&self, group: &FiniteGroup, cs: &ConjugacyStructure, tol: f64) -> Option<CharacterTable> {
        let text = fs::read_to_string(self.path_for(group.content_hash())).ok()?;
        let json: TableJson = serde_json::from_str(&text).ok()?;
        let t = CharacterTable::from_json(&json).ok()?;
        let fits = t.group_hash() == group.content_hash()
            && t.class_sizes() == cs.sizes().as_slice()
            && t.report().max_residual() <= tol;
        fits.then_some(t)
    }

    pub fn store(&self, t: &CharacterTable) -> Result<()> {
        let path = self.path_for(t.group_hash());
        let parent = path.parent().expect("cache path has a parent");
        fs::create_dir_all(parent)?;
        let tmp = parent.join(format!(".{}.tmp{}", t.group_hash(), std::process::id()));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&serde_json::to_vec_pretty(&t.to_json())?)?;
        f.write_all(b"\n")?;
        drop(f);
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    pub fn table(
        &self,
        group: &FiniteGroup,
        cs: &ConjugacyStructure,
        options: &CharTableOptions,
    ) -> Result<(CharacterTable, CacheStatus)> {
        if let Some(t) = self.load(group, cs, options.residual_tol) {
            return Ok((t, CacheStatus::Hit));
        }
        let t = character_table_with(group, cs, options)?;
        self.store(&t)?;
        Ok((t, CacheStatus::Miss))
    }
}
