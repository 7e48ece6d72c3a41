//! Content-addressed disk cache.
//!
//! Layout: `<root>/<config key>/<kind>/<sha256(key)>.json`, each file holding
//! `{"key": ..., "value": ...}`. Memo entries get one directory per target
//! weight. Unreadable files are reported and treated as missing.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use charp_core::{AlgebraVector, CharVector, DecompMatrix, GroupConfig, MemoCache, Weight, Word};
use log::warn;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

const ROWS: &str = "rows";
const MATRICES: &str = "matrices";
const MEMO: &str = "memo";

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    key: String,
    value: T,
}

pub struct Store {
    root: PathBuf,
}

fn digest(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

impl Store {
    pub fn open(root: &Path) -> Result<Self> {
        fs::create_dir_all(root).with_context(|| format!("creating cache directory {}", root.display()))?;
        Ok(Store {
            root: root.to_path_buf(),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn dir(&self, cfg: &GroupConfig, kind: &str) -> PathBuf {
        self.root.join(cfg.key()).join(kind)
    }

    fn write<T: Serialize>(&self, dir: &Path, key: &str, value: &T) -> Result<()> {
        fs::create_dir_all(dir)?;
        let path = dir.join(format!("{}.json", digest(key)));
        let tmp = dir.join(format!(".{}.tmp", digest(key)));
        let mut f = fs::File::create(&tmp)?;
        serde_json::to_writer(
            &mut f,
            &Entry {
                key: key.to_string(),
                value,
            },
        )?;
        f.write_all(b"\n")?;
        f.sync_all()?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    fn read_file<T: DeserializeOwned>(path: &Path) -> Option<Entry<T>> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                warn!("ignoring unreadable cache file {}: {e}", path.display());
                return None;
            }
        };
        match serde_json::from_str(&text) {
            Ok(e) => Some(e),
            Err(e) => {
                warn!("ignoring corrupt cache file {}: {e}", path.display());
                None
            }
        }
    }

    fn read<T: DeserializeOwned>(&self, dir: &Path, key: &str) -> Option<T> {
        let path = dir.join(format!("{}.json", digest(key)));
        if !path.exists() {
            return None;
        }
        let e: Entry<T> = Self::read_file(&path)?;
        if e.key != key {
            warn!("ignoring cache file {} stored under another key", path.display());
            return None;
        }
        Some(e.value)
    }

    fn row_key(cfg: &GroupConfig, lambda: &Weight) -> String {
        format!("row {} {lambda}", cfg.key())
    }

    /// Saves `ch_p(lambda)` for restricted `lambda`.
    pub fn save_row(&self, cfg: &GroupConfig, lambda: &Weight, row: &CharVector) -> Result<()> {
        self.write(&self.dir(cfg, ROWS), &Self::row_key(cfg, lambda), &(lambda, row))
    }

    pub fn load_row(&self, cfg: &GroupConfig, lambda: &Weight) -> Option<CharVector> {
        self.read::<(Weight, CharVector)>(&self.dir(cfg, ROWS), &Self::row_key(cfg, lambda))
            .map(|(_, row)| row)
    }

    /// Every readable row saved for `cfg`, sorted by weight.
    pub fn load_rows(&self, cfg: &GroupConfig) -> Vec<(Weight, CharVector)> {
        let Ok(files) = fs::read_dir(self.dir(cfg, ROWS)) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for f in files.flatten() {
            let path = f.path();
            if path.extension().is_none_or(|e| e != "json") {
                continue;
            }
            let Some(e) = Self::read_file::<(Weight, CharVector)>(&path) else {
                continue;
            };
            let (lambda, row) = e.value;
            if e.key != Self::row_key(cfg, &lambda) {
                warn!("ignoring row file {} stored under another key", path.display());
                continue;
            }
            out.push((lambda, row));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    fn matrix_key(cfg: &GroupConfig, lambda: &Weight) -> String {
        format!("decomposition {} {lambda}", cfg.key())
    }

    pub fn save_matrix(&self, cfg: &GroupConfig, lambda: &Weight, d: &DecompMatrix) -> Result<()> {
        self.write(&self.dir(cfg, MATRICES), &Self::matrix_key(cfg, lambda), d)
    }

    pub fn load_matrix(&self, cfg: &GroupConfig, lambda: &Weight) -> Option<DecompMatrix> {
        self.read(&self.dir(cfg, MATRICES), &Self::matrix_key(cfg, lambda))
    }

    fn memo_dir(&self, cfg: &GroupConfig, lambda: &Weight) -> PathBuf {
        self.dir(cfg, MEMO).join(digest(&lambda.to_string()))
    }

    fn memo_key(cfg: &GroupConfig, lambda: &Weight, suffix: &Word) -> String {
        let letters: Vec<String> = suffix
            .letters()
            .iter()
            .map(|l| format!("{}^{}", l.root, l.exp))
            .collect();
        format!("memo {} {lambda} [{}]", cfg.key(), letters.join(" "))
    }

    /// Writes every memo entry for `lambda`; returns the number written.
    pub fn save_memo(&self, cfg: &GroupConfig, lambda: &Weight, cache: &MemoCache) -> Result<usize> {
        let dir = self.memo_dir(cfg, lambda);
        let entries = cache.entries(cfg, lambda);
        for (suffix, v) in &entries {
            let key = Self::memo_key(cfg, lambda, suffix);
            self.write(&dir, &key, &(suffix, v.as_ref()))?;
        }
        Ok(entries.len())
    }

    /// Loads the memo entries stored for `lambda` into `cache`; returns how
    /// many were accepted.
    pub fn load_memo(&self, cfg: &GroupConfig, lambda: &Weight, cache: &MemoCache) -> usize {
        let dir = self.memo_dir(cfg, lambda);
        let Ok(files) = fs::read_dir(&dir) else {
            return 0;
        };
        let mut n = 0;
        for f in files.flatten() {
            let path = f.path();
            if path.extension().is_none_or(|e| e != "json") {
                continue;
            }
            let Some(e) = Self::read_file::<(Word, AlgebraVector)>(&path) else {
                continue;
            };
            let (suffix, v) = e.value;
            if e.key != Self::memo_key(cfg, lambda, &suffix) {
                warn!("ignoring memo file {} stored under another key", path.display());
                continue;
            }
            cache.insert(cfg, lambda, suffix.0, Arc::new(v));
            n += 1;
        }
        n
    }

    /// Files per `(config, kind)`.
    pub fn summary(&self) -> Result<Vec<(String, String, usize)>> {
        let mut out = Vec::new();
        let Ok(configs) = fs::read_dir(&self.root) else {
            return Ok(out);
        };
        for c in configs.flatten().filter(|c| c.path().is_dir()) {
            for kind in [ROWS, MATRICES, MEMO] {
                let n = count_json(&c.path().join(kind));
                if n > 0 {
                    out.push((c.file_name().to_string_lossy().into_owned(), kind.to_string(), n));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Removes every cached file under the root.
    pub fn clear(&self) -> Result<()> {
        for e in fs::read_dir(&self.root)?.flatten() {
            if e.path().is_dir() {
                fs::remove_dir_all(e.path())?;
            }
        }
        Ok(())
    }
}

fn count_json(dir: &Path) -> usize {
    let Ok(entries) = fs::read_dir(dir) else {
        return 0;
    };
    entries
        .flatten()
        .map(|e| {
            let p = e.path();
            if p.is_dir() {
                count_json(&p)
            } else {
                p.extension().is_some_and(|x| x == "json") as usize
            }
        })
        .sum()
}
