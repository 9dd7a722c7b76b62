//! On-disk cache of `t` sequences, keyed by prime, length and code version, with a
//! checksum over the stored values.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use topcoh::formulas::{parse_sequence_document, t_sequence, RankSequence, SequenceDocument};

pub const CACHE_ENV: &str = "TOPCOH_CACHE_DIR";

/// Identifies the code that produced a cached value; any release change invalidates it.
pub fn code_version() -> String {
    let digest = Sha256::digest(concat!("topcoh ", env!("CARGO_PKG_VERSION")).as_bytes());
    hex::encode(digest)[..12].to_string()
}

/// The `--cache-dir` flag if given, else the environment override.
pub fn resolve_dir(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CacheStatus {
    Disabled,
    Hit,
    Miss,
    /// An entry existed but failed its checksum or key check and was replaced.
    Replaced,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    p: u64,
    max_n: usize,
    code_version: String,
    sha256: String,
    sequence: SequenceDocument,
}

fn checksum(seq: &RankSequence) -> String {
    hex::encode(Sha256::digest(seq.to_csv().as_bytes()))
}

fn entry_path(dir: &Path, p: u64, max_n: usize) -> PathBuf {
    dir.join(format!("t-p{p}-n{max_n}-{}.json", code_version()))
}

fn load(path: &Path, p: u64, max_n: usize) -> Option<RankSequence> {
    let text = fs::read_to_string(path).ok()?;
    let entry: Entry = serde_json::from_str(&text).ok()?;
    if entry.p != p || entry.max_n != max_n || entry.code_version != code_version() {
        return None;
    }
    let seq = parse_sequence_document(&serde_json::to_string(&entry.sequence).ok()?).ok()?;
    (seq.p == p && seq.max_n() == max_n && checksum(&seq) == entry.sha256).then_some(seq)
}

fn store(path: &Path, seq: &RankSequence) -> std::io::Result<()> {
    let entry = Entry {
        p: seq.p,
        max_n: seq.max_n(),
        code_version: code_version(),
        sha256: checksum(seq),
        sequence: seq.to_document(),
    };
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_string_pretty(&entry)?)?;
    fs::rename(tmp, path)
}

/// `t_0..t_max_n` for `p`, from the cache when a valid entry exists.
pub fn t_sequence_cached(dir: Option<&Path>, p: u64, max_n: usize) -> topcoh::Result<(RankSequence, CacheStatus)> {
    let Some(dir) = dir else {
        return Ok((t_sequence(p, max_n)?, CacheStatus::Disabled));
    };
    let path = entry_path(dir, p, max_n);
    let existed = path.exists();
    if let Some(seq) = load(&path, p, max_n) {
        return Ok((seq, CacheStatus::Hit));
    }
    let seq = t_sequence(p, max_n)?;
    if let Err(err) = store(&path, &seq) {
        eprintln!("warning: could not write cache entry {}: {err}", path.display());
    }
    Ok((seq, if existed { CacheStatus::Replaced } else { CacheStatus::Miss }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_tamper_detection() {
        let dir = tempfile::tempdir().unwrap();
        let (a, s) = t_sequence_cached(Some(dir.path()), 5, 20).unwrap();
        assert_eq!(s, CacheStatus::Miss);
        let (b, s) = t_sequence_cached(Some(dir.path()), 5, 20).unwrap();
        assert_eq!((s, &b), (CacheStatus::Hit, &a));
        assert_eq!(b, t_sequence(5, 20).unwrap());

        let path = entry_path(dir.path(), 5, 20);
        let text = fs::read_to_string(&path).unwrap().replace("\"621\"", "\"622\"");
        fs::write(&path, text).unwrap();
        let (c, s) = t_sequence_cached(Some(dir.path()), 5, 20).unwrap();
        assert_eq!((s, c), (CacheStatus::Replaced, a));

        let (_, s) = t_sequence_cached(None, 5, 3).unwrap();
        assert_eq!(s, CacheStatus::Disabled);
    }
}
