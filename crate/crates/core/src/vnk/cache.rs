//! Line-oriented on-disk form of a [`VnkTable`]:
//!
//! ```text
//! vnk-cache v1 n=<n>
//! <m> <k> <v(m,k)>
//! ...
//! ```
//!
//! Entries are sorted by `(k, m)` and cover exactly the stored slots of each
//! level. All numbers are decimal.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;

use super::engine::{level_start, VnkTable};
use super::floor_set::FloorValueSet;
use crate::dirichlet::floor_log2;
use crate::error::{Error, Result};

pub const CACHE_HEADER: &str = "vnk-cache v1";

pub fn render_cache(table: &VnkTable) -> String {
    let mut out = format!("{CACHE_HEADER} n={}\n", table.n());
    for (m, k, v) in table.entries() {
        writeln!(out, "{m} {k} {v}").expect("writing to a String");
    }
    out
}

pub fn parse_cache(text: &str) -> Result<VnkTable> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::CacheFormat("empty file".into()))?;
    let n: u64 = header
        .strip_prefix(CACHE_HEADER)
        .and_then(|rest| rest.strip_prefix(" n="))
        .and_then(|n| n.parse().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::CacheFormat(format!("bad header {header:?}")))?;

    let set = FloorValueSet::new(n);
    let r = floor_log2(n);
    let mut levels = Vec::with_capacity(r as usize + 1);
    for k in 0..=r {
        let start = level_start(&set, k);
        let mut level = Vec::with_capacity(set.len() - start);
        for slot in start..set.len() {
            let line = lines.next().ok_or_else(|| {
                Error::CacheFormat(format!("truncated at level {k}"))
            })?;
            let mut fields = line.split(' ');
            let (Some(m), Some(kk), Some(v), None) =
                (fields.next(), fields.next(), fields.next(), fields.next())
            else {
                return Err(Error::CacheFormat(format!("malformed line {line:?}")));
            };
            let expected_m = set.value(slot);
            if m.parse::<u64>().ok() != Some(expected_m) || kk.parse::<u32>().ok() != Some(k) {
                return Err(Error::CacheFormat(format!(
                    "expected entry ({expected_m}, {k}), found {line:?}"
                )));
            }
            let value = v
                .parse::<BigUint>()
                .map_err(|_| Error::CacheFormat(format!("bad value in {line:?}")))?;
            level.push(value);
        }
        levels.push(level);
    }
    if let Some(extra) = lines.next() {
        return Err(Error::CacheFormat(format!("trailing line {extra:?}")));
    }
    Ok(VnkTable::from_levels(n, levels))
}

pub fn cache_path(dir: &Path, n: u64) -> PathBuf {
    dir.join(format!("vnk-{n}.txt"))
}

/// Loads the cached table for `n`, if present.
pub fn read_cache(dir: &Path, n: u64) -> Result<Option<VnkTable>> {
    let path = cache_path(dir, n);
    match fs::read_to_string(&path) {
        Ok(text) => {
            let table = parse_cache(&text)?;
            if table.n() != n {
                return Err(Error::CacheFormat(format!(
                    "{} holds n = {}",
                    path.display(),
                    table.n()
                )));
            }
            Ok(Some(table))
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Writes the table atomically: a temporary file in `dir` renamed into place.
pub fn write_cache(dir: &Path, table: &VnkTable) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, table.n());
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(render_cache(table).as_bytes())?;
    tmp.flush()?;
    tmp.persist(&path).map_err(|e| Error::Io(e.error))?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vnk::vnk_fast;

    #[test]
    fn render_small() {
        let text = render_cache(&vnk_fast(10));
        // set {1,2,3,5,10}; level 1 holds m >= 2, level 2 holds m >= 4, level 3 m >= 8
        let expected = "vnk-cache v1 n=10\n\
            1 0 1\n2 0 1\n3 0 1\n5 0 1\n10 0 1\n\
            2 1 1\n3 1 2\n5 1 4\n10 1 9\n\
            5 2 1\n10 2 8\n\
            10 3 1\n";
        assert_eq!(text, expected);
    }

    #[test]
    fn round_trip() {
        for n in [1, 2, 3, 10, 97, 1000, 65_536, 123_457] {
            let table = vnk_fast(n);
            let text = render_cache(&table);
            let parsed = parse_cache(&text).unwrap();
            assert_eq!(parsed, table);
            assert_eq!(render_cache(&parsed), text);
        }
    }

    #[test]
    fn rejects_damage() {
        let text = render_cache(&vnk_fast(50));
        assert!(parse_cache("").is_err());
        assert!(parse_cache(&text.replace("n=50", "n=x")).is_err());
        assert!(parse_cache(&text.replacen(" 0 1\n", " 0 1 7\n", 1)).is_err());
        let truncated: String = text.lines().take(5).map(|l| format!("{l}\n")).collect();
        assert!(parse_cache(&truncated).is_err());
        assert!(parse_cache(&format!("{text}1 1 1\n")).is_err());
        let swapped = text.replacen("\n1 0 1\n2 0 1\n", "\n2 0 1\n1 0 1\n", 1);
        assert!(parse_cache(&swapped).is_err());
    }

    #[test]
    fn disk_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        assert!(read_cache(dir.path(), 500).unwrap().is_none());
        let table = vnk_fast(500);
        let path = write_cache(dir.path(), &table).unwrap();
        assert_eq!(path, cache_path(dir.path(), 500));
        assert_eq!(read_cache(dir.path(), 500).unwrap(), Some(table));
    }
}
