//! Append-only JSON-lines store of chromatic numbers keyed by `(family, n, D)`.

use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::graph::{DistanceSet, Family};

type Key = (Family, usize, Vec<usize>);

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    family: Family,
    n: usize,
    d: Vec<usize>,
    chi: usize,
}

/// Entries present at open time are read without locking; new entries are
/// buffered and written by [`ChiCache::flush`].
#[derive(Debug)]
pub struct ChiCache {
    path: PathBuf,
    loaded: HashMap<Key, usize>,
    pending: Mutex<BTreeMap<Key, usize>>,
}

impl ChiCache {
    /// Loads `path` if it exists. Blank lines are skipped; any other
    /// unparsable line is an error.
    pub fn open(path: impl AsRef<Path>) -> io::Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut loaded = HashMap::new();
        match File::open(&path) {
            Ok(file) => {
                for (lineno, line) in BufReader::new(file).lines().enumerate() {
                    let line = line?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    let e: Entry = serde_json::from_str(&line).map_err(|err| {
                        io::Error::new(
                            io::ErrorKind::InvalidData,
                            format!("{}:{}: {err}", path.display(), lineno + 1),
                        )
                    })?;
                    loaded.insert((e.family, e.n, e.d), e.chi);
                }
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        Ok(ChiCache { path, loaded, pending: Mutex::new(BTreeMap::new()) })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Number of entries loaded from disk.
    pub fn len(&self) -> usize {
        self.loaded.len()
    }

    pub fn is_empty(&self) -> bool {
        self.loaded.is_empty()
    }

    pub fn get(&self, family: Family, n: usize, d: &DistanceSet) -> Option<usize> {
        self.loaded.get(&(family, n, d.as_slice().to_vec())).copied()
    }

    pub fn insert(&self, family: Family, n: usize, d: &DistanceSet, chi: usize) {
        let key = (family, n, d.as_slice().to_vec());
        if self.loaded.contains_key(&key) {
            return;
        }
        self.pending.lock().expect("cache buffer poisoned").insert(key, chi);
    }

    /// Appends buffered entries in key order and returns how many were written.
    pub fn flush(&self) -> io::Result<usize> {
        let mut pending = self.pending.lock().expect("cache buffer poisoned");
        if pending.is_empty() {
            return Ok(0);
        }
        let file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let mut out = BufWriter::new(file);
        for ((family, n, d), chi) in pending.iter() {
            let entry = Entry { family: *family, n: *n, d: d.clone(), chi: *chi };
            serde_json::to_writer(&mut out, &entry)?;
            out.write_all(b"\n")?;
        }
        out.flush()?;
        let written = pending.len();
        pending.clear();
        Ok(written)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("chi.jsonl");
        let d = DistanceSet::new(vec![1, 2]).unwrap();
        let cache = ChiCache::open(&path).unwrap();
        assert!(cache.is_empty());
        cache.insert(Family::Cycle, 5, &d, 5);
        cache.insert(Family::Path, 5, &d, 3);
        assert_eq!(cache.get(Family::Cycle, 5, &d), None);
        assert_eq!(cache.flush().unwrap(), 2);
        assert_eq!(cache.flush().unwrap(), 0);
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(
            text,
            "{\"family\":\"path\",\"n\":5,\"d\":[1,2],\"chi\":3}\n{\"family\":\"cycle\",\"n\":5,\"d\":[1,2],\"chi\":5}\n"
        );
        let again = ChiCache::open(&path).unwrap();
        assert_eq!(again.len(), 2);
        assert_eq!(again.get(Family::Cycle, 5, &d), Some(5));
        again.insert(Family::Cycle, 5, &d, 5);
        assert_eq!(again.flush().unwrap(), 0);
    }

    #[test]
    fn malformed_lines_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.jsonl");
        std::fs::write(&path, "{\"family\":\"path\"}\n").unwrap();
        let err = ChiCache::open(&path).unwrap_err();
        assert_eq!(err.kind(), io::ErrorKind::InvalidData);
    }
}
