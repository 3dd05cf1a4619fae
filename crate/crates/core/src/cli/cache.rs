//! Append-only JSON-lines cache of reports, keyed by the SHA-256 of the
//! canonical diagram text. Later lines win.

use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::report::InvariantReport;

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    report: InvariantReport,
}

pub struct Cache {
    path: PathBuf,
}

pub fn key(canonical: &str) -> String {
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

impl Cache {
    pub fn at(path: impl Into<PathBuf>) -> Self {
        Cache { path: path.into() }
    }

    /// `$LEGK_CACHE`, else `~/.cache/legk/cache.jsonl`.
    pub fn default_location() -> Option<Self> {
        if let Some(p) = std::env::var_os("LEGK_CACHE") {
            return Some(Cache::at(p));
        }
        let home = std::env::var_os("HOME")?;
        Some(Cache::at(Path::new(&home).join(".cache/legk/cache.jsonl")))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Latest stored report for the diagram. Unreadable lines are skipped.
    pub fn lookup(&self, canonical: &str) -> Option<InvariantReport> {
        let k = key(canonical);
        let file = fs::File::open(&self.path).ok()?;
        BufReader::new(file)
            .lines()
            .map_while(Result::ok)
            .filter_map(|l| serde_json::from_str::<Entry>(&l).ok())
            .filter(|e| e.key == k && e.report.diagram == canonical)
            .last()
            .map(|e| e.report)
    }

    pub fn append(&self, report: &InvariantReport) -> std::io::Result<()> {
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir)?;
        }
        let entry = Entry { key: key(&report.diagram), report: report.cacheable() };
        let mut line = serde_json::to_string(&entry).map_err(std::io::Error::other)?;
        line.push('\n');
        OpenOptions::new().create(true).append(true).open(&self.path)?.write_all(line.as_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::FrontDiagram;

    #[test]
    fn latest_entry_wins() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path().join("sub/c.jsonl"));
        let d = FrontDiagram::plat(1, &[]).unwrap();
        assert!(cache.lookup(&d.to_string()).is_none());
        let mut r = InvariantReport::new(&d);
        r.add_info(&d).unwrap();
        cache.append(&r).unwrap();
        r.add_ruling_polynomial(&d);
        cache.append(&r).unwrap();
        let got = cache.lookup(&d.to_string()).unwrap();
        assert_eq!(got.f_max, Some(1));
        assert!(cache.lookup("plat 2 : 2").is_none());
        assert_eq!(key("").len(), 64);
    }
}
