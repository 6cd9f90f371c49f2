//! CSV, JSON and manifest emission.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// A CSV cell.
pub enum Cell {
    Num(f64),
    Opt(Option<f64>),
    Int(u64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) | Cell::Opt(Some(x)) => format!("{x:.16e}"),
            Cell::Opt(None) => String::new(),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

/// Comma-separated table with a header row and LF line endings.
pub struct Table {
    text: String,
    width: usize,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { text: header.join(",") + "\n", width: header.len() }
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.width);
        let line: Vec<String> = cells.iter().map(Cell::render).collect();
        let _ = writeln!(self.text, "{}", line.join(","));
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

/// Writes through a temporary file and a rename, so readers never see a
/// partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents).map_err(|e| CliError::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable output") + "\n"
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FileEntry {
    pub path: String,
    /// SHA-256 of the contents; absent for files that are not reproducible.
    pub sha256: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub check: String,
    pub t: Option<f64>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub command: String,
    pub config: serde_json::Value,
    pub files: Vec<FileEntry>,
    pub checks: Vec<CheckEntry>,
    pub pass: bool,
}

/// `manifest.json`: one entry per experiment written to the directory.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub experiments: BTreeMap<String, ManifestEntry>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Output directory of one run.
pub struct OutDir {
    dir: PathBuf,
    files: Vec<FileEntry>,
}

impl OutDir {
    pub fn create(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        Ok(Self { dir: dir.to_path_buf(), files: Vec::new() })
    }

    /// Writes `name` and records it; `reproducible` files carry a digest.
    pub fn emit(&mut self, name: &str, contents: &str, reproducible: bool) -> Result<(), CliError> {
        write_atomic(&self.dir.join(name), contents.as_bytes())?;
        self.files
            .push(FileEntry { path: name.to_string(), sha256: reproducible.then(|| sha256_hex(contents.as_bytes())) });
        Ok(())
    }

    /// Merges this run into `manifest.json`, replacing any earlier entry of
    /// the same experiment.
    pub fn finish(
        self,
        experiment: &str,
        command: &str,
        config: serde_json::Value,
        checks: Vec<CheckEntry>,
        pass: bool,
    ) -> Result<(), CliError> {
        let path = self.dir.join("manifest.json");
        let mut manifest: RunManifest =
            fs::read_to_string(&path).ok().and_then(|s| serde_json::from_str(&s).ok()).unwrap_or_default();
        manifest.tool = "hullforge".into();
        manifest.version = env!("CARGO_PKG_VERSION").into();
        let mut files = self.files;
        files.push(FileEntry { path: "manifest.json".into(), sha256: None });
        manifest
            .experiments
            .insert(experiment.to_string(), ManifestEntry { command: command.into(), config, files, checks, pass });
        write_atomic(&path, to_json(&manifest).as_bytes())
    }
}
