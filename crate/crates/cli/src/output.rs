use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use crate::args::{Command, GlobalArgs};

/// What a subcommand produced.
#[derive(Debug, Default)]
pub struct Outcome {
    /// Main artifact in the selected format.
    pub body: Option<String>,
    /// Whether the artifact is written when no `--output` is given.
    pub write_by_default: bool,
    /// Extra artifacts as (file-name suffix, contents), placed beside the main one.
    pub extra: Vec<(String, String)>,
    /// Lines for stdout.
    pub report: Vec<String>,
    pub failed: bool,
    pub seed: Option<u64>,
    pub inputs: Vec<PathBuf>,
}

/// Sidecar describing how an artifact was produced.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub parameters: Command,
    pub json: bool,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
    pub version: String,
    pub timestamp: String,
    pub seed: Option<u64>,
}

impl RunManifest {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading manifest {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing manifest {}", path.display()))
    }
}

/// CSV body preceded by a `#` block of `key: value` lines.
pub fn csv_with_header(title: &str, params: &[(&str, String)], body: &str) -> String {
    let mut out = format!("# {title}\n");
    for (k, v) in params {
        out.push_str(&format!("# {k}: {v}\n"));
    }
    out.push_str(body);
    out
}

pub fn resolve_output(global: &GlobalArgs, default_name: &str) -> Result<PathBuf> {
    let p = global.output.clone().unwrap_or_else(|| PathBuf::from(default_name));
    let p = if p.is_absolute() {
        p
    } else {
        global.out_dir.clone().unwrap_or_default().join(p)
    };
    std::path::absolute(&p).with_context(|| format!("resolving {}", p.display()))
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}"))
}

pub fn manifest_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}
