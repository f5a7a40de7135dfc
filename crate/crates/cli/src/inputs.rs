use std::fs;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use grstar_core::{Certificate, EdgeColoring, SearchConfig, TargetGraph, TargetSet};
use serde::Serialize;

/// Search limits shared by the searching commands.
#[derive(clap::Args, Clone, Debug, Serialize)]
pub struct Limits {
    /// Color assignments allowed before a search gives up.
    #[arg(long, default_value_t = 100_000_000)]
    pub nodes: u64,
    /// Largest host order deduplicated up to isomorphism.
    #[arg(long, default_value_t = 12)]
    pub canon_bound: usize,
    /// Stay on one thread.
    #[arg(long)]
    pub sequential: bool,
}

impl Limits {
    pub fn config(&self) -> SearchConfig {
        SearchConfig {
            node_budget: self.nodes,
            canon_bound: self.canon_bound,
            sequential: self.sequential,
            resume: None,
        }
    }
}

/// A builtin name (`K3`, `P4`, `C4`, `K1_3`, ...) or an edge-list file.
pub fn target(spec: &str) -> Result<TargetGraph> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        let label = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or(spec)
            .to_string();
        return Ok(TargetGraph::parse(&text)?.with_label(label));
    }
    Ok(TargetGraph::builtin(spec)?)
}

pub fn targets(specs: &[String]) -> Result<Vec<TargetGraph>> {
    specs.iter().map(|s| target(s)).collect()
}

/// One target set per color: a single `--target` applies to all `k`.
pub fn per_color(specs: &[String], k: usize) -> Result<Vec<TargetSet>> {
    let hs = targets(specs)?;
    let sets = match hs.len() {
        0 => bail!("--target is required"),
        1 => vec![TargetSet::single(hs[0].clone())?; k],
        n if n == k => hs
            .into_iter()
            .map(TargetSet::single)
            .collect::<grstar_core::Result<_>>()?,
        n => bail!("{n} targets for {k} colors; give one or exactly k"),
    };
    Ok(sets)
}

pub fn single_target(specs: &[String]) -> Result<TargetGraph> {
    match specs {
        [one] => target(one),
        [] => bail!("--target is required"),
        _ => bail!("exactly one --target expected"),
    }
}

/// A coloring in text form, or the coloring of a certificate.
pub fn read_coloring(path: &Path) -> Result<EdgeColoring> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if text.trim_start().starts_with('{') {
        Ok(Certificate::from_json(&text)?.coloring)
    } else {
        Ok(EdgeColoring::parse(&text)?)
    }
}

/// Writes to stdout; a closed pipe (as in `| head`) is not an error.
pub fn print(text: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

/// Writes `text` to `path`, or to stdout without one.
pub fn emit(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => print(text),
    }
}

pub fn display_paths(paths: &[Option<&PathBuf>]) -> Vec<String> {
    paths
        .iter()
        .flatten()
        .map(|p| p.display().to_string())
        .collect()
}
