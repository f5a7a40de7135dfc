use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use grstar_core::gallai::{
    find_gallai_partition, find_gallai_partition_with, format_partition,
    minimal_partition_structure_holds, GallaiOptions,
};
use grstar_core::{
    find_monochromatic, find_rainbow_triangle, Certificate, Color, EdgeColoring, TargetGraph,
    Verdicts,
};
use serde::Serialize;

use crate::inputs::{print, targets};
use crate::manifest::RunManifest;
use crate::{PASS, VERDICT};

#[derive(clap::Args, Debug, Serialize)]
pub struct Args {
    /// Coloring in text form or a certificate.
    file: PathBuf,
    /// Targets to look for; a certificate's own targets by default.
    #[arg(long)]
    target: Vec<String>,
    /// Also extract a Gallai partition.
    #[arg(long)]
    partition: bool,
}

#[derive(Serialize)]
struct ColorReport {
    color: Color,
    target: String,
    copy: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct PartitionReport {
    blocks: String,
    q: usize,
    between_colors: Vec<Color>,
    /// Blocks of a minimal partition, when small enough to search for one.
    minimal: Option<String>,
    /// The minimal partition has `q = 2`, or else `q != 3` and every
    /// block sees two colors towards the rest.
    minimal_structure: Option<bool>,
}

#[derive(Serialize)]
struct Report {
    file: String,
    host: String,
    k: Color,
    rainbow_triangle: Option<Vec<usize>>,
    colors: Vec<ColorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matches_recorded: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    partition: Option<PartitionReport>,
    pass: bool,
    manifest: serde_json::Value,
}

fn partition_report(g: &EdgeColoring) -> Result<PartitionReport> {
    let clique = g.clique_part()?;
    let p = find_gallai_partition(&clique)?;
    let minimal = find_gallai_partition_with(
        &clique,
        GallaiOptions {
            minimal: true,
            ..Default::default()
        },
    )
    .ok();
    Ok(PartitionReport {
        blocks: format_partition(&p.blocks),
        q: p.q(),
        between_colors: p.between_colors.clone(),
        minimal: minimal.as_ref().map(|m| format_partition(&m.blocks)),
        minimal_structure: minimal.as_ref().map(minimal_partition_structure_holds),
    })
}

pub fn run(a: Args) -> Result<u8> {
    let text =
        fs::read_to_string(&a.file).with_context(|| format!("reading {}", a.file.display()))?;
    let cert = if text.trim_start().starts_with('{') {
        Some(Certificate::from_json(&text)?)
    } else {
        None
    };
    let g = match &cert {
        Some(c) => c.coloring.clone(),
        None => EdgeColoring::parse(&text)?,
    };
    let hs: Vec<TargetGraph> = match (&cert, a.target.is_empty()) {
        (Some(c), true) => c.targets.clone(),
        _ => targets(&a.target)?,
    };
    let rainbow = find_rainbow_triangle(&g).map(|e| e.map);
    let colors: Vec<ColorReport> = if hs.is_empty() {
        Vec::new()
    } else {
        (1..=g.k())
            .map(|c| {
                let h = &hs[(c as usize - 1).min(hs.len() - 1)];
                ColorReport {
                    color: c,
                    target: h.name(),
                    copy: find_monochromatic(&g, h, c).map(|e| e.map),
                }
            })
            .collect()
    };
    let matches_recorded = match &cert {
        Some(c) if a.target.is_empty() => Some(Verdicts::compute(&g, &c.targets) == c.verdicts),
        _ => None,
    };
    let partition = if a.partition && rainbow.is_none() && g.host().clique_order() >= 2 {
        Some(partition_report(&g)?)
    } else {
        None
    };
    let pass = rainbow.is_none()
        && colors.iter().all(|c| c.copy.is_none())
        && matches_recorded.unwrap_or(true)
        && partition
            .as_ref()
            .and_then(|p| p.minimal_structure)
            .unwrap_or(true);
    let report = Report {
        file: a.file.display().to_string(),
        host: g.host().to_string(),
        k: g.k(),
        rainbow_triangle: rainbow,
        colors,
        matches_recorded,
        partition,
        pass,
        manifest: RunManifest::new("verify", &a).to_value(),
    };
    print(&format!("{}\n", serde_json::to_string_pretty(&report)?))?;
    Ok(if pass { PASS } else { VERDICT })
}
