use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use grstar_core::certificate::to_dot;
use grstar_core::constructions::*;
use grstar_core::search::{merge_parameters, ramsey2, star_critical_ramsey2};
use grstar_core::{classify_target, Certificate, EdgeColoring, SearchConfig, TargetGraph};
use serde::Serialize;

use crate::inputs::{display_paths, emit, print, read_coloring, single_target, targets, Limits};
use crate::manifest::RunManifest;
use crate::{PASS, VERDICT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Name {
    Clone,
    C4,
    C4Ext,
    P4,
    P4Ext,
    Star,
    StarExt,
    Bipartite,
    BipartiteExt,
    Tower,
    TowerExt,
    Blowup,
}

#[derive(clap::Args, Debug, Serialize)]
pub struct Args {
    #[arg(value_enum)]
    name: Name,
    /// Number of colors.
    #[arg(long)]
    k: Option<usize>,
    /// Star size for `star` and `star-ext`.
    #[arg(long)]
    m: Option<usize>,
    /// Target graph: builtin name or edge-list file. Repeat for one per color.
    #[arg(long)]
    target: Vec<String>,
    /// Input coloring for `clone`.
    #[arg(long)]
    coloring: Option<PathBuf>,
    /// Vertex to clone.
    #[arg(long, default_value_t = 0)]
    u: usize,
    /// Outer coloring for `blowup`.
    #[arg(long)]
    outer: Option<PathBuf>,
    /// Inner colorings for `blowup`: one per outer vertex, or one for all.
    #[arg(long)]
    inner: Vec<PathBuf>,
    #[command(flatten)]
    limits: Limits,
    /// Certificate path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a Graphviz rendering here.
    #[arg(long)]
    dot: Option<PathBuf>,
}

fn need(v: Option<usize>, flag: &str) -> Result<usize> {
    v.with_context(|| format!("--{flag} is required"))
}

fn critical(
    coloring: Option<EdgeColoring>,
    h: &TargetGraph,
    what: &str,
) -> Result<TwoColorCritical> {
    let g = coloring.with_context(|| format!("no critical coloring found for the {what}"))?;
    Ok(TwoColorCritical::new(g, vec![h.clone()])?)
}

/// Critical 2-colorings avoiding `h`, found by search: the clique alone and
/// with its largest safe star.
fn ramsey_seeds(
    h: &TargetGraph,
    config: &SearchConfig,
) -> Result<(TwoColorCritical, TwoColorCritical)> {
    let r = ramsey2(h, h, 64, config)?;
    let star = star_critical_ramsey2(h, h, Some(r.value), config)?;
    Ok((
        critical(r.witness, h, "Ramsey seed")?,
        critical(star.witness, h, "star seed")?,
    ))
}

fn tower_seeds(h: &TargetGraph, config: &SearchConfig) -> Result<NonBipartiteSeeds> {
    let (_, base) = ramsey_seeds(h, config)?;
    let family = merge_parameters(h, 64, config)?;
    let witness = family
        .star_witness
        .context("no critical coloring found for the merge family")?;
    let merge = TwoColorCritical::new(witness, family.members)?;
    Ok(NonBipartiteSeeds { base, merge })
}

enum Built {
    Certificate(Box<Certificate>),
    Coloring(EdgeColoring),
}

fn build(a: &Args) -> Result<Built> {
    let config = a.limits.config();
    let cert = match a.name {
        Name::C4 => build_c4_critical(need(a.k, "k")?)?,
        Name::C4Ext => extend_c4_lower(need(a.k, "k")?)?,
        Name::P4 => build_p4_critical(need(a.k, "k")?, &InnerRule::LaterIndex)?,
        Name::P4Ext => extend_p4_lower(need(a.k, "k")?)?,
        Name::Star => build_star_critical(need(a.m, "m")?, need(a.k, "k")?, &StarInner::Default)?,
        Name::StarExt => extend_star_lower(need(a.m, "m")?, need(a.k, "k")?)?,
        Name::Bipartite | Name::BipartiteExt => {
            let h = single_target(&a.target)?;
            let k = need(a.k, "k")?;
            let (crit, ext) = ramsey_seeds(&h, &config)?;
            if a.name == Name::Bipartite {
                build_bipartite_lower(k, &h, &crit)?
            } else {
                extend_bipartite_lower(k, &h, &ext)?
            }
        }
        Name::Tower | Name::TowerExt => {
            let h = single_target(&a.target)?;
            let k = need(a.k, "k")?;
            if classify_target(&h).bipartite {
                return Err(grstar_core::Error::NotNonBipartite.into());
            }
            let seeds = tower_seeds(&h, &config)?;
            if a.name == Name::Tower {
                build_nonbipartite_lower(k, &h, &seeds)?
            } else {
                extend_nonbipartite_lower(k, &h, &seeds)?
            }
        }
        Name::Clone => {
            let g = read_coloring(a.coloring.as_ref().context("--coloring is required")?)?;
            let hs = targets(&a.target)?;
            if hs.is_empty() {
                bail!("--target is required");
            }
            clone_certificate(&g, a.u, hs)?
        }
        Name::Blowup => {
            let outer = read_coloring(a.outer.as_ref().context("--outer is required")?)?;
            let inner = a
                .inner
                .iter()
                .map(|p| read_coloring(p))
                .collect::<Result<Vec<_>>>()?;
            let inner = match inner.len() {
                0 => bail!("--inner is required"),
                1 => vec![inner[0].clone(); outer.order()],
                _ => inner,
            };
            let g = blow_up(&outer, &inner)?;
            let hs = targets(&a.target)?;
            if hs.is_empty() {
                return Ok(Built::Coloring(g));
            }
            let n = g.order();
            let mut params = BTreeMap::new();
            params.insert("parts".to_string(), serde_json::Value::from(inner.len()));
            Certificate::issue("blowup", params, g, hs, n, None)?
        }
    };
    Ok(Built::Certificate(Box::new(cert)))
}

pub fn run(a: Args) -> Result<u8> {
    let mut manifest = RunManifest::new("construct", &a);
    manifest.budget = Some(a.limits.nodes);
    manifest.outputs = display_paths(&[a.out.as_ref(), a.dot.as_ref()]);
    let coloring = match build(&a)? {
        Built::Coloring(g) => {
            emit(a.out.as_ref(), &g.to_text())?;
            g
        }
        Built::Certificate(mut cert) => {
            cert.manifest = Some(manifest.to_value());
            emit(a.out.as_ref(), &format!("{}\n", cert.to_json()))?;
            if a.out.is_some() {
                print(&format!(
                    "{}: {} in {} colors, {}\n",
                    cert.construction,
                    cert.coloring.host(),
                    cert.coloring.k(),
                    if cert.verdicts.all_pass() {
                        "all verdicts pass"
                    } else {
                        "verdicts FAIL"
                    }
                ))?;
            }
            if !cert.reverify().all_pass() {
                return Ok(VERDICT);
            }
            cert.coloring
        }
    };
    if let Some(path) = &a.dot {
        emit(Some(path), &to_dot(&coloring))?;
    }
    Ok(PASS)
}
