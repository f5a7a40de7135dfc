use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use grstar_core::search::*;
use grstar_core::{EdgeColoring, HostGraph, SearchStats};
use serde::Serialize;
use serde_json::{json, Value};

use crate::inputs::{display_paths, emit, per_color, single_target, target, Limits};
use crate::manifest::RunManifest;
use crate::{BUDGET, PASS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    /// `R(H1, H2)`.
    Ramsey,
    /// `r*(H1, H2)`.
    RamseyStar,
    /// `gr_k(K3 : H_1, ..., H_k)`.
    Gr,
    /// `gr*_k(K3 : H_1, ..., H_k)`.
    GrStar,
    /// Both numbers next to their 2-color counterparts.
    Fullness,
    /// Critical colorings of `K_n` up to isomorphism.
    Critical,
    /// The merge family of a non-bipartite target.
    Merges,
    /// Whether `--host` arrows the targets; resumable.
    Arrows,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodArg {
    Dfs,
    Levelwise,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyArg {
    Direct,
    Extend,
}

#[derive(clap::Args, Debug, Serialize)]
pub struct Args {
    #[arg(value_enum)]
    quantity: Quantity,
    /// Target graph: builtin name or edge-list file. Repeat for one per color.
    #[arg(long)]
    target: Vec<String>,
    /// Number of colors.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Host order: the known threshold for star searches, the clique order
    /// for `critical`.
    #[arg(long)]
    n: Option<usize>,
    /// Host for `arrows`, e.g. `K6` or `K5+2:0,1`.
    #[arg(long)]
    host: Option<String>,
    /// Allow rainbow triangles in `arrows`.
    #[arg(long)]
    allow_rainbow: bool,
    /// Largest host order tried.
    #[arg(long, default_value_t = 20)]
    max_order: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Dfs)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = StrategyArg::Extend)]
    strategy: StrategyArg,
    #[command(flatten)]
    limits: Limits,
    /// Where `arrows` writes its unexplored prefixes when the budget runs out.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Continue `arrows` from a checkpoint file.
    #[arg(long)]
    resume: Option<PathBuf>,
    /// Result path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Args {
    fn method(&self) -> Method {
        match self.method {
            MethodArg::Dfs => Method::Dfs,
            MethodArg::Levelwise => Method::Levelwise,
        }
    }

    fn strategy(&self) -> Strategy {
        match self.strategy {
            StrategyArg::Direct => Strategy::Direct,
            StrategyArg::Extend => Strategy::Extend,
        }
    }

    fn pair(&self) -> Result<(grstar_core::TargetGraph, grstar_core::TargetGraph)> {
        match self.target.as_slice() {
            [one] => {
                let h = target(one)?;
                Ok((h.clone(), h))
            }
            [a, b] => Ok((target(a)?, target(b)?)),
            _ => bail!("give one or two --target values"),
        }
    }
}

fn number(r: SearchResult) -> Value {
    json!({
        "value": r.value,
        "exact": r.exact,
        "witness": r.witness.as_ref().map(EdgeColoring::to_text),
        "stats": r.stats,
    })
}

fn arrows_run(a: &Args) -> Result<(Value, u8)> {
    let host: HostGraph = a.host.as_deref().context("--host is required")?.parse()?;
    let problem = SearchProblem::new(host, per_color(&a.target, a.k)?, !a.allow_rainbow)?;
    let mut config = a.limits.config();
    if let Some(path) = &a.resume {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        config.resume = Some(parse_checkpoint(&text)?);
    }
    match arrows_resumable(&problem, &config)? {
        SearchRun::Complete(out) => Ok((
            json!({
                "arrows": out.arrows,
                "counterexample": out.counterexample.as_ref().map(EdgeColoring::to_text),
                "stats": out.stats,
            }),
            PASS,
        )),
        SearchRun::Interrupted { checkpoint, stats } => {
            if let Some(path) = &a.checkpoint {
                fs::write(path, format_checkpoint(&checkpoint))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let value =
                json!({ "interrupted": true, "open_prefixes": checkpoint.len(), "stats": stats });
            Ok((value, BUDGET))
        }
    }
}

fn compute(a: &Args) -> Result<(Value, u8)> {
    let config = a.limits.config();
    let value = match a.quantity {
        Quantity::Ramsey => {
            let (h1, h2) = a.pair()?;
            number(ramsey2(&h1, &h2, a.max_order, &config)?)
        }
        Quantity::RamseyStar => {
            let (h1, h2) = a.pair()?;
            number(star_critical_ramsey2(&h1, &h2, a.n, &config)?)
        }
        Quantity::Gr => number(gallai_ramsey_number(
            &per_color(&a.target, a.k)?,
            a.max_order,
            a.method(),
            &config,
        )?),
        Quantity::GrStar => {
            let targets = per_color(&a.target, a.k)?;
            let n = match a.n {
                Some(n) => n,
                None => gallai_ramsey_number(&targets, a.max_order, a.method(), &config)?.value,
            };
            number(star_critical_gallai_number(
                &targets,
                Some(n),
                a.strategy(),
                &config,
            )?)
        }
        Quantity::Fullness => {
            let h = single_target(&a.target)?;
            serde_json::to_value(fullness_check(a.k, &h, a.method(), a.strategy(), &config)?)?
        }
        Quantity::Critical => {
            let n = a.n.context("--n is required")?;
            let classes = enumerate_critical_colorings(&per_color(&a.target, a.k)?, n, &config)?;
            json!({
                "classes": classes.len(),
                "colorings": classes.iter().map(EdgeColoring::to_text).collect::<Vec<_>>(),
            })
        }
        Quantity::Merges => {
            let family = merge_parameters(&single_target(&a.target)?, a.max_order, &config)?;
            json!({
                "members": family.members.iter().map(|h| h.to_text()).collect::<Vec<_>>(),
                "m": family.m_h,
                "r_star": family.r_star_family,
                "stats": family.stats,
            })
        }
        Quantity::Arrows => return arrows_run(a),
    };
    Ok((value, PASS))
}

pub fn run(a: Args) -> Result<u8> {
    let mut manifest = RunManifest::new("search", &a);
    manifest.budget = Some(a.limits.nodes);
    manifest.outputs = display_paths(&[a.out.as_ref(), a.checkpoint.as_ref()]);
    let (mut value, code) = match compute(&a) {
        Ok(r) => r,
        Err(e) => match e.downcast_ref::<grstar_core::Error>() {
            Some(grstar_core::Error::BudgetExceeded { stats }) => {
                (json!({ "budget_exceeded": true, "stats": stats }), BUDGET)
            }
            _ => return Err(e),
        },
    };
    value["manifest"] = manifest.to_value();
    emit(
        a.out.as_ref(),
        &format!("{}\n", serde_json::to_string_pretty(&value)?),
    )?;
    if code == BUDGET {
        let stats: SearchStats = serde_json::from_value(value["stats"].clone()).unwrap_or_default();
        eprintln!("budget exhausted after {} nodes", stats.nodes);
    }
    Ok(code)
}
