//! Exhaustive searches for Ramsey-type numbers.
//!
//! The central question is whether a host graph *arrows* its targets: every
//! coloring from `[k]` contains a rainbow triangle (for Gallai problems) or a
//! copy of a color-`i` target in color `i`. Everything else here is a search
//! for the least host size or star size at which that happens.

mod engine;
mod levelwise;
mod merges;
mod numbers;
mod pattern;
mod structure;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::canon::{graph_key, DEFAULT_CANON_BOUND};
use crate::coloring::{Color, EdgeColoring, HostGraph};
use crate::error::{Error, Result};
use crate::target::TargetGraph;

pub use engine::{arrows, arrows_resumable, ArrowsOutcome, SearchRun};
pub use levelwise::enumerate_critical_colorings;
pub use merges::{enumerate_merges, merge_parameters, MergeFamily, DEFAULT_MERGE_BOUND};
pub use numbers::{
    fullness_check, gallai_ramsey_number, ramsey2, star_critical_gallai_number,
    star_critical_ramsey2, star_critical_ramsey2_family, FullnessReport, Method, Strategy,
};
pub use structure::{matches_p4_template, matches_star_template};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// Counters reported by every search.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Color assignments tried.
    pub nodes: u64,
    pub rainbow_prunes: u64,
    pub target_prunes: u64,
    pub elapsed_ms: u64,
}

impl SearchStats {
    pub(crate) fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.rainbow_prunes += other.rainbow_prunes;
        self.target_prunes += other.target_prunes;
        self.elapsed_ms += other.elapsed_ms;
    }
}

/// The graphs forbidden in one color; a coloring fails on this color when
/// any member appears. Members are kept smallest first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetSet {
    members: Vec<TargetGraph>,
}

impl TargetSet {
    pub fn new(members: Vec<TargetGraph>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::BadParameter("empty target set".into()));
        }
        if members.iter().any(|h| h.edge_count() == 0) {
            return Err(Error::BadParameter("targets need at least one edge".into()));
        }
        let mut members = members;
        members.sort_by_key(|h| (h.order(), h.edge_count()));
        Ok(TargetSet { members })
    }

    pub fn single(h: TargetGraph) -> Result<Self> {
        Self::new(vec![h])
    }

    pub fn members(&self) -> &[TargetGraph] {
        &self.members
    }

    pub(crate) fn key(&self) -> Vec<Vec<u8>> {
        let mut keys: Vec<Vec<u8>> = self.members.iter().map(graph_key).collect();
        keys.sort();
        keys
    }
}

impl From<TargetGraph> for TargetSet {
    fn from(h: TargetGraph) -> Self {
        TargetSet::single(h).expect("targets need at least one edge")
    }
}

/// One arrowing question.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchProblem {
    pub host: HostGraph,
    pub k: Color,
    /// `targets[i]` is forbidden in color `i + 1`.
    pub targets: Vec<TargetSet>,
    pub forbid_rainbow_triangle: bool,
}

impl SearchProblem {
    pub fn new(
        host: HostGraph,
        targets: Vec<TargetSet>,
        forbid_rainbow_triangle: bool,
    ) -> Result<Self> {
        if targets.is_empty() || targets.len() > 32 {
            return Err(Error::BadParameter(format!(
                "{} colors; supported are 1..=32",
                targets.len()
            )));
        }
        if host.order() > 64 {
            return Err(Error::TooLarge {
                n: host.order(),
                bound: 64,
            });
        }
        Ok(SearchProblem {
            host,
            k: targets.len() as Color,
            targets,
            forbid_rainbow_triangle,
        })
    }

    /// `k` colors, all forbidding the same set.
    pub fn symmetric(
        host: HostGraph,
        k: usize,
        target: TargetSet,
        forbid_rainbow_triangle: bool,
    ) -> Result<Self> {
        Self::new(host, vec![target; k], forbid_rainbow_triangle)
    }

    /// True when all colors forbid isomorphic sets, so colors may be
    /// permuted freely.
    pub fn colors_interchangeable(&self) -> bool {
        let first = self.targets[0].key();
        self.targets.iter().all(|t| t.key() == first)
    }
}

/// Limits and knobs shared by the searches.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    /// Color assignments allowed before giving up.
    pub node_budget: u64,
    /// Largest host order for canonical deduplication.
    pub canon_bound: usize,
    /// Run in the current thread only.
    pub sequential: bool,
    /// Restrict the search to these prefixes (from a checkpoint).
    pub resume: Option<Vec<Prefix>>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: DEFAULT_NODE_BUDGET,
            canon_bound: DEFAULT_CANON_BOUND,
            sequential: false,
            resume: None,
        }
    }
}

impl SearchConfig {
    pub fn with_budget(node_budget: u64) -> Self {
        SearchConfig {
            node_budget,
            ..Default::default()
        }
    }
}

/// A partial assignment `(edge index, color)` in the host's edge order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Prefix(pub Vec<(usize, Color)>);

impl fmt::Display for Prefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("*");
        }
        let parts: Vec<String> = self.0.iter().map(|(e, c)| format!("{e}:{c}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Prefix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "*" {
            return Ok(Prefix(Vec::new()));
        }
        s.split(',')
            .map(|item| {
                let (e, c) = item
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("bad prefix item {item:?}")))?;
                let e = e
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad edge index {e:?}")))?;
                let c = c
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad color {c:?}")))?;
                Ok((e, c))
            })
            .collect::<Result<_>>()
            .map(Prefix)
    }
}

/// Parses one prefix per nonempty line.
pub fn parse_checkpoint(text: &str) -> Result<Vec<Prefix>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(str::parse)
        .collect()
}

pub fn format_checkpoint(prefixes: &[Prefix]) -> String {
    prefixes.iter().map(|p| format!("{p}\n")).collect()
}

/// A computed number with a critical witness one step below it.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    pub value: usize,
    /// A coloring avoiding every target (and rainbow triangles where
    /// forbidden) on the largest non-arrowing host.
    pub witness: Option<EdgeColoring>,
    pub stats: SearchStats,
    /// The search covered every case; false when parts were skipped.
    pub exact: bool,
}
