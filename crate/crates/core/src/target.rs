//! Target graphs `H` and their classification.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A small simple graph to be avoided (or found) monochromatically.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TargetGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    label: Option<String>,
}

impl TargetGraph {
    pub const MAX_ORDER: usize = 64;

    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > Self::MAX_ORDER {
            return Err(Error::TooLarge {
                n,
                bound: Self::MAX_ORDER,
            });
        }
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::BadParameter(format!("loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::BadParameter(format!(
                    "edge {u}-{v} outside {n} vertices"
                )));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if list.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadParameter("repeated edge".into()));
        }
        Ok(TargetGraph {
            n,
            edges: list,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn clique(p: usize) -> Self {
        let edges = (0..p).flat_map(|u| (u + 1..p).map(move |v| (u, v)));
        Self::new(p, edges)
            .expect("clique")
            .with_label(format!("K{p}"))
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v)))
            .expect("path")
            .with_label(format!("P{n}"))
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles have at least three vertices");
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n)))
            .expect("cycle")
            .with_label(format!("C{n}"))
    }

    /// `K_{1,m}` with center 0.
    pub fn star(m: usize) -> Self {
        Self::new(m + 1, (1..=m).map(|v| (0, v)))
            .expect("star")
            .with_label(format!("K1_{m}"))
    }

    /// Resolves names such as `K3`, `P4`, `C5`, `K1_3`.
    pub fn builtin(name: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown target '{name}'"));
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
        if let Some(m) = name
            .strip_prefix("K1_")
            .or_else(|| name.strip_prefix("K1,"))
        {
            let m = num(m)?;
            return if m >= 1 && m < Self::MAX_ORDER {
                Ok(Self::star(m))
            } else {
                Err(bad())
            };
        }
        let (head, rest) = name.split_at(1.min(name.len()));
        let size = num(rest)?;
        if size == 0 || size > Self::MAX_ORDER {
            return Err(bad());
        }
        match head {
            "K" => Ok(Self::clique(size)),
            "P" => Ok(Self::path(size)),
            "C" if size >= 3 => Ok(Self::cycle(size)),
            _ => Err(bad()),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn name(&self) -> String {
        self.label
            .clone()
            .unwrap_or_else(|| format!("G{}_{}", self.n, self.edges.len()))
    }

    /// Neighborhoods as bit masks.
    pub fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency()
            .iter()
            .map(|m| m.count_ones() as usize)
            .collect()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.degrees().contains(&0)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & !seen;
            seen |= new;
            frontier |= new;
        }
        seen.count_ones() as usize == self.n
    }

    /// A proper 2-coloring (side of each vertex), if one exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let adj = self.adjacency();
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let mut nb = adj[u];
                while nb != 0 {
                    let v = nb.trailing_zeros() as usize;
                    nb &= nb - 1;
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        stack.push(v);
                    } else if side[v] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn chromatic_number(&self) -> usize {
        if self.n == 0 {
            return 0;
        }
        if self.edges.is_empty() {
            return 1;
        }
        if self.bipartition().is_some() {
            return 2;
        }
        let adj = self.adjacency();
        (3..=self.n).find(|&c| colorable(&adj, c)).unwrap_or(self.n)
    }

    /// Parses the edge-list format: `n m` followed by `m` lines `u v`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut nums = Vec::new();
        for tok in text
            .lines()
            .filter(|l| !l.trim_start().starts_with('#'))
            .flat_map(str::split_whitespace)
        {
            nums.push(
                tok.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad token '{tok}'")))?,
            );
        }
        if nums.len() < 2 {
            return Err(Error::Parse("missing 'n m' header".into()));
        }
        let (n, m) = (nums[0], nums[1]);
        if nums.len() != 2 + 2 * m {
            return Err(Error::Parse(format!(
                "expected {m} edges, found {} numbers",
                nums.len() - 2
            )));
        }
        Self::new(n, nums[2..].chunks(2).map(|p| (p[0], p[1])))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for TargetGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.name(), self.edges)
    }
}

fn colorable(adj: &[u64], colors: usize) -> bool {
    fn go(v: usize, adj: &[u64], colors: usize, assign: &mut [usize]) -> bool {
        if v == adj.len() {
            return true;
        }
        // Symmetry: vertex v may open at most one new color.
        let opened = assign[..v].iter().copied().max().map_or(0, |m| m + 1);
        for c in 0..colors.min(opened + 1) {
            let clash = (0..v).any(|u| adj[v] >> u & 1 == 1 && assign[u] == c);
            if !clash {
                assign[v] = c;
                if go(v + 1, adj, colors, assign) {
                    return true;
                }
            }
        }
        false
    }
    go(0, adj, colors, &mut vec![0; adj.len()])
}

/// Structural family of a target; the first matching tag wins in the order
/// listed, so `K3` is a clique and `P3` is a star.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Clique(usize),
    Cycle(usize),
    Star(usize),
    Path(usize),
    GeneralBipartite,
    GeneralNonBipartite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetProfile {
    pub bipartite: bool,
    pub connected: bool,
    /// Smaller part order, for connected bipartite targets.
    pub s_h: Option<usize>,
    /// Larger part order, for connected bipartite targets.
    pub l_h: Option<usize>,
    pub chi: usize,
    pub family: Family,
    pub is_star: bool,
}

impl TargetProfile {
    /// `(s(H), l(H))`; requires a connected bipartite target.
    pub fn parts(&self) -> Result<(usize, usize)> {
        if !self.bipartite {
            return Err(Error::NotBipartite);
        }
        match (self.s_h, self.l_h) {
            (Some(s), Some(l)) => Ok((s, l)),
            _ => Err(Error::Disconnected),
        }
    }
}

pub fn classify_target(h: &TargetGraph) -> TargetProfile {
    let n = h.order();
    let m = h.edge_count();
    let deg = h.degrees();
    let connected = h.is_connected();
    let side = h.bipartition();
    let (s_h, l_h) = match (&side, connected) {
        (Some(side), true) => {
            let ones = side.iter().filter(|&&s| s == 1).count();
            let zeros = n - ones;
            (Some(ones.min(zeros)), Some(ones.max(zeros)))
        }
        _ => (None, None),
    };
    let max_deg = deg.iter().copied().max().unwrap_or(0);
    let family = if n >= 1 && m == n * (n - 1) / 2 {
        Family::Clique(n)
    } else if connected && n >= 4 && deg.iter().all(|&d| d == 2) {
        Family::Cycle(n)
    } else if connected && n >= 3 && m == n - 1 && max_deg == n - 1 {
        Family::Star(n - 1)
    } else if connected && n >= 4 && m == n - 1 && max_deg <= 2 {
        Family::Path(n)
    } else if side.is_some() {
        Family::GeneralBipartite
    } else {
        Family::GeneralNonBipartite
    };
    let is_star = matches!(family, Family::Star(_)) || (n == 2 && m == 1);
    TargetProfile {
        bipartite: side.is_some(),
        connected,
        s_h,
        l_h,
        chi: h.chromatic_number(),
        family,
        is_star,
    }
}
