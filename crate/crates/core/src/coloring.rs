//! Host graphs and their edge colorings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// A color from the palette `[k]`; colors are 1-based.
pub type Color = u8;

/// The graph whose edges get colored: either `K_n`, or `K_{n-1}` plus a
/// center vertex joined to `s` clique vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HostGraph {
    Complete(usize),
    StarExtension {
        clique: usize,
        attachment: Vec<usize>,
    },
}

impl HostGraph {
    pub fn complete(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidHost("K0 has no vertices".into()));
        }
        Ok(HostGraph::Complete(n))
    }

    /// `K_clique` plus a center joined to the given clique vertices. The
    /// attachment is stored sorted.
    pub fn star_extension(
        clique: usize,
        attachment: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut attachment: Vec<usize> = attachment.into_iter().collect();
        attachment.sort_unstable();
        if attachment.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidHost("repeated attachment vertex".into()));
        }
        if let Some(&v) = attachment.iter().find(|&&v| v >= clique) {
            return Err(Error::InvalidHost(format!(
                "attachment vertex {v} outside clique of order {clique}"
            )));
        }
        Ok(HostGraph::StarExtension { clique, attachment })
    }

    /// Star extension attached to the first `s` clique vertices.
    pub fn canonical_star(clique: usize, s: usize) -> Result<Self> {
        if s > clique {
            return Err(Error::InvalidHost(format!(
                "star size {s} exceeds clique order {clique}"
            )));
        }
        Self::star_extension(clique, 0..s)
    }

    /// Number of vertices, center included.
    pub fn order(&self) -> usize {
        match self {
            HostGraph::Complete(n) => *n,
            HostGraph::StarExtension { clique, .. } => clique + 1,
        }
    }

    pub fn clique_order(&self) -> usize {
        match self {
            HostGraph::Complete(n) => *n,
            HostGraph::StarExtension { clique, .. } => *clique,
        }
    }

    /// Index of the star center (always the last vertex).
    pub fn center(&self) -> Option<usize> {
        match self {
            HostGraph::Complete(_) => None,
            HostGraph::StarExtension { clique, .. } => Some(*clique),
        }
    }

    pub fn attachment(&self) -> &[usize] {
        match self {
            HostGraph::Complete(_) => &[],
            HostGraph::StarExtension { attachment, .. } => attachment,
        }
    }

    pub fn star_size(&self) -> usize {
        self.attachment().len()
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, HostGraph::Complete(_))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v || u >= self.order() || v >= self.order() {
            return false;
        }
        match self.center() {
            Some(c) if u == c || v == c => {
                let w = if u == c { v } else { u };
                self.attachment().binary_search(&w).is_ok()
            }
            _ => true,
        }
    }

    /// All edges `(u, v)` with `u < v`, ordered by `v` then `u`, so each
    /// vertex's edges to earlier vertices form a contiguous block.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        (1..n)
            .flat_map(|v| (0..v).map(move |u| (u, v)))
            .filter(|&(u, v)| self.has_edge(u, v))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        let c = self.clique_order();
        c * (c - 1) / 2 + self.star_size()
    }
}

impl fmt::Display for HostGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HostGraph::Complete(n) => write!(f, "K{n}"),
            HostGraph::StarExtension { clique, attachment } => {
                let list: Vec<String> = attachment.iter().map(|v| v.to_string()).collect();
                write!(f, "K{clique}+{}:{}", attachment.len(), list.join(","))
            }
        }
    }
}

impl FromStr for HostGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad host '{s}'"));
        let rest = s.trim().strip_prefix('K').ok_or_else(bad)?;
        match rest.split_once('+') {
            None => HostGraph::complete(rest.parse().map_err(|_| bad())?),
            Some((clique, star)) => {
                let clique: usize = clique.parse().map_err(|_| bad())?;
                let (size, list) = star.split_once(':').unwrap_or((star, ""));
                let size: usize = size.parse().map_err(|_| bad())?;
                let attachment = list
                    .split(',')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                if attachment.len() != size {
                    return Err(Error::Parse(format!(
                        "host '{s}' lists {} attachment vertices, expected {size}",
                        attachment.len()
                    )));
                }
                HostGraph::star_extension(clique, attachment)
            }
        }
    }
}

/// An edge coloring of a host graph with colors from `[k]`. Not every
/// color has to be used.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    host: HostGraph,
    k: Color,
    n: usize,
    // Row-major symmetric matrix; 0 marks a non-edge.
    colors: Vec<Color>,
}

impl EdgeColoring {
    /// Builds a coloring from an explicit list of `(u, v, color)`; every host
    /// edge must be listed exactly once.
    pub fn new(host: HostGraph, k: Color, assignments: &[(usize, usize, Color)]) -> Result<Self> {
        let n = host.order();
        let mut colors = vec![0; n * n];
        for &(u, v, c) in assignments {
            if !host.has_edge(u, v) {
                return Err(Error::EdgeNotInHost(u, v));
            }
            if c == 0 || c > k {
                return Err(Error::ColorOutOfRange { color: c, k });
            }
            if colors[u * n + v] != 0 {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            colors[u * n + v] = c;
            colors[v * n + u] = c;
        }
        if let Some((u, v)) = host
            .edges()
            .into_iter()
            .find(|&(u, v)| colors[u * n + v] == 0)
        {
            return Err(Error::MissingEdge(u, v));
        }
        Ok(EdgeColoring { host, k, n, colors })
    }

    /// Colors every host edge by `f(u, v)` with `u < v`.
    pub fn from_fn(
        host: HostGraph,
        k: Color,
        mut f: impl FnMut(usize, usize) -> Color,
    ) -> Result<Self> {
        let assignments: Vec<_> = host
            .edges()
            .into_iter()
            .map(|(u, v)| (u, v, f(u, v)))
            .collect();
        Self::new(host, k, &assignments)
    }

    /// `K_n` with every edge in `color`.
    pub fn monochromatic(n: usize, k: Color, color: Color) -> Result<Self> {
        Self::from_fn(HostGraph::complete(n)?, k, |_, _| color)
    }

    pub(crate) fn from_matrix_unchecked(host: HostGraph, k: Color, colors: Vec<Color>) -> Self {
        let n = host.order();
        debug_assert_eq!(colors.len(), n * n);
        EdgeColoring { host, k, n, colors }
    }

    pub fn host(&self) -> &HostGraph {
        &self.host
    }

    pub fn k(&self) -> Color {
        self.k
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Option<Color> {
        if u >= self.n || v >= self.n {
            return None;
        }
        match self.raw(u, v) {
            0 => None,
            c => Some(c),
        }
    }

    /// Raw color with 0 for non-edges.
    #[inline]
    pub(crate) fn raw(&self, u: usize, v: usize) -> Color {
        self.colors[u * self.n + v]
    }

    pub(crate) fn matrix(&self) -> &[Color] {
        &self.colors
    }

    /// `(u, v, color)` for every host edge, in host edge order.
    pub fn edges(&self) -> Vec<(usize, usize, Color)> {
        self.host
            .edges()
            .into_iter()
            .map(|(u, v)| (u, v, self.raw(u, v)))
            .collect()
    }

    pub fn used_colors(&self) -> Vec<Color> {
        let mut seen = vec![false; self.k as usize + 1];
        for &c in &self.colors {
            seen[c as usize] = true;
        }
        (1..=self.k).filter(|&c| seen[c as usize]).collect()
    }

    /// Adjacency of the color-`c` class.
    pub fn color_class(&self, c: Color) -> Vec<VertexSet> {
        (0..self.n)
            .map(|u| {
                let mut s = VertexSet::new(self.n);
                for v in 0..self.n {
                    if self.raw(u, v) == c {
                        s.insert(v);
                    }
                }
                s
            })
            .collect()
    }

    /// Same coloring viewed with a larger palette.
    pub fn with_k(&self, k: Color) -> Result<Self> {
        if let Some(&c) = self.used_colors().last() {
            if c > k {
                return Err(Error::ColorOutOfRange { color: c, k });
            }
        }
        Ok(EdgeColoring { k, ..self.clone() })
    }

    /// Applies `map[c - 1]` to every color; `new_k` is the resulting palette.
    pub fn recolor(&self, map: &[Color], new_k: Color) -> Result<Self> {
        if map.len() < self.k as usize {
            return Err(Error::BadParameter(format!(
                "color map covers {} of {} colors",
                map.len(),
                self.k
            )));
        }
        if let Some(&c) = map.iter().find(|&&c| c == 0 || c > new_k) {
            return Err(Error::ColorOutOfRange { color: c, k: new_k });
        }
        let colors = self
            .colors
            .iter()
            .map(|&c| if c == 0 { 0 } else { map[c as usize - 1] })
            .collect();
        Ok(EdgeColoring {
            host: self.host.clone(),
            k: new_k,
            n: self.n,
            colors,
        })
    }

    /// Relabels vertices of a complete coloring: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if !self.host.is_complete() {
            return Err(Error::BadParameter(
                "relabel is defined for complete hosts".into(),
            ));
        }
        let n = self.n;
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::BadParameter("not a permutation".into()));
        }
        let mut colors = vec![0; n * n];
        for u in 0..n {
            for v in 0..n {
                colors[perm[u] * n + perm[v]] = self.raw(u, v);
            }
        }
        Ok(EdgeColoring {
            host: self.host.clone(),
            k: self.k,
            n,
            colors,
        })
    }

    /// The coloring induced on a vertex subset (in the given order) as a
    /// complete coloring; all listed vertices must be pairwise adjacent.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let m = vertices.len();
        let mut colors = vec![0; m * m];
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if i != j {
                    let c = self.color(u, v).ok_or(Error::EdgeNotInHost(u, v))?;
                    colors[i * m + j] = c;
                }
            }
        }
        Ok(EdgeColoring {
            host: HostGraph::complete(m)?,
            k: self.k,
            n: m,
            colors,
        })
    }

    /// Drops the star center, leaving the clique coloring.
    pub fn clique_part(&self) -> Result<Self> {
        let c = self.host.clique_order();
        self.induced(&(0..c).collect::<Vec<_>>())
    }

    /// Extends a complete coloring by a center vertex joined to
    /// `star[i].0` in color `star[i].1`.
    pub fn extend_with_star(&self, star: &[(usize, Color)]) -> Result<Self> {
        if !self.host.is_complete() {
            return Err(Error::BadParameter(
                "star extension needs a complete host".into(),
            ));
        }
        let host = HostGraph::star_extension(self.n, star.iter().map(|&(v, _)| v))?;
        let center = self.n;
        let mut assignments = self.edges();
        assignments.extend(star.iter().map(|&(v, c)| (v, center, c)));
        Self::new(host, self.k, &assignments)
    }

    /// Parses the text format: a `host k` header followed by `u v c` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty coloring file".into()))?;
        let (host, k) = header
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Parse(format!("bad header '{header}'")))?;
        let host: HostGraph = host.parse()?;
        let k: Color = k
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad palette size '{k}'")))?;
        let mut assignments = Vec::new();
        for line in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                [u, v, c] => (u.parse(), v.parse(), c.parse()),
                _ => return Err(Error::Parse(format!("bad edge line '{line}'"))),
            };
            match parsed {
                (Ok(u), Ok(v), Ok(c)) => assignments.push((u, v, c)),
                _ => return Err(Error::Parse(format!("bad edge line '{line}'"))),
            }
        }
        Self::new(host, k, &assignments)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.host, self.k);
        for (u, v, c) in self.edges() {
            out.push_str(&format!("{u} {v} {c}\n"));
        }
        out
    }
}

impl fmt::Debug for EdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "EdgeColoring({}, k={}, {:?})",
            self.host,
            self.k,
            self.edges()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rainbow_k3_is_valid() {
        let g = EdgeColoring::new(
            HostGraph::Complete(3),
            3,
            &[(0, 1, 1), (0, 2, 2), (1, 2, 3)],
        )
        .unwrap();
        assert_eq!(g.color(1, 0), Some(1));
        assert_eq!(g.used_colors(), vec![1, 2, 3]);
    }

    #[test]
    fn single_edge() {
        let g = EdgeColoring::new(HostGraph::Complete(2), 1, &[(0, 1, 1)]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1, 1)]);
    }

    #[test]
    fn rejects_non_attachment_edge() {
        let host = HostGraph::star_extension(4, [0, 1]).unwrap();
        let mut a: Vec<_> = (0..4)
            .flat_map(|u| (u + 1..4).map(move |v| (u, v, 1)))
            .collect();
        a.extend([(0, 4, 1), (1, 4, 1), (2, 4, 1)]);
        assert_eq!(
            EdgeColoring::new(host, 2, &a),
            Err(Error::EdgeNotInHost(2, 4))
        );
    }

    #[test]
    fn error_paths() {
        let h = HostGraph::Complete(3);
        assert_eq!(
            EdgeColoring::new(h.clone(), 2, &[(0, 1, 1), (0, 2, 1)]),
            Err(Error::MissingEdge(1, 2))
        );
        assert_eq!(
            EdgeColoring::new(h.clone(), 2, &[(0, 1, 1), (1, 0, 2), (0, 2, 1), (1, 2, 1)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert_eq!(
            EdgeColoring::new(h, 2, &[(0, 1, 3), (0, 2, 1), (1, 2, 1)]),
            Err(Error::ColorOutOfRange { color: 3, k: 2 })
        );
    }

    #[test]
    fn text_round_trip() {
        let g = EdgeColoring::monochromatic(4, 2, 1)
            .unwrap()
            .extend_with_star(&[(1, 2), (3, 1)])
            .unwrap();
        let text = g.to_text();
        assert!(text.starts_with("K4+2:1,3 2\n"));
        assert_eq!(EdgeColoring::parse(&text).unwrap(), g);
    }

    #[test]
    fn host_edges_ordered_by_later_endpoint() {
        let h = HostGraph::star_extension(3, [2]).unwrap();
        assert_eq!(h.edges(), vec![(0, 1), (0, 2), (1, 2), (2, 3)]);
        assert_eq!(h.edge_count(), 4);
    }
}
