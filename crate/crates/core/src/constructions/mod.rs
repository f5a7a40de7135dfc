//! Explicit critical and extremal colorings.
//!
//! Vertex `i` (0-based) of every construction corresponds to `v_{i+1}`; the
//! star center, when present, is the last vertex.

mod c4;
mod p4;
mod star;
mod towers;

use std::collections::BTreeMap;

use serde_json::Value;

pub use c4::{build_c4_critical, extend_c4_lower};
pub use p4::{build_p4_critical, extend_p4_lower, InnerRule};
pub use star::{build_star_critical, extend_star_lower, star_part_sizes, StarInner};
pub use towers::{
    bipartite_star_size, bipartite_vertex_count, build_bipartite_lower, build_nonbipartite_lower,
    extend_bipartite_lower, extend_nonbipartite_lower, tower_star_size, tower_vertex_count,
    NonBipartiteSeeds, TowerParams,
};

use crate::certificate::Certificate;
use crate::coloring::{Color, EdgeColoring, HostGraph};
use crate::detect::find_monochromatic;
use crate::error::{Error, Result};
use crate::target::TargetGraph;

/// Color of the pair `(i, j)` of the two edge-disjoint 5-cycles on
/// `0..5`: the cycle `0-1-2-3-4-0` in color 1 and the pentagram
/// `0-3-1-4-2-0` in color 2.
pub fn two_c5_color(i: usize, j: usize) -> Color {
    match i.abs_diff(j) {
        1 | 4 => 1,
        _ => 2,
    }
}

/// A verified 2-coloring (colors 1 and 2) of a complete graph or star
/// extension with no monochromatic member of `targets` in either color.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoColorCritical {
    pub coloring: EdgeColoring,
    pub targets: Vec<TargetGraph>,
}

impl TwoColorCritical {
    pub fn new(coloring: EdgeColoring, targets: Vec<TargetGraph>) -> Result<Self> {
        if coloring.used_colors().iter().any(|&c| c > 2) {
            return Err(Error::BadCritical("uses a color other than 1 and 2".into()));
        }
        let coloring = coloring.with_k(2)?;
        for c in 1..=2 {
            if let Some(h) = targets
                .iter()
                .find(|h| find_monochromatic(&coloring, h, c).is_some())
            {
                return Err(Error::BadCritical(format!(
                    "contains {} in color {c}",
                    h.name()
                )));
            }
        }
        Ok(TwoColorCritical { coloring, targets })
    }

    /// The coloring of the clique, without the star center.
    pub fn clique(&self) -> EdgeColoring {
        self.coloring
            .clique_part()
            .expect("clique part of a valid coloring")
    }

    pub fn clique_order(&self) -> usize {
        self.coloring.host().clique_order()
    }

    pub fn star_size(&self) -> usize {
        self.coloring.host().star_size()
    }
}

/// Substitutes `inners[i]` for vertex `i` of `outer`; edges between copies
/// take the outer color. The palette is the outer one, and every inner
/// coloring must fit it.
pub fn blow_up(outer: &EdgeColoring, inners: &[EdgeColoring]) -> Result<EdgeColoring> {
    if !outer.host().is_complete() || inners.iter().any(|g| !g.host().is_complete()) {
        return Err(Error::BadParameter(
            "blow-ups combine complete colorings".into(),
        ));
    }
    if inners.len() != outer.order() {
        return Err(Error::BadParameter(format!(
            "{} inner colorings for {} outer vertices",
            inners.len(),
            outer.order()
        )));
    }
    if let Some(g) = inners.iter().find(|g| g.k() > outer.k()) {
        return Err(Error::ColorRangeMismatch(format!(
            "inner palette [{}] exceeds outer palette [{}]",
            g.k(),
            outer.k()
        )));
    }
    let offsets: Vec<usize> = inners
        .iter()
        .scan(0, |acc, g| {
            let start = *acc;
            *acc += g.order();
            Some(start)
        })
        .collect();
    let total: usize = inners.iter().map(EdgeColoring::order).sum();
    let mut part = vec![0; total];
    for (i, g) in inners.iter().enumerate() {
        for v in 0..g.order() {
            part[offsets[i] + v] = i;
        }
    }
    EdgeColoring::from_fn(HostGraph::complete(total)?, outer.k(), |u, v| {
        let (pu, pv) = (part[u], part[v]);
        if pu == pv {
            inners[pu].raw(u - offsets[pu], v - offsets[pv])
        } else {
            outer.raw(pu, pv)
        }
    })
}

/// Adds a center joined to every vertex except `u`, copying `u`'s colors.
pub fn clone_extension(g: &EdgeColoring, u: usize) -> Result<EdgeColoring> {
    if !g.host().is_complete() {
        return Err(Error::BadParameter(
            "clone extension needs a complete host".into(),
        ));
    }
    if u >= g.order() {
        return Err(Error::BadParameter(format!(
            "vertex {u} outside K{}",
            g.order()
        )));
    }
    let star: Vec<(usize, Color)> = (0..g.order())
        .filter(|&w| w != u)
        .map(|w| (w, g.raw(u, w)))
        .collect();
    g.extend_with_star(&star)
}

/// Certificate for [`clone_extension`] of a critical coloring, with one
/// target per color.
pub fn clone_certificate(
    g: &EdgeColoring,
    u: usize,
    targets: Vec<TargetGraph>,
) -> Result<Certificate> {
    let ext = clone_extension(g, u)?;
    let n = g.order();
    let mut params = BTreeMap::new();
    params.insert("u".into(), Value::from(u));
    params.insert("k".into(), Value::from(g.k()));
    Certificate::issue("clone", params, ext, targets, n, Some(n.saturating_sub(1)))
}

pub(crate) fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::find_rainbow_triangle;

    #[test]
    fn blow_up_single_edge() {
        let outer = EdgeColoring::monochromatic(2, 2, 1).unwrap();
        let dot = EdgeColoring::monochromatic(1, 1, 1).unwrap();
        let g = blow_up(&outer, &[dot.clone(), dot]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1, 1)]);

        let inner = EdgeColoring::monochromatic(2, 2, 2).unwrap();
        let g = blow_up(&outer, &[inner.clone(), inner]).unwrap();
        let ones = g.edges().iter().filter(|e| e.2 == 1).count();
        assert_eq!((g.order(), ones), (4, 4));
        assert_eq!((g.color(0, 1), g.color(2, 3)), (Some(2), Some(2)));
    }

    #[test]
    fn blow_up_palette_mismatch() {
        let outer = EdgeColoring::monochromatic(2, 1, 1).unwrap();
        let inner = EdgeColoring::monochromatic(2, 2, 2).unwrap();
        assert!(matches!(
            blow_up(&outer, &[inner.clone(), inner]),
            Err(Error::ColorRangeMismatch(_))
        ));
    }

    #[test]
    fn clone_of_mono_k2() {
        let g = EdgeColoring::monochromatic(2, 1, 1).unwrap();
        let ext = clone_extension(&g, 0).unwrap();
        assert_eq!(ext.edges(), vec![(0, 1, 1), (1, 2, 1)]);
        assert!(find_monochromatic(&ext, &TargetGraph::clique(3), 1).is_none());
    }

    #[test]
    fn clone_of_c4_critical_is_rainbow_free() {
        let g = build_c4_critical(5).unwrap().coloring;
        for u in 0..g.order() {
            assert!(find_rainbow_triangle(&clone_extension(&g, u).unwrap()).is_none());
        }
    }

    #[test]
    fn two_color_critical_rejects_mono_target() {
        let mono = EdgeColoring::monochromatic(4, 2, 1).unwrap();
        assert!(matches!(
            TwoColorCritical::new(mono, vec![TargetGraph::cycle(4)]),
            Err(Error::BadCritical(_))
        ));
    }
}
