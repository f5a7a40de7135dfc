//! Merges of a non-bipartite graph: quotients by partitions into
//! independent sets.

use std::collections::BTreeMap;

use super::numbers::{least_order, least_star, Strategy};
use super::{SearchConfig, SearchStats, TargetSet};
use crate::canon::graph_key;
use crate::coloring::EdgeColoring;
use crate::error::{Error, Result};
use crate::target::TargetGraph;

pub const DEFAULT_MERGE_BOUND: usize = 8;

/// The merges of `base`, with `m(H)` and `r*` of the family once computed.
#[derive(Clone, Debug, PartialEq)]
pub struct MergeFamily {
    pub base: TargetGraph,
    /// Members up to isomorphism, smallest first; `base` is among them.
    pub members: Vec<TargetGraph>,
    pub m_h: Option<usize>,
    pub r_star_family: Option<usize>,
    /// Critical 2-coloring of `K_{m(H)-1}` avoiding every member.
    pub witness: Option<EdgeColoring>,
    /// Critical star extension with star size `r*(family) - 1`.
    pub star_witness: Option<EdgeColoring>,
    pub stats: SearchStats,
}

impl MergeFamily {
    pub fn target_set(&self) -> TargetSet {
        TargetSet::new(self.members.clone()).expect("merge families are nonempty")
    }
}

fn quotient(h: &TargetGraph, block: &[usize], blocks: usize) -> TargetGraph {
    let mut edges: Vec<(usize, usize)> = h
        .edges()
        .iter()
        .map(|&(u, v)| (block[u].min(block[v]), block[u].max(block[v])))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    TargetGraph::new(blocks, edges).expect("quotient by independent sets is simple")
}

/// Every graph obtained from `h` by identifying the vertices of some
/// independent sets, up to isomorphism.
pub fn enumerate_merges(h: &TargetGraph) -> Result<MergeFamily> {
    enumerate_merges_with(h, DEFAULT_MERGE_BOUND)
}

pub fn enumerate_merges_with(h: &TargetGraph, bound: usize) -> Result<MergeFamily> {
    if h.order() > bound {
        return Err(Error::TooLarge {
            n: h.order(),
            bound,
        });
    }
    if h.bipartition().is_some() {
        return Err(Error::BipartiteInput);
    }
    let n = h.order();
    let adj = h.adjacency();
    let mut found: BTreeMap<Vec<u8>, TargetGraph> = BTreeMap::new();
    // Restricted growth strings, placing each vertex in a block without
    // any of its neighbors.
    fn go(
        x: usize,
        n: usize,
        adj: &[u64],
        block: &mut Vec<usize>,
        members: &mut Vec<u64>,
        h: &TargetGraph,
        found: &mut BTreeMap<Vec<u8>, TargetGraph>,
    ) {
        if x == n {
            let q = quotient(h, block, members.len());
            found.entry(graph_key(&q)).or_insert(q);
            return;
        }
        for b in 0..=members.len() {
            if b < members.len() && members[b] & adj[x] != 0 {
                continue;
            }
            if b == members.len() {
                members.push(0);
            }
            members[b] |= 1 << x;
            block.push(b);
            go(x + 1, n, adj, block, members, h, found);
            block.pop();
            members[b] &= !(1 << x);
            if members[b] == 0 {
                members.pop();
            }
        }
    }
    go(
        0,
        n,
        &adj,
        &mut Vec::with_capacity(n),
        &mut Vec::new(),
        h,
        &mut found,
    );
    let mut members: Vec<TargetGraph> = found.into_values().collect();
    members.sort_by(|a, b| {
        (a.order(), a.edge_count())
            .cmp(&(b.order(), b.edge_count()))
            .then(graph_key(a).cmp(&graph_key(b)))
    });
    Ok(MergeFamily {
        base: h.clone(),
        members,
        m_h: None,
        r_star_family: None,
        witness: None,
        star_witness: None,
        stats: SearchStats::default(),
    })
}

/// Computes `m(H)`, the 2-color Ramsey number of the merge family, and the
/// family's star-critical number, both with witnesses.
pub fn merge_parameters(
    h: &TargetGraph,
    n_max: usize,
    config: &SearchConfig,
) -> Result<MergeFamily> {
    let mut family = enumerate_merges(h)?;
    let set = family.target_set();
    let targets = vec![set.clone(), set];
    let order = least_order(&targets, false, n_max, config)?;
    let star = least_star(&targets, false, order.value, Strategy::Direct, config)?;
    family.m_h = Some(order.value);
    family.witness = order.witness;
    family.r_star_family = Some(star.value);
    family.star_witness = star.witness;
    family.stats = order.stats;
    family.stats.absorb(&star.stats);
    Ok(family)
}
