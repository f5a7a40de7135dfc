//! Rainbow-triangle and monochromatic-subgraph detection.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::coloring::{Color, EdgeColoring};
use crate::target::{classify_target, Family, TargetGraph};

/// An injective map from target vertices into the host, with the color(s)
/// of the image edges: one color for a monochromatic copy, three for a
/// rainbow triangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub map: Vec<usize>,
    pub colors: Vec<Color>,
}

/// First triple `a < b < c` (lexicographic) spanning three host edges with
/// pairwise distinct colors.
pub fn find_rainbow_triangle(g: &EdgeColoring) -> Option<Embedding> {
    let n = g.order();
    for a in 0..n {
        for b in a + 1..n {
            let ab = g.raw(a, b);
            if ab == 0 {
                continue;
            }
            for c in b + 1..n {
                let (ac, bc) = (g.raw(a, c), g.raw(b, c));
                if ac != 0 && bc != 0 && ab != ac && ab != bc && ac != bc {
                    return Some(Embedding {
                        map: vec![a, b, c],
                        colors: vec![ab, ac, bc],
                    });
                }
            }
        }
    }
    None
}

/// A copy of `h` (as a subgraph, not necessarily induced) inside the
/// color-`c` class of `g`.
pub fn find_monochromatic(g: &EdgeColoring, h: &TargetGraph, c: Color) -> Option<Embedding> {
    let adj = g.color_class(c);
    find_subgraph(&adj, h).map(|map| Embedding {
        map,
        colors: vec![c],
    })
}

/// Same as [`find_monochromatic`] but always through the general
/// backtracking matcher.
pub fn find_monochromatic_general(
    g: &EdgeColoring,
    h: &TargetGraph,
    c: Color,
) -> Option<Embedding> {
    let adj = g.color_class(c);
    general_embedding(&adj, h).map(|map| Embedding {
        map,
        colors: vec![c],
    })
}

/// For each color `i`, whether the color-`i` class avoids every graph in
/// `targets[i - 1]`.
pub fn target_free_verdicts(g: &EdgeColoring, targets: &[Vec<TargetGraph>]) -> Vec<bool> {
    (1..=g.k())
        .map(|c| match targets.get(c as usize - 1) {
            Some(set) => set.iter().all(|h| find_monochromatic(g, h, c).is_none()),
            None => true,
        })
        .collect()
}

/// Finds `h` in the graph given by neighborhoods `adj`, dispatching on the
/// target family.
pub fn find_subgraph(adj: &[VertexSet], h: &TargetGraph) -> Option<Vec<usize>> {
    let n = adj.len();
    if h.order() > n {
        return None;
    }
    let profile = classify_target(h);
    let shape = match profile.family {
        Family::Clique(p) => find_clique(adj, p)?,
        Family::Path(len) => find_path(adj, len)?,
        Family::Cycle(4) => find_c4(adj)?,
        Family::Star(m) => find_star(adj, m)?,
        _ => return general_embedding(adj, h),
    };
    let order = shape_order(h, profile.family);
    let mut map = vec![0; h.order()];
    for (i, &t) in order.iter().enumerate() {
        map[t] = shape[i];
    }
    Some(map)
}

/// Target vertices listed in the order the specialized detectors report
/// host vertices: path order, cycle order, or center first.
fn shape_order(h: &TargetGraph, family: Family) -> Vec<usize> {
    let adj = h.adjacency();
    let walk = |start: usize| {
        let mut order = vec![start];
        let mut seen = 1u64 << start;
        let mut cur = start;
        while let Some(next) =
            (0..h.order()).find(|&v| adj[cur] >> v & 1 == 1 && seen >> v & 1 == 0)
        {
            order.push(next);
            seen |= 1 << next;
            cur = next;
        }
        order
    };
    match family {
        Family::Path(_) => walk(adj.iter().position(|m| m.count_ones() == 1).unwrap_or(0)),
        Family::Cycle(_) => walk(0),
        Family::Star(_) => {
            let center = adj
                .iter()
                .position(|m| m.count_ones() as usize == h.order() - 1)
                .unwrap_or(0);
            std::iter::once(center)
                .chain((0..h.order()).filter(|&v| v != center))
                .collect()
        }
        _ => (0..h.order()).collect(),
    }
}

fn find_clique(adj: &[VertexSet], p: usize) -> Option<Vec<usize>> {
    fn grow(adj: &[VertexSet], p: usize, chosen: &mut Vec<usize>, cand: &VertexSet) -> bool {
        if chosen.len() == p {
            return true;
        }
        for v in cand.iter() {
            let mut next = cand.clone();
            next.intersect_with(&adj[v]);
            // Only later vertices, so each clique is met once in sorted order.
            for u in 0..=v {
                next.remove(u);
            }
            if next.len() + chosen.len() + 1 < p {
                continue;
            }
            chosen.push(v);
            if grow(adj, p, chosen, &next) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let n = adj.len();
    if p == 0 {
        return Some(vec![]);
    }
    let mut chosen = Vec::with_capacity(p);
    grow(adj, p, &mut chosen, &VertexSet::full(n)).then_some(chosen)
}

fn find_path(adj: &[VertexSet], len: usize) -> Option<Vec<usize>> {
    fn extend(adj: &[VertexSet], len: usize, path: &mut Vec<usize>, used: &mut VertexSet) -> bool {
        if path.len() == len {
            return true;
        }
        let last = *path.last().expect("nonempty path");
        for v in adj[last].iter() {
            if used.contains(v) {
                continue;
            }
            used.insert(v);
            path.push(v);
            if extend(adj, len, path, used) {
                return true;
            }
            path.pop();
            used.remove(v);
        }
        false
    }
    let n = adj.len();
    for s in 0..n {
        let mut used = VertexSet::new(n);
        used.insert(s);
        let mut path = vec![s];
        if extend(adj, len, &mut path, &mut used) {
            return Some(path);
        }
    }
    None
}

fn find_c4(adj: &[VertexSet]) -> Option<Vec<usize>> {
    let n = adj.len();
    for a in 0..n {
        for b in a + 1..n {
            let mut common = adj[a].clone();
            common.intersect_with(&adj[b]);
            let mut it = common.iter();
            if let (Some(x), Some(y)) = (it.next(), it.next()) {
                return Some(vec![a, x, b, y]);
            }
        }
    }
    None
}

fn find_star(adj: &[VertexSet], m: usize) -> Option<Vec<usize>> {
    adj.iter()
        .position(|nb| nb.len() >= m)
        .map(|c| std::iter::once(c).chain(adj[c].iter().take(m)).collect())
}

/// Backtracking subgraph matcher. Large hosts are first shrunk by capping
/// twin classes at `|V(h)|` vertices, which cannot change the answer.
pub fn general_embedding(adj: &[VertexSet], h: &TargetGraph) -> Option<Vec<usize>> {
    let n = adj.len();
    let hn = h.order();
    if hn == 0 {
        return Some(vec![]);
    }
    if hn > n {
        return None;
    }
    let keep = if n > 16 {
        twin_reduce(adj, hn)
    } else {
        VertexSet::full(n)
    };
    let reduced: Vec<VertexSet> = (0..n)
        .map(|v| {
            let mut s = adj[v].clone();
            s.intersect_with(&keep);
            if !keep.contains(v) {
                s = VertexSet::new(n);
            }
            s
        })
        .collect();
    if h.bipartition().is_none() && is_bipartite(&reduced, &keep) {
        return None;
    }
    let hadj = h.adjacency();
    let order = matching_order(&hadj);
    if h.is_connected() && h.edge_count() > 0 {
        for comp in components(&reduced, &keep) {
            if comp.len() < hn {
                continue;
            }
            if let Some(map) = backtrack(&reduced, &comp, &hadj, &order) {
                return Some(map);
            }
        }
        None
    } else {
        backtrack(&reduced, &keep, &hadj, &order)
    }
}

/// Vertex order for matching: each vertex after the first has as many
/// already-placed neighbors as possible.
fn matching_order(hadj: &[u64]) -> Vec<usize> {
    let hn = hadj.len();
    let deg = |v: usize| hadj[v].count_ones();
    let mut order = Vec::with_capacity(hn);
    let mut placed = 0u64;
    while order.len() < hn {
        let next = (0..hn)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| {
                (
                    (hadj[v] & placed).count_ones(),
                    deg(v),
                    std::cmp::Reverse(v),
                )
            })
            .expect("unplaced vertex");
        placed |= 1 << next;
        order.push(next);
    }
    order
}

fn backtrack(
    adj: &[VertexSet],
    domain: &VertexSet,
    hadj: &[u64],
    order: &[usize],
) -> Option<Vec<usize>> {
    fn go(
        i: usize,
        adj: &[VertexSet],
        domain: &VertexSet,
        hadj: &[u64],
        order: &[usize],
        map: &mut [usize],
        used: &mut VertexSet,
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let t = order[i];
        let need = hadj[t].count_ones() as usize;
        let mut cand = domain.clone();
        for &p in &order[..i] {
            if hadj[t] >> p & 1 == 1 {
                cand.intersect_with(&adj[map[p]]);
            }
        }
        cand.difference_with(used);
        for x in cand.iter() {
            if adj[x].len() < need {
                continue;
            }
            map[t] = x;
            used.insert(x);
            if go(i + 1, adj, domain, hadj, order, map, used) {
                return true;
            }
            used.remove(x);
        }
        false
    }
    let n = adj.len();
    let mut map = vec![usize::MAX; hadj.len()];
    let mut used = VertexSet::new(n);
    go(0, adj, domain, hadj, order, &mut map, &mut used).then_some(map)
}

fn twin_reduce(adj: &[VertexSet], cap: usize) -> VertexSet {
    let n = adj.len();
    let mut keep = VertexSet::full(n);
    loop {
        let before = keep.len();
        for closed in [false, true] {
            let mut groups: HashMap<VertexSet, usize> = HashMap::new();
            let snapshot = keep.clone();
            for v in snapshot.iter() {
                let mut key = adj[v].clone();
                key.intersect_with(&snapshot);
                if closed {
                    key.insert(v);
                }
                let count = groups.entry(key).or_insert(0);
                *count += 1;
                if *count > cap {
                    keep.remove(v);
                }
            }
        }
        if keep.len() == before {
            return keep;
        }
    }
}

fn is_bipartite(adj: &[VertexSet], within: &VertexSet) -> bool {
    let n = adj.len();
    let mut side = vec![u8::MAX; n];
    for s in within.iter() {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in adj[u].iter() {
                if side[v] == u8::MAX {
                    side[v] = 1 - side[u];
                    stack.push(v);
                } else if side[v] == side[u] {
                    return false;
                }
            }
        }
    }
    true
}

fn components(adj: &[VertexSet], within: &VertexSet) -> Vec<VertexSet> {
    let n = adj.len();
    let mut seen = VertexSet::new(n);
    let mut out = Vec::new();
    for s in within.iter() {
        if seen.contains(s) {
            continue;
        }
        let mut comp = VertexSet::new(n);
        let mut stack = vec![s];
        seen.insert(s);
        while let Some(u) = stack.pop() {
            comp.insert(u);
            for v in adj[u].iter() {
                if !seen.contains(v) {
                    seen.insert(v);
                    stack.push(v);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Checks that `map` really embeds `h` into the color-`c` class.
pub fn is_valid_embedding(g: &EdgeColoring, h: &TargetGraph, emb: &Embedding) -> bool {
    let mut seen = std::collections::HashSet::new();
    let injective = emb.map.iter().all(|v| seen.insert(*v)) && emb.map.len() == h.order();
    injective
        && emb.colors.len() == 1
        && h.edges()
            .iter()
            .all(|&(a, b)| g.color(emb.map[a], emb.map[b]) == Some(emb.colors[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::HostGraph;

    fn k3(colors: [Color; 3]) -> EdgeColoring {
        EdgeColoring::new(
            HostGraph::Complete(3),
            3,
            &[(0, 1, colors[0]), (0, 2, colors[1]), (1, 2, colors[2])],
        )
        .unwrap()
    }

    #[test]
    fn rainbow_triangle_examples() {
        assert_eq!(
            find_rainbow_triangle(&k3([1, 2, 3])).unwrap().map,
            vec![0, 1, 2]
        );
        assert!(find_rainbow_triangle(&k3([1, 1, 2])).is_none());
    }

    #[test]
    fn mono_c4_in_mono_k5() {
        let g = EdgeColoring::monochromatic(5, 1, 1).unwrap();
        let c4 = TargetGraph::cycle(4);
        let e = find_monochromatic(&g, &c4, 1).unwrap();
        assert!(is_valid_embedding(&g, &c4, &e));
    }

    #[test]
    fn specialized_embeddings_respect_target_labels() {
        // A C4 whose vertex labels do not follow the cycle.
        let c4 = TargetGraph::new(4, [(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        let p4 = TargetGraph::new(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        let star = TargetGraph::new(4, [(2, 0), (2, 1), (2, 3)]).unwrap();
        let g = EdgeColoring::monochromatic(6, 2, 2).unwrap();
        for h in [c4, p4, star] {
            let e = find_monochromatic(&g, &h, 2).unwrap();
            assert!(is_valid_embedding(&g, &h, &e), "{h:?}");
        }
    }

    #[test]
    fn twin_reduction_on_large_bipartite_class() {
        // K_{40,40} in color 1: no odd cycle, but every even cycle fits.
        let g = EdgeColoring::from_fn(HostGraph::Complete(80), 2, |u, v| {
            if (u < 40) != (v < 40) {
                1
            } else {
                2
            }
        })
        .unwrap();
        assert!(find_monochromatic(&g, &TargetGraph::cycle(5), 1).is_none());
        let c6 = TargetGraph::cycle(6);
        let e = find_monochromatic(&g, &c6, 1).unwrap();
        assert!(is_valid_embedding(&g, &c6, &e));
        // Color 2 is two disjoint K40, which contain C5.
        assert!(find_monochromatic(&g, &TargetGraph::cycle(5), 2).is_some());
    }
}
