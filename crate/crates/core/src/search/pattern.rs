//! Target matchers on `u64` neighborhoods, anchored at a freshly colored edge.

use crate::target::{classify_target, Family, TargetGraph};

/// Stop enumerating automorphisms past this many; orbits of a subgroup are
/// only finer, so anchoring stays complete.
const AUTOMORPHISM_CAP: usize = 100_000;

#[derive(Clone, Debug)]
pub(crate) enum Matcher {
    Clique(usize),
    Star(usize),
    Anchored(Pattern),
}

#[derive(Clone, Debug)]
pub(crate) struct Pattern {
    plans: Vec<Plan>,
}

#[derive(Clone, Debug)]
struct Plan {
    a: usize,
    b: usize,
    deg_a: u32,
    deg_b: u32,
    steps: Vec<Step>,
}

#[derive(Clone, Debug)]
struct Step {
    x: usize,
    back: Vec<usize>,
    deg: u32,
}

impl Matcher {
    pub(crate) fn compile(h: &TargetGraph) -> Matcher {
        match classify_target(h).family {
            Family::Clique(p) => Matcher::Clique(p),
            Family::Star(m) => Matcher::Star(m),
            _ => Matcher::Anchored(Pattern::new(h)),
        }
    }

    /// Whether the graph `adj` (which contains the edge `uv`) has a copy of
    /// the target using `uv`.
    pub(crate) fn hits_through(&self, adj: &[u64], u: usize, v: usize) -> bool {
        match self {
            Matcher::Clique(p) => has_clique(adj[u] & adj[v], p - 2, adj),
            Matcher::Star(m) => {
                adj[u].count_ones() as usize >= *m || adj[v].count_ones() as usize >= *m
            }
            Matcher::Anchored(p) => p.hits_through(adj, u, v),
        }
    }

    /// Whether the graph `adj` contains the target at all.
    pub(crate) fn hits_anywhere(&self, adj: &[u64]) -> bool {
        (0..adj.len()).any(|u| {
            let mut later = adj[u] & !low_mask(u + 1);
            while later != 0 {
                let v = later.trailing_zeros() as usize;
                later &= later - 1;
                if self.hits_through(adj, u, v) {
                    return true;
                }
            }
            false
        })
    }
}

/// Bits `0..n`.
#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn has_clique(cand: u64, need: usize, adj: &[u64]) -> bool {
    if need == 0 {
        return true;
    }
    if (cand.count_ones() as usize) < need {
        return false;
    }
    let mut rest = cand;
    while rest != 0 {
        let w = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if has_clique(rest & adj[w], need - 1, adj) {
            return true;
        }
    }
    false
}

fn automorphisms(n: usize, adj: &[u64]) -> Vec<Vec<usize>> {
    fn go(
        i: usize,
        n: usize,
        adj: &[u64],
        perm: &mut Vec<usize>,
        used: u64,
        out: &mut Vec<Vec<usize>>,
    ) {
        if out.len() >= AUTOMORPHISM_CAP {
            return;
        }
        if i == n {
            out.push(perm.clone());
            return;
        }
        for img in 0..n {
            if used >> img & 1 == 1 || adj[img].count_ones() != adj[i].count_ones() {
                continue;
            }
            let consistent = (0..i).all(|j| (adj[i] >> j & 1) == (adj[img] >> perm[j] & 1));
            if consistent {
                perm.push(img);
                go(i + 1, n, adj, perm, used | 1 << img, out);
                perm.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(0, n, adj, &mut Vec::with_capacity(n), 0, &mut out);
    out
}

impl Pattern {
    fn new(h: &TargetGraph) -> Pattern {
        let n = h.order();
        let adj = h.adjacency();
        let autos = automorphisms(n, &adj);
        let mut covered = vec![false; n * n];
        let mut plans = Vec::new();
        for &(x, y) in h.edges() {
            for (a, b) in [(x, y), (y, x)] {
                if covered[a * n + b] {
                    continue;
                }
                for p in &autos {
                    covered[p[a] * n + p[b]] = true;
                }
                plans.push(Plan::new(n, &adj, a, b));
            }
        }
        Pattern { plans }
    }

    fn hits_through(&self, adj: &[u64], u: usize, v: usize) -> bool {
        let all = low_mask(adj.len());
        let mut map = [0usize; 64];
        self.plans.iter().any(|plan| {
            if adj[u].count_ones() < plan.deg_a || adj[v].count_ones() < plan.deg_b {
                return false;
            }
            map[plan.a] = u;
            map[plan.b] = v;
            plan.extend(0, &mut map, (1 << u) | (1 << v), adj, all)
        })
    }
}

impl Plan {
    /// Places the remaining vertices so each has as many placed neighbors
    /// as possible, preferring high degree.
    fn new(n: usize, adj: &[u64], a: usize, b: usize) -> Plan {
        let mut placed: u64 = (1 << a) | (1 << b);
        let mut steps = Vec::with_capacity(n - 2);
        while steps.len() + 2 < n {
            let x = (0..n)
                .filter(|&x| placed >> x & 1 == 0)
                .max_by_key(|&x| {
                    (
                        (adj[x] & placed).count_ones(),
                        adj[x].count_ones(),
                        std::cmp::Reverse(x),
                    )
                })
                .expect("unplaced vertex");
            let back = (0..n)
                .filter(|&y| placed >> y & 1 == 1 && adj[x] >> y & 1 == 1)
                .collect();
            steps.push(Step {
                x,
                back,
                deg: adj[x].count_ones(),
            });
            placed |= 1 << x;
        }
        Plan {
            a,
            b,
            deg_a: adj[a].count_ones(),
            deg_b: adj[b].count_ones(),
            steps,
        }
    }

    fn extend(&self, i: usize, map: &mut [usize; 64], used: u64, adj: &[u64], all: u64) -> bool {
        if i == self.steps.len() {
            return true;
        }
        let step = &self.steps[i];
        let mut cand = all & !used;
        for &y in &step.back {
            cand &= adj[map[y]];
        }
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if adj[w].count_ones() < step.deg {
                continue;
            }
            map[step.x] = w;
            if self.extend(i + 1, map, used | 1 << w, adj, all) {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<u64> {
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }

    #[test]
    fn anchors_follow_arc_orbits() {
        let count = |h: &TargetGraph| match Matcher::compile(h) {
            Matcher::Anchored(p) => p.plans.len(),
            _ => 0,
        };
        assert_eq!(count(&TargetGraph::cycle(5)), 1);
        assert_eq!(count(&TargetGraph::cycle(4)), 1);
        assert_eq!(count(&TargetGraph::path(4)), 3);
    }

    #[test]
    fn anchored_hits() {
        let p4 = Matcher::compile(&TargetGraph::path(4));
        let adj = graph(5, &[(0, 1), (1, 2), (2, 3)]);
        assert!(p4.hits_through(&adj, 0, 1));
        assert!(p4.hits_through(&adj, 1, 2));
        let tri = graph(4, &[(0, 1), (1, 2), (0, 2)]);
        assert!(!p4.hits_through(&tri, 0, 1));
        assert!(!p4.hits_anywhere(&tri));
        let c4 = Matcher::compile(&TargetGraph::cycle(4));
        let sq = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(c4.hits_through(&sq, 2, 3));
        assert!(c4.hits_anywhere(&sq));
    }

    #[test]
    fn clique_and_star() {
        let k3 = Matcher::compile(&TargetGraph::clique(3));
        let tri = graph(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        assert!(k3.hits_through(&tri, 0, 1));
        assert!(!k3.hits_through(&tri, 2, 3));
        let star = Matcher::compile(&TargetGraph::star(3));
        assert!(star.hits_through(&graph(4, &[(0, 1), (0, 2), (0, 3)]), 0, 3));
        assert!(!star.hits_through(&graph(4, &[(0, 1), (0, 2), (2, 3)]), 2, 3));
    }
}
