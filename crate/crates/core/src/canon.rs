//! Canonical forms of edge colorings up to vertex relabeling and color
//! permutation.
//!
//! Vertices are ordered by individualization and equitable refinement; the
//! key is the lexicographically least column-wise upper-triangle encoding
//! over the leaves. Subtrees whose finished prefix already exceeds the best
//! leaf are cut, and of two twin vertices (swapping them is an
//! automorphism) only one is individualized.

use crate::coloring::{Color, EdgeColoring};
use crate::error::{Error, Result};
use crate::target::TargetGraph;

pub const DEFAULT_CANON_BOUND: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CanonOptions {
    pub bound: usize,
    /// Treat colorings that differ by a color permutation as equal.
    pub permute_colors: bool,
}

impl Default for CanonOptions {
    fn default() -> Self {
        CanonOptions {
            bound: DEFAULT_CANON_BOUND,
            permute_colors: true,
        }
    }
}

/// Key that is equal for two complete colorings iff they are isomorphic
/// under a vertex permutation combined with a color permutation.
pub fn canonical_key(g: &EdgeColoring) -> Result<Vec<u8>> {
    canonical_key_with(g, None, CanonOptions::default())
}

/// Canonical key with optional vertex labels, which isomorphisms must
/// preserve.
pub fn canonical_key_with(
    g: &EdgeColoring,
    labels: Option<&[u8]>,
    opts: CanonOptions,
) -> Result<Vec<u8>> {
    if !g.host().is_complete() {
        return Err(Error::BadParameter(
            "canonical keys are defined for complete hosts".into(),
        ));
    }
    let n = g.order();
    if n > opts.bound {
        return Err(Error::TooLarge {
            n,
            bound: opts.bound,
        });
    }
    let zeros = vec![0u8; n];
    let labels = labels.unwrap_or(&zeros);
    if labels.len() != n {
        return Err(Error::BadParameter("one label per vertex required".into()));
    }
    Ok(key_of_matrix(
        n,
        g.matrix(),
        labels,
        opts.permute_colors,
        g.k(),
    ))
}

pub(crate) fn key_of_matrix(
    n: usize,
    matrix: &[Color],
    labels: &[u8],
    permute_colors: bool,
    k: Color,
) -> Vec<u8> {
    let mut header = vec![n as u8];
    let mut sorted_labels = labels.to_vec();
    sorted_labels.sort_unstable();
    header.extend(&sorted_labels);
    if !permute_colors {
        header.push(k);
        header.extend(canonical_form(n, matrix, labels).0);
        return header;
    }
    let mut used: Vec<Color> = matrix.iter().copied().filter(|&c| c != 0).collect();
    used.sort_unstable();
    used.dedup();
    header.push(used.len() as u8);
    let mut best: Option<Vec<u8>> = None;
    let mut remapped = vec![0; matrix.len()];
    for perm in permutations(used.len()) {
        let mut table = [0u8; 256];
        for (i, &c) in used.iter().enumerate() {
            table[c as usize] = perm[i] as u8 + 1;
        }
        for (dst, &c) in remapped.iter_mut().zip(matrix) {
            *dst = table[c as usize];
        }
        let (enc, _) = canonical_form(n, &remapped, labels);
        if best.as_ref().is_none_or(|b| enc < *b) {
            best = Some(enc);
        }
    }
    header.extend(best.unwrap_or_default());
    header
}

/// Key of a plain graph up to isomorphism.
pub fn graph_key(h: &TargetGraph) -> Vec<u8> {
    let n = h.order();
    let mut matrix = vec![0; n * n];
    for &(u, v) in h.edges() {
        matrix[u * n + v] = 1;
        matrix[v * n + u] = 1;
    }
    let mut key = vec![n as u8];
    key.extend(canonical_form(n, &matrix, &vec![0; n]).0);
    key
}

pub(crate) fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(m), &mut vec![false; m], &mut out);
    out
}

/// Canonical encoding of a symmetric matrix (diagonal ignored) together
/// with the vertex order that produces it.
pub(crate) fn canonical_form(n: usize, matrix: &[Color], labels: &[u8]) -> (Vec<u8>, Vec<usize>) {
    let mut search = Search {
        n,
        m: matrix,
        best: None,
        best_order: Vec::new(),
    };
    let mut initial: Vec<Vec<usize>> = Vec::new();
    let mut distinct: Vec<u8> = labels.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for l in distinct {
        initial.push((0..n).filter(|&v| labels[v] == l).collect());
    }
    search.explore(initial);
    (search.best.unwrap_or_default(), search.best_order)
}

struct Search<'a> {
    n: usize,
    m: &'a [Color],
    best: Option<Vec<u8>>,
    best_order: Vec<usize>,
}

impl Search<'_> {
    #[inline]
    fn at(&self, u: usize, v: usize) -> Color {
        self.m[u * self.n + v]
    }

    fn refine(&self, cells: &mut Vec<Vec<usize>>) {
        let n = self.n;
        let mut cell_of = vec![0usize; n];
        loop {
            for (i, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = i;
                }
            }
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(n);
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<(usize, Color, usize)>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let mut pairs: Vec<(usize, Color)> = (0..n)
                            .filter(|&w| w != v)
                            .map(|w| (cell_of[w], self.at(v, w)))
                            .collect();
                        pairs.sort_unstable();
                        let mut sig: Vec<(usize, Color, usize)> = Vec::new();
                        for (c, col) in pairs {
                            match sig.last_mut() {
                                Some(last) if last.0 == c && last.1 == col => last.2 += 1,
                                _ => sig.push((c, col, 1)),
                            }
                        }
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
            }
            let split = next.len() != cells.len();
            *cells = next;
            if !split {
                return;
            }
        }
    }

    fn encode_prefix(&self, order: &[usize]) -> Vec<u8> {
        let mut enc = Vec::with_capacity(order.len() * order.len() / 2);
        for p in 1..order.len() {
            for i in 0..p {
                enc.push(self.at(order[i], order[p]));
            }
        }
        enc
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        (0..self.n).all(|x| x == u || x == v || self.at(u, x) == self.at(v, x))
    }

    fn explore(&mut self, mut cells: Vec<Vec<usize>>) {
        self.refine(&mut cells);
        let fixed: Vec<usize> = cells
            .iter()
            .take_while(|c| c.len() == 1)
            .map(|c| c[0])
            .collect();
        let prefix = self.encode_prefix(&fixed);
        if let Some(best) = &self.best {
            if prefix.as_slice() > &best[..prefix.len()] {
                return;
            }
        }
        if fixed.len() == self.n {
            if self.best.as_ref().is_none_or(|b| prefix < *b) {
                self.best = Some(prefix);
                self.best_order = fixed;
            }
            return;
        }
        let target = fixed.len();
        let candidates = cells[target].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &candidates {
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend(cells[..target].iter().cloned());
            next.push(vec![v]);
            next.push(candidates.iter().copied().filter(|&w| w != v).collect());
            next.extend(cells[target + 1..].iter().cloned());
            self.explore(next);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::HostGraph;

    fn k3(c: [Color; 3]) -> EdgeColoring {
        EdgeColoring::new(
            HostGraph::Complete(3),
            3,
            &[(0, 1, c[0]), (0, 2, c[1]), (1, 2, c[2])],
        )
        .unwrap()
    }

    #[test]
    fn color_swap_gives_equal_keys() {
        assert_eq!(
            canonical_key(&k3([1, 1, 2])).unwrap(),
            canonical_key(&k3([2, 2, 1])).unwrap()
        );
        assert_eq!(
            canonical_key(&k3([1, 2, 1])).unwrap(),
            canonical_key(&k3([2, 2, 1])).unwrap()
        );
    }

    #[test]
    fn rainbow_triangle_relabelings_agree() {
        let base = canonical_key(&k3([1, 2, 3])).unwrap();
        for perm in permutations(3) {
            assert_eq!(
                canonical_key(&k3([1, 2, 3]).relabel(&perm).unwrap()).unwrap(),
                base
            );
        }
    }

    #[test]
    fn distinct_two_colorings_of_k4() {
        let mono = EdgeColoring::monochromatic(4, 2, 1).unwrap();
        let odd = EdgeColoring::from_fn(HostGraph::Complete(4), 2, |u, v| {
            if (u, v) == (0, 1) {
                2
            } else {
                1
            }
        })
        .unwrap();
        assert_ne!(canonical_key(&mono).unwrap(), canonical_key(&odd).unwrap());
    }

    #[test]
    fn without_color_permutation_swaps_differ() {
        let opts = CanonOptions {
            permute_colors: false,
            ..Default::default()
        };
        let a = canonical_key_with(&k3([1, 1, 2]), None, opts).unwrap();
        let b = canonical_key_with(&k3([2, 2, 1]), None, opts).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn too_large() {
        let g = EdgeColoring::monochromatic(11, 1, 1).unwrap();
        assert_eq!(canonical_key(&g), Err(Error::TooLarge { n: 11, bound: 10 }));
    }

    #[test]
    fn graph_keys() {
        let c5 = TargetGraph::cycle(5);
        let other = TargetGraph::new(5, [(0, 2), (2, 1), (1, 4), (4, 3), (3, 0)]).unwrap();
        assert_eq!(graph_key(&c5), graph_key(&other));
        assert_ne!(graph_key(&c5), graph_key(&TargetGraph::path(5)));
    }
}
