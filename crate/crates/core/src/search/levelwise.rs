//! Vertex-by-vertex enumeration of critical colorings up to isomorphism.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::engine::{for_each_completion, Budget, Engine};
use super::{SearchConfig, SearchProblem, SearchStats, TargetSet};
use crate::canon::key_of_matrix;
use crate::coloring::{Color, EdgeColoring, HostGraph};
use crate::error::{Error, Result};

/// Rebuilds the canonical representative from an unlabeled canonical key.
fn decode(key: &[u8], k: Color) -> EdgeColoring {
    let n = key[0] as usize;
    let enc = &key[n + 2..];
    let mut m = vec![0; n * n];
    let mut it = enc.iter();
    for p in 1..n {
        for i in 0..p {
            let c = *it.next().expect("encoding length");
            m[i * n + p] = c;
            m[p * n + i] = c;
        }
    }
    EdgeColoring::from_matrix_unchecked(HostGraph::Complete(n), k, m)
}

pub(crate) struct Levels<'a> {
    pub targets: &'a [TargetSet],
    pub rainbow: bool,
    pub sequential: bool,
}

impl Levels<'_> {
    fn permute_colors(&self) -> bool {
        let first = self.targets[0].key();
        self.targets.iter().all(|t| t.key() == first)
    }

    /// The single coloring of `K1`.
    pub(crate) fn first(&self) -> Vec<EdgeColoring> {
        let k = self.targets.len() as Color;
        vec![EdgeColoring::from_matrix_unchecked(
            HostGraph::Complete(1),
            k,
            vec![0],
        )]
    }

    /// Classes on `n` vertices extending the classes on `n - 1`.
    pub(crate) fn next(
        &self,
        classes: &[EdgeColoring],
        n: usize,
        budget: &Budget,
        stats: &mut SearchStats,
    ) -> Result<Vec<EdgeColoring>> {
        let k = self.targets.len() as Color;
        let permute = self.permute_colors();
        let problem =
            SearchProblem::new(HostGraph::Complete(n), self.targets.to_vec(), self.rainbow)?;
        let zeros = vec![0u8; n];
        let extend = |g: &EdgeColoring| -> Result<(BTreeMap<Vec<u8>, ()>, SearchStats)> {
            let engine = Engine::new(&problem, &g.edges())?;
            let mut found = BTreeMap::new();
            let mut local = SearchStats::default();
            for_each_completion(&engine, budget, &mut local, &mut |eng, st| {
                found.insert(key_of_matrix(n, &eng.matrix(st), &zeros, permute, k), ());
                false
            })?;
            Ok((found, local))
        };
        let parts: Vec<Result<(BTreeMap<Vec<u8>, ()>, SearchStats)>> = if self.sequential {
            classes.iter().map(extend).collect()
        } else {
            classes.par_iter().map(extend).collect()
        };
        let mut all = BTreeMap::new();
        for part in parts {
            let (found, local) = part.map_err(|e| match e {
                Error::BudgetExceeded { .. } => Error::BudgetExceeded {
                    stats: stats.clone(),
                },
                other => other,
            })?;
            stats.absorb(&local);
            all.extend(found);
        }
        Ok(all.into_keys().map(|key| decode(&key, k)).collect())
    }
}

/// All colorings of `K_n` with no rainbow triangle and no color-`i` copy of
/// a member of `targets[i - 1]`, one per isomorphism class. Colors are
/// permuted freely when all targets agree, and renumbered `1, 2, ...` by
/// first use in the canonical order.
pub fn enumerate_critical_colorings(
    targets: &[TargetSet],
    n: usize,
    config: &SearchConfig,
) -> Result<Vec<EdgeColoring>> {
    if n > config.canon_bound {
        return Err(Error::TooLarge {
            n,
            bound: config.canon_bound,
        });
    }
    if n == 0 || targets.is_empty() {
        return Err(Error::BadParameter(
            "need n >= 1 and at least one color".into(),
        ));
    }
    let levels = Levels {
        targets,
        rainbow: true,
        sequential: config.sequential,
    };
    let budget = Budget::new(config.node_budget);
    let mut stats = SearchStats::default();
    let mut classes = levels.first();
    for m in 2..=n {
        classes = levels.next(&classes, m, &budget, &mut stats)?;
        if classes.is_empty() {
            break;
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::target::TargetGraph;

    fn sets(h: TargetGraph, k: usize) -> Vec<TargetSet> {
        vec![TargetSet::from(h); k]
    }

    #[test]
    fn two_colorings_of_k5_without_triangles() {
        let found = enumerate_critical_colorings(
            &sets(TargetGraph::clique(3), 2),
            5,
            &SearchConfig::default(),
        )
        .unwrap();
        assert_eq!(found.len(), 1);
        let none = enumerate_critical_colorings(
            &sets(TargetGraph::clique(3), 2),
            6,
            &SearchConfig::default(),
        )
        .unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn representatives_are_canonical() {
        let found = enumerate_critical_colorings(
            &sets(TargetGraph::path(4), 2),
            4,
            &SearchConfig::default(),
        )
        .unwrap();
        for g in &found {
            let zeros = vec![0; 4];
            let key = key_of_matrix(4, g.matrix(), &zeros, true, 2);
            assert_eq!(&decode(&key, 2), g);
        }
    }
}
