//! Least arrowing host orders and star sizes.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::engine::{for_each_completion, run, Budget, Engine, SearchRun};
use super::levelwise::Levels;
use super::{SearchConfig, SearchProblem, SearchResult, SearchStats, TargetSet};
use crate::canon::key_of_matrix;
use crate::coloring::{Color, EdgeColoring, HostGraph};
use crate::error::{Error, Result};
use crate::target::TargetGraph;

/// How host orders are searched.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    /// Depth-first search over all colorings of each host.
    #[default]
    Dfs,
    /// Grow critical colorings one vertex at a time, deduplicated up to
    /// isomorphism.
    Levelwise,
}

/// How star sizes are searched.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    /// Search all colorings of the clique plus star.
    #[default]
    Direct,
    /// Enumerate the critical cliques, then extend each by a star.
    Extend,
}

fn complete(
    problem: &SearchProblem,
    prefill: &[(usize, usize, Color)],
    config: &SearchConfig,
    budget: &Budget,
    stats: &mut SearchStats,
) -> Result<Option<EdgeColoring>> {
    match run(problem, prefill, config, budget)? {
        SearchRun::Complete(out) => {
            stats.absorb(&out.stats);
            Ok(out.counterexample)
        }
        SearchRun::Interrupted { stats: s, .. } => {
            stats.absorb(&s);
            Err(Error::BudgetExceeded {
                stats: stats.clone(),
            })
        }
    }
}

fn single_vertex(k: Color) -> EdgeColoring {
    EdgeColoring::from_matrix_unchecked(HostGraph::Complete(1), k, vec![0])
}

/// Least `n` such that `K_n` arrows the targets, by depth-first search.
pub(crate) fn least_order(
    targets: &[TargetSet],
    rainbow: bool,
    n_max: usize,
    config: &SearchConfig,
) -> Result<SearchResult> {
    let budget = Budget::new(config.node_budget);
    let mut stats = SearchStats::default();
    let k = targets.len() as Color;
    let mut witness = Some(single_vertex(k));
    let run_config = SearchConfig {
        resume: None,
        ..config.clone()
    };
    for n in 2..=n_max {
        let problem = SearchProblem::new(HostGraph::complete(n)?, targets.to_vec(), rainbow)?;
        match complete(&problem, &[], &run_config, &budget, &mut stats)? {
            Some(g) => witness = Some(g),
            None => {
                return Ok(SearchResult {
                    value: n,
                    witness,
                    stats,
                    exact: true,
                })
            }
        }
    }
    Err(Error::NotFoundWithinBound(n_max))
}

fn least_order_levelwise(
    targets: &[TargetSet],
    rainbow: bool,
    n_max: usize,
    config: &SearchConfig,
) -> Result<SearchResult> {
    let levels = Levels {
        targets,
        rainbow,
        sequential: config.sequential,
    };
    let budget = Budget::new(config.node_budget);
    let mut stats = SearchStats::default();
    let mut classes = levels.first();
    for n in 2..=n_max {
        if n > config.canon_bound {
            return Err(Error::TooLarge {
                n,
                bound: config.canon_bound,
            });
        }
        let next = levels.next(&classes, n, &budget, &mut stats)?;
        if next.is_empty() {
            return Ok(SearchResult {
                value: n,
                witness: classes.into_iter().next(),
                stats,
                exact: true,
            });
        }
        classes = next;
    }
    Err(Error::NotFoundWithinBound(n_max))
}

/// Least `s` such that `K_{n-1}` plus a star of size `s` arrows the
/// targets.
pub(crate) fn least_star(
    targets: &[TargetSet],
    rainbow: bool,
    n: usize,
    strategy: Strategy,
    config: &SearchConfig,
) -> Result<SearchResult> {
    if n < 2 {
        return Err(Error::BadParameter(
            "star-critical numbers need n >= 2".into(),
        ));
    }
    match strategy {
        Strategy::Direct => least_star_direct(targets, rainbow, n, config),
        Strategy::Extend => least_star_extend(targets, rainbow, n, config),
    }
}

fn least_star_direct(
    targets: &[TargetSet],
    rainbow: bool,
    n: usize,
    config: &SearchConfig,
) -> Result<SearchResult> {
    let budget = Budget::new(config.node_budget);
    let mut stats = SearchStats::default();
    let run_config = SearchConfig {
        resume: None,
        ..config.clone()
    };
    let mut witness = None;
    for s in 0..n {
        let problem = SearchProblem::new(
            HostGraph::canonical_star(n - 1, s)?,
            targets.to_vec(),
            rainbow,
        )?;
        match complete(&problem, &[], &run_config, &budget, &mut stats)? {
            Some(g) => witness = Some(g),
            None => {
                return Ok(SearchResult {
                    value: s,
                    witness,
                    stats,
                    exact: true,
                })
            }
        }
    }
    Err(Error::BadParameter(format!(
        "K{} does not arrow the targets; n is not the threshold",
        n
    )))
}

/// Attachment sets of size `s`, one per orbit under the automorphisms of
/// `g`.
fn attachments(g: &EdgeColoring, s: usize) -> Vec<Vec<usize>> {
    let m = g.order();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut labels = vec![0u8; m];
    let mut combo: Vec<usize> = (0..s).collect();
    loop {
        labels.iter_mut().for_each(|l| *l = 0);
        for &v in &combo {
            labels[v] = 1;
        }
        if seen.insert(key_of_matrix(m, g.matrix(), &labels, false, g.k())) {
            out.push(combo.clone());
        }
        // Next combination in lexicographic order.
        let Some(i) = (0..s).rev().find(|&i| combo[i] < m - s + i) else {
            break;
        };
        combo[i] += 1;
        for j in i + 1..s {
            combo[j] = combo[j - 1] + 1;
        }
    }
    out
}

fn least_star_extend(
    targets: &[TargetSet],
    rainbow: bool,
    n: usize,
    config: &SearchConfig,
) -> Result<SearchResult> {
    if n - 1 > config.canon_bound {
        return Err(Error::TooLarge {
            n: n - 1,
            bound: config.canon_bound,
        });
    }
    let levels = Levels {
        targets,
        rainbow,
        sequential: config.sequential,
    };
    let budget = Budget::new(config.node_budget);
    let mut stats = SearchStats::default();
    let mut classes = levels.first();
    for m in 2..n {
        classes = levels.next(&classes, m, &budget, &mut stats)?;
    }
    if classes.is_empty() {
        return Err(Error::BadParameter(format!(
            "K{} arrows the targets; n is not the threshold",
            n - 1
        )));
    }
    let mut witness = Some(classes[0].extend_with_star(&[])?);
    for s in 1..n {
        let try_class = |g: &EdgeColoring| -> Result<(Option<EdgeColoring>, SearchStats)> {
            let mut local = SearchStats::default();
            for att in attachments(g, s) {
                let problem = SearchProblem::new(
                    HostGraph::star_extension(n - 1, att)?,
                    targets.to_vec(),
                    rainbow,
                )?;
                let engine = Engine::new(&problem, &g.edges())?;
                let mut found = None;
                for_each_completion(&engine, &budget, &mut local, &mut |eng, st| {
                    found = Some(eng.coloring(st));
                    true
                })?;
                if found.is_some() {
                    return Ok((found, local));
                }
            }
            Ok((None, local))
        };
        let results: Vec<Result<(Option<EdgeColoring>, SearchStats)>> = if config.sequential {
            classes.iter().map(try_class).collect()
        } else {
            classes.par_iter().map(try_class).collect()
        };
        let mut found = None;
        for r in results {
            let (f, local) = r.map_err(|e| match e {
                Error::BudgetExceeded { .. } => Error::BudgetExceeded {
                    stats: stats.clone(),
                },
                other => other,
            })?;
            stats.absorb(&local);
            if found.is_none() {
                found = f;
            }
        }
        match found {
            Some(g) => witness = Some(g),
            None => {
                return Ok(SearchResult {
                    value: s,
                    witness,
                    stats,
                    exact: true,
                })
            }
        }
    }
    Err(Error::BadParameter(format!(
        "K{n} does not arrow the targets; n is not the threshold"
    )))
}

/// The 2-color Ramsey number `R(H1, H2)`.
pub fn ramsey2(
    h1: &TargetGraph,
    h2: &TargetGraph,
    n_max: usize,
    config: &SearchConfig,
) -> Result<SearchResult> {
    least_order(
        &[h1.clone().into(), h2.clone().into()],
        false,
        n_max,
        config,
    )
}

/// The star-critical Ramsey number `r*(H1, H2)`; `n` is `R(H1, H2)` when
/// already known.
pub fn star_critical_ramsey2(
    h1: &TargetGraph,
    h2: &TargetGraph,
    n: Option<usize>,
    config: &SearchConfig,
) -> Result<SearchResult> {
    let targets = [h1.clone().into(), h2.clone().into()];
    let n = match n {
        Some(n) => n,
        None => least_order(&targets, false, 64, config)?.value,
    };
    least_star(&targets, false, n, Strategy::Direct, config)
}

/// Star-critical number of a family: a copy of any member in either color
/// counts.
pub fn star_critical_ramsey2_family(
    family: &TargetSet,
    n: Option<usize>,
    config: &SearchConfig,
) -> Result<SearchResult> {
    let targets = [family.clone(), family.clone()];
    let n = match n {
        Some(n) => n,
        None => least_order(&targets, false, 64, config)?.value,
    };
    least_star(&targets, false, n, Strategy::Direct, config)
}

/// `gr_k(K3 : H_1, ..., H_k)` with `k = targets.len()`.
pub fn gallai_ramsey_number(
    targets: &[TargetSet],
    n_max: usize,
    method: Method,
    config: &SearchConfig,
) -> Result<SearchResult> {
    match method {
        Method::Dfs => least_order(targets, true, n_max, config),
        Method::Levelwise => least_order_levelwise(targets, true, n_max, config),
    }
}

/// `gr*_k(K3 : H_1, ..., H_k)`; `n` is `gr_k` when already known.
pub fn star_critical_gallai_number(
    targets: &[TargetSet],
    n: Option<usize>,
    strategy: Strategy,
    config: &SearchConfig,
) -> Result<SearchResult> {
    let n = match n {
        Some(n) => n,
        None => least_order(targets, true, 64, config)?.value,
    };
    least_star(targets, true, n, strategy, config)
}

/// Fullness of `H` at `k` colors next to its 2-color Ramsey fullness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullnessReport {
    pub target: String,
    pub k: usize,
    pub gr: usize,
    pub gr_star: usize,
    /// `gr*_k = gr_k - 1`.
    pub gallai_full: bool,
    pub ramsey: usize,
    pub r_star: usize,
    /// `r* = R2 - 1`.
    pub ramsey_full: bool,
    /// Ramsey-full and Gallai-Ramsey-full agree.
    pub agreement: bool,
    pub stats: SearchStats,
}

/// Computes `gr_k`, `gr*_k`, `R2` and `r*` for a single target `h`.
pub fn fullness_check(
    k: usize,
    h: &TargetGraph,
    method: Method,
    strategy: Strategy,
    config: &SearchConfig,
) -> Result<FullnessReport> {
    if k < 2 {
        return Err(Error::BadParameter("fullness needs k >= 2".into()));
    }
    let mut stats = SearchStats::default();
    let two = vec![TargetSet::from(h.clone()); 2];
    let r = least_order(&two, false, 64, config)?;
    let rs = least_star(&two, false, r.value, strategy, config)?;
    stats.absorb(&r.stats);
    stats.absorb(&rs.stats);
    let (gr, gr_star) = if k == 2 {
        (r.value, rs.value)
    } else {
        let targets = vec![TargetSet::from(h.clone()); k];
        let g = gallai_ramsey_number(&targets, 64, method, config)?;
        let gs = least_star(&targets, true, g.value, strategy, config)?;
        stats.absorb(&g.stats);
        stats.absorb(&gs.stats);
        (g.value, gs.value)
    };
    let gallai_full = gr_star + 1 == gr;
    let ramsey_full = rs.value + 1 == r.value;
    Ok(FullnessReport {
        target: h.name(),
        k,
        gr,
        gr_star,
        gallai_full,
        ramsey: r.value,
        r_star: rs.value,
        ramsey_full,
        agreement: gallai_full == ramsey_full,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> SearchConfig {
        SearchConfig {
            sequential: true,
            ..SearchConfig::with_budget(10_000_000)
        }
    }

    #[test]
    fn small_ramsey_numbers() {
        let p4 = TargetGraph::path(4);
        let r = ramsey2(&p4, &p4, 10, &quick()).unwrap();
        assert_eq!(r.value, 5);
        assert_eq!(r.witness.unwrap().order(), 4);
        let k3 = TargetGraph::clique(3);
        assert_eq!(ramsey2(&k3, &k3, 10, &quick()).unwrap().value, 6);
    }

    #[test]
    fn attachment_orbits() {
        let mono = EdgeColoring::monochromatic(5, 2, 1).unwrap();
        assert_eq!(attachments(&mono, 2).len(), 1);
        let c5 = crate::constructions::build_c4_critical(2).unwrap().coloring;
        assert_eq!(attachments(&c5, 2).len(), 2);
        assert_eq!(attachments(&c5, 0).len(), 1);
    }

    #[test]
    fn strategies_agree_on_p4() {
        let targets = vec![TargetSet::from(TargetGraph::path(4)); 2];
        let a = least_star(&targets, true, 5, Strategy::Direct, &quick()).unwrap();
        let b = least_star(&targets, true, 5, Strategy::Extend, &quick()).unwrap();
        assert_eq!((a.value, b.value), (2, 2));
    }

    #[test]
    fn budget_is_reported() {
        let targets = vec![TargetSet::from(TargetGraph::cycle(4)); 3];
        let err = least_order(
            &targets,
            true,
            10,
            &SearchConfig {
                sequential: true,
                ..SearchConfig::with_budget(10)
            },
        );
        assert!(matches!(err, Err(Error::BudgetExceeded { .. })));
    }
}
