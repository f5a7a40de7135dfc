//! Depth-first search over edge colorings.
//!
//! Edges are colored in the host's order (by larger endpoint, then smaller),
//! and every assignment is checked at once for a rainbow triangle and for a
//! target copy through the new edge. When all colors forbid the same
//! targets, a color may only be used after all smaller ones.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;

use super::pattern::Matcher;
use super::{Prefix, SearchConfig, SearchProblem, SearchStats};
use crate::coloring::{Color, EdgeColoring, HostGraph};
use crate::error::{Error, Result};

/// How many top-level branches parallel runs aim for.
const PARALLEL_PREFIXES: usize = 256;
const FLUSH_EVERY: u64 = 1 << 12;

/// Outcome of a finished search.
#[derive(Clone, Debug, PartialEq)]
pub struct ArrowsOutcome {
    pub arrows: bool,
    /// A coloring with no rainbow triangle and no forbidden copy, when the
    /// host does not arrow.
    pub counterexample: Option<EdgeColoring>,
    pub stats: SearchStats,
}

/// A search that either finished or ran out of budget.
#[derive(Clone, Debug, PartialEq)]
pub enum SearchRun {
    Complete(ArrowsOutcome),
    /// The budget ran out; exploring `checkpoint` finishes the search.
    Interrupted {
        checkpoint: Vec<Prefix>,
        stats: SearchStats,
    },
}

/// Node budget shared by every worker of one computation.
pub(crate) struct Budget {
    limit: u64,
    spent: AtomicU64,
    exhausted: AtomicBool,
}

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Budget {
            limit,
            spent: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        }
    }

    fn charge(&self, nodes: u64) -> bool {
        let total = self.spent.fetch_add(nodes, Ordering::Relaxed) + nodes;
        if total > self.limit {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        !self.exhausted.load(Ordering::Relaxed)
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }
}

pub(crate) enum Flow {
    Continue,
    Stop,
    Abort(Vec<Prefix>),
}

/// A search problem compiled for bitset work, with optional preassigned
/// edges.
pub(crate) struct Engine {
    host: HostGraph,
    n: usize,
    k: Color,
    edges: Vec<(usize, usize)>,
    /// Edge indices still to color, in order.
    free: Vec<usize>,
    matchers: Vec<Vec<Matcher>>,
    rainbow: bool,
    symmetric: bool,
    initial: State,
    /// The preassigned edges already contain a forbidden structure.
    prefill_fails: bool,
}

#[derive(Clone)]
pub(crate) struct State {
    /// `adj[c * n + v]`: color-`c` neighbors of `v`.
    adj: Vec<u64>,
    colored: Vec<u64>,
    assign: Vec<Color>,
    path: Vec<(usize, Color)>,
    max_used: Color,
    pub(crate) stats: SearchStats,
    unflushed: u64,
}

enum Check {
    Ok,
    Rainbow,
    Target,
}

impl Engine {
    pub(crate) fn new(
        problem: &SearchProblem,
        prefill: &[(usize, usize, Color)],
    ) -> Result<Engine> {
        let host = problem.host.clone();
        let n = host.order();
        if n > 64 {
            return Err(Error::TooLarge { n, bound: 64 });
        }
        let k = problem.k;
        let edges = host.edges();
        let matchers: Vec<Vec<Matcher>> = problem
            .targets
            .iter()
            .map(|set| set.members().iter().map(Matcher::compile).collect())
            .collect();
        let symmetric = prefill.is_empty() && problem.colors_interchangeable();
        let mut initial = State {
            adj: vec![0; (k as usize + 1) * n],
            colored: vec![0; n],
            assign: vec![0; edges.len()],
            path: Vec::new(),
            max_used: 0,
            stats: SearchStats::default(),
            unflushed: 0,
        };
        let index = |u: usize, v: usize| {
            edges.binary_search_by_key(&(u.max(v), u.min(v)), |&(a, b)| (b, a))
        };
        for &(u, v, c) in prefill {
            let e = index(u, v).map_err(|_| Error::EdgeNotInHost(u, v))?;
            if c == 0 || c > k {
                return Err(Error::ColorOutOfRange { color: c, k });
            }
            if initial.assign[e] != 0 {
                return Err(Error::DuplicateEdge(u, v));
            }
            initial.assign[e] = c;
            initial.put(n, u, v, c);
        }
        let free = (0..edges.len())
            .filter(|&e| initial.assign[e] == 0)
            .collect();
        let mut engine = Engine {
            host,
            n,
            k,
            edges,
            free,
            matchers,
            rainbow: problem.forbid_rainbow_triangle && k >= 3,
            symmetric,
            initial,
            prefill_fails: false,
        };
        engine.prefill_fails = engine.prefill_has_failure(prefill);
        Ok(engine)
    }

    fn prefill_has_failure(&self, prefill: &[(usize, usize, Color)]) -> bool {
        let st = &self.initial;
        let n = self.n;
        if self.rainbow {
            for &(u, v, c) in prefill {
                if self.rainbow_through(st, u, v, c) {
                    return true;
                }
            }
        }
        (1..=self.k).any(|c| {
            let adj = &st.adj[c as usize * n..(c as usize + 1) * n];
            self.matchers[c as usize - 1]
                .iter()
                .any(|m| m.hits_anywhere(adj))
        })
    }

    pub(crate) fn free_edges(&self) -> usize {
        self.free.len()
    }

    pub(crate) fn initial_state(&self) -> State {
        self.initial.clone()
    }

    pub(crate) fn prefill_fails(&self) -> bool {
        self.prefill_fails
    }

    /// Whether `uv` in color `c` closes a rainbow triangle with colored
    /// edges (`uv` itself not yet inserted, or inserted; both work).
    fn rainbow_through(&self, st: &State, u: usize, v: usize, c: Color) -> bool {
        let n = self.n;
        let cv = st.adj[c as usize * n + v];
        let base = st.colored[v] & !cv & !(1 << u);
        (1..=self.k).filter(|&a| a != c).any(|a| {
            let a = a as usize;
            st.adj[a * n + u] & base & !st.adj[a * n + v] != 0
        })
    }

    fn check(&self, st: &mut State, e: usize, c: Color) -> Check {
        let (u, v) = self.edges[e];
        if self.rainbow && self.rainbow_through(st, u, v, c) {
            return Check::Rainbow;
        }
        st.put(self.n, u, v, c);
        let n = self.n;
        let adj = &st.adj[c as usize * n..(c as usize + 1) * n];
        if self.matchers[c as usize - 1]
            .iter()
            .any(|m| m.hits_through(adj, u, v))
        {
            st.take(n, u, v, c);
            return Check::Target;
        }
        Check::Ok
    }

    fn assign(&self, st: &mut State, e: usize, c: Color) -> bool {
        match self.check(st, e, c) {
            Check::Ok => {
                st.assign[e] = c;
                st.path.push((e, c));
                st.max_used = st.max_used.max(c);
                true
            }
            Check::Rainbow => {
                st.stats.rainbow_prunes += 1;
                false
            }
            Check::Target => {
                st.stats.target_prunes += 1;
                false
            }
        }
    }

    fn unassign(&self, st: &mut State, e: usize, prev_max: Color) {
        let (u, v) = self.edges[e];
        let c = st.assign[e];
        st.take(self.n, u, v, c);
        st.assign[e] = 0;
        st.path.pop();
        st.max_used = prev_max;
    }

    fn colors_at(&self, st: &State) -> Color {
        if self.symmetric {
            self.k.min(st.max_used + 1)
        } else {
            self.k
        }
    }

    /// Replays a prefix; false when it breaks a rule or does not follow the
    /// edge order.
    pub(crate) fn replay(&self, st: &mut State, prefix: &Prefix) -> bool {
        for (i, &(e, c)) in prefix.0.iter().enumerate() {
            if self.free.get(i) != Some(&e)
                || c == 0
                || c > self.colors_at(st)
                || !self.assign(st, e, c)
            {
                return false;
            }
        }
        true
    }

    pub(crate) fn coloring(&self, st: &State) -> EdgeColoring {
        let triples: Vec<(usize, usize, Color)> = self
            .edges
            .iter()
            .zip(&st.assign)
            .map(|(&(u, v), &c)| (u, v, c))
            .collect();
        EdgeColoring::new(self.host.clone(), self.k, &triples).expect("complete assignment")
    }

    /// Prefixes of the given depth that survive the checks, in search order.
    pub(crate) fn prefixes(&self, depth: usize) -> Vec<Prefix> {
        fn go(engine: &Engine, st: &mut State, depth: usize, out: &mut Vec<Prefix>) {
            if st.path.len() == depth {
                out.push(Prefix(st.path.clone()));
                return;
            }
            let e = engine.free[st.path.len()];
            let prev = st.max_used;
            for c in 1..=engine.colors_at(st) {
                if engine.assign(st, e, c) {
                    go(engine, st, depth, out);
                    engine.unassign(st, e, prev);
                }
            }
        }
        let mut out = Vec::new();
        if !self.prefill_fails {
            let mut st = self.initial_state();
            go(self, &mut st, depth.min(self.free.len()), &mut out);
        }
        out
    }

    /// Explores every completion of `st`, calling `visit` on complete
    /// colorings; `visit` returns true to stop.
    pub(crate) fn dfs(
        &self,
        st: &mut State,
        budget: &Budget,
        visit: &mut dyn FnMut(&Engine, &State) -> bool,
    ) -> Flow {
        st.stats.nodes += 1;
        st.unflushed += 1;
        if st.unflushed >= FLUSH_EVERY {
            let ok = budget.charge(st.unflushed);
            st.unflushed = 0;
            if !ok {
                return Flow::Abort(vec![Prefix(st.path.clone())]);
            }
        }
        let depth = st.path.len();
        if depth == self.free.len() {
            return if visit(self, st) {
                Flow::Stop
            } else {
                Flow::Continue
            };
        }
        let e = self.free[depth];
        let prev = st.max_used;
        let top = self.colors_at(st);
        for c in 1..=top {
            if !self.assign(st, e, c) {
                continue;
            }
            let flow = self.dfs(st, budget, visit);
            self.unassign(st, e, prev);
            match flow {
                Flow::Continue => {}
                Flow::Stop => return Flow::Stop,
                Flow::Abort(mut rest) => {
                    let mut base = st.path.clone();
                    for later in c + 1..=top {
                        base.push((e, later));
                        rest.push(Prefix(base.clone()));
                        base.pop();
                    }
                    return Flow::Abort(rest);
                }
            }
        }
        Flow::Continue
    }

    pub(crate) fn flush(&self, st: &mut State, budget: &Budget) {
        budget.charge(st.unflushed);
        st.unflushed = 0;
    }
}

impl State {
    #[inline]
    fn put(&mut self, n: usize, u: usize, v: usize, c: Color) {
        let c = c as usize;
        self.adj[c * n + u] |= 1 << v;
        self.adj[c * n + v] |= 1 << u;
        self.colored[u] |= 1 << v;
        self.colored[v] |= 1 << u;
    }

    #[inline]
    fn take(&mut self, n: usize, u: usize, v: usize, c: Color) {
        let c = c as usize;
        self.adj[c * n + u] &= !(1 << v);
        self.adj[c * n + v] &= !(1 << u);
        self.colored[u] &= !(1 << v);
        self.colored[v] &= !(1 << u);
    }
}

/// Searches for a coloring of the host avoiding every forbidden structure.
pub fn arrows(problem: &SearchProblem, config: &SearchConfig) -> Result<ArrowsOutcome> {
    match arrows_resumable(problem, config)? {
        SearchRun::Complete(out) => Ok(out),
        SearchRun::Interrupted { stats, .. } => Err(Error::BudgetExceeded { stats }),
    }
}

/// Like [`arrows`], but an exhausted budget yields a checkpoint instead of an
/// error.
pub fn arrows_resumable(problem: &SearchProblem, config: &SearchConfig) -> Result<SearchRun> {
    let budget = Budget::new(config.node_budget);
    run(problem, &[], config, &budget)
}

pub(crate) fn run(
    problem: &SearchProblem,
    prefill: &[(usize, usize, Color)],
    config: &SearchConfig,
    budget: &Budget,
) -> Result<SearchRun> {
    let start = Instant::now();
    let engine = Engine::new(problem, prefill)?;
    let finish = |mut stats: SearchStats| {
        stats.elapsed_ms = start.elapsed().as_millis() as u64;
        stats
    };
    if engine.prefill_fails() {
        let stats = finish(SearchStats::default());
        return Ok(SearchRun::Complete(ArrowsOutcome {
            arrows: true,
            counterexample: None,
            stats,
        }));
    }
    let prefixes = match &config.resume {
        Some(p) => p.clone(),
        None if config.sequential => vec![Prefix::default()],
        None => {
            let threads = rayon::current_num_threads().max(1);
            let want = if threads == 1 { 1 } else { PARALLEL_PREFIXES };
            let mut depth = 0;
            loop {
                let p = engine.prefixes(depth);
                if p.len() >= want || depth >= engine.free_edges() || p.is_empty() {
                    break p;
                }
                depth += 1;
            }
        }
    };

    let best = AtomicUsize::new(usize::MAX);
    let results: Mutex<Vec<(usize, Option<EdgeColoring>, Vec<Prefix>, SearchStats)>> =
        Mutex::new(Vec::new());
    let work = |(i, prefix): (usize, &Prefix)| {
        if i > best.load(Ordering::Relaxed) {
            return;
        }
        let mut st = engine.initial_state();
        let mut found = None;
        let mut pending = Vec::new();
        if budget.exhausted() {
            pending.push(prefix.clone());
        } else if engine.replay(&mut st, prefix) {
            let flow = engine.dfs(&mut st, budget, &mut |eng, s| {
                found = Some(eng.coloring(s));
                true
            });
            engine.flush(&mut st, budget);
            match flow {
                Flow::Stop => {
                    best.fetch_min(i, Ordering::Relaxed);
                }
                Flow::Abort(rest) => pending = rest,
                Flow::Continue => {}
            }
        }
        results
            .lock()
            .expect("results lock")
            .push((i, found, pending, st.stats));
    };
    if config.sequential {
        prefixes.iter().enumerate().for_each(work);
    } else {
        prefixes.par_iter().enumerate().for_each(work);
    }

    let mut results = results.into_inner().expect("results lock");
    results.sort_by_key(|r| r.0);
    let mut stats = SearchStats::default();
    for r in &results {
        stats.absorb(&r.3);
    }
    let stats = finish(stats);
    if let Some(witness) = results.iter_mut().find_map(|r| r.1.take()) {
        return Ok(SearchRun::Complete(ArrowsOutcome {
            arrows: false,
            counterexample: Some(witness),
            stats,
        }));
    }
    let mut checkpoint: Vec<Prefix> = results.into_iter().flat_map(|r| r.2).collect();
    checkpoint.sort();
    if checkpoint.is_empty() {
        Ok(SearchRun::Complete(ArrowsOutcome {
            arrows: true,
            counterexample: None,
            stats,
        }))
    } else {
        Ok(SearchRun::Interrupted { checkpoint, stats })
    }
}

/// All completions of the preassigned edges, for callers that need every
/// coloring rather than one.
pub(crate) fn for_each_completion(
    engine: &Engine,
    budget: &Budget,
    stats: &mut SearchStats,
    visit: &mut dyn FnMut(&Engine, &State) -> bool,
) -> Result<bool> {
    if engine.prefill_fails() {
        return Ok(false);
    }
    let mut st = engine.initial_state();
    let flow = engine.dfs(&mut st, budget, visit);
    engine.flush(&mut st, budget);
    stats.absorb(&st.stats);
    match flow {
        Flow::Abort(_) => Err(Error::BudgetExceeded {
            stats: stats.clone(),
        }),
        Flow::Stop => Ok(true),
        Flow::Continue => Ok(false),
    }
}

impl Engine {
    /// The full color matrix of a complete assignment.
    pub(crate) fn matrix(&self, st: &State) -> Vec<Color> {
        let n = self.n;
        let mut m = vec![0; n * n];
        for (&(u, v), &c) in self.edges.iter().zip(&st.assign) {
            m[u * n + v] = c;
            m[v * n + u] = c;
        }
        m
    }
}
