//! Gallai partitions of rainbow-triangle-free colorings of complete graphs.
//!
//! A Gallai partition splits the vertices into at least two blocks such that
//! every pair of blocks is joined in a single color and at most two colors
//! occur between blocks overall.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::{Color, EdgeColoring, HostGraph};
use crate::constructions::blow_up;
use crate::detect::find_rainbow_triangle;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PartitionMode {
    /// The finest partition; the number of blocks need not be minimal.
    Finest,
    /// Exhaustive search by increasing block count; minimal.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GallaiPartition {
    pub blocks: Vec<Vec<usize>>,
    pub reduced: EdgeColoring,
    pub between_colors: Vec<Color>,
    pub mode: PartitionMode,
}

impl GallaiPartition {
    pub fn q(&self) -> usize {
        self.blocks.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    TooFewBlocks,
    /// Blocks `i` and `j` are joined by edges of two different colors.
    MixedPair {
        i: usize,
        j: usize,
        colors: (Color, Color),
    },
    /// A third color appears between blocks.
    ThirdColor {
        colors: Vec<Color>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PartitionVerdict {
    Accept,
    Reject(Violation),
}

#[derive(Clone, Copy, Debug)]
pub struct GallaiOptions {
    /// Skip the finest-partition pass and return a partition with the fewest blocks.
    pub minimal: bool,
    /// Largest order handed to the exhaustive search.
    pub exhaustive_bound: usize,
}

impl Default for GallaiOptions {
    fn default() -> Self {
        GallaiOptions {
            minimal: false,
            exhaustive_bound: 12,
        }
    }
}

fn check_partition(n: usize, blocks: &[Vec<usize>]) -> Result<()> {
    let mut seen = vec![false; n];
    for block in blocks {
        if block.is_empty() {
            return Err(Error::NotAPartition("empty block".into()));
        }
        for &v in block {
            if v >= n {
                return Err(Error::NotAPartition(format!("vertex {v} out of range")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotAPartition(format!("vertex {v} in two blocks")));
            }
        }
    }
    match seen.iter().position(|s| !s) {
        Some(v) => Err(Error::NotAPartition(format!("vertex {v} not covered"))),
        None => Ok(()),
    }
}

fn require_complete(g: &EdgeColoring) -> Result<()> {
    if g.host().is_complete() {
        Ok(())
    } else {
        Err(Error::BadParameter(
            "Gallai partitions need a complete host".into(),
        ))
    }
}

pub fn verify_gallai_partition(
    g: &EdgeColoring,
    blocks: &[Vec<usize>],
) -> Result<PartitionVerdict> {
    require_complete(g)?;
    check_partition(g.order(), blocks)?;
    if blocks.len() < 2 {
        return Ok(PartitionVerdict::Reject(Violation::TooFewBlocks));
    }
    let mut between: Vec<Color> = Vec::new();
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let first = g.raw(blocks[i][0], blocks[j][0]);
            for &u in &blocks[i] {
                for &v in &blocks[j] {
                    let c = g.raw(u, v);
                    if c != first {
                        return Ok(PartitionVerdict::Reject(Violation::MixedPair {
                            i,
                            j,
                            colors: (first, c),
                        }));
                    }
                }
            }
            if !between.contains(&first) {
                between.push(first);
            }
        }
    }
    between.sort_unstable();
    if between.len() > 2 {
        return Ok(PartitionVerdict::Reject(Violation::ThirdColor {
            colors: between,
        }));
    }
    Ok(PartitionVerdict::Accept)
}

/// The coloring of `K_q` on the blocks.
pub fn reduced_coloring(g: &EdgeColoring, blocks: &[Vec<usize>]) -> Result<EdgeColoring> {
    match verify_gallai_partition(g, blocks)? {
        PartitionVerdict::Accept => {}
        PartitionVerdict::Reject(_) => return Err(Error::InvalidPartition),
    }
    let q = blocks.len();
    EdgeColoring::from_fn(HostGraph::complete(q)?, g.k(), |i, j| {
        g.raw(blocks[i][0], blocks[j][0])
    })
}

pub fn find_gallai_partition(g: &EdgeColoring) -> Result<GallaiPartition> {
    find_gallai_partition_with(g, GallaiOptions::default())
}

pub fn find_gallai_partition_with(
    g: &EdgeColoring,
    opts: GallaiOptions,
) -> Result<GallaiPartition> {
    require_complete(g)?;
    let n = g.order();
    if n < 2 {
        return Err(Error::BadParameter(
            "a Gallai partition needs at least two vertices".into(),
        ));
    }
    if let Some(t) = find_rainbow_triangle(g) {
        return Err(Error::RainbowTrianglePresent([
            t.map[0], t.map[1], t.map[2],
        ]));
    }
    if !opts.minimal {
        let blocks = finest_partition(g);
        if verify_gallai_partition(g, &blocks)? == PartitionVerdict::Accept {
            return finish(g, blocks, PartitionMode::Finest);
        }
    }
    if n > opts.exhaustive_bound {
        return Err(Error::TooLarge {
            n,
            bound: opts.exhaustive_bound,
        });
    }
    for q in 2..=n {
        if let Some(blocks) = partition_with_blocks(g, q) {
            return finish(g, blocks, PartitionMode::Exhaustive);
        }
    }
    unreachable!("singletons of a rainbow-free coloring on two vertices always qualify")
}

fn finish(
    g: &EdgeColoring,
    blocks: Vec<Vec<usize>>,
    mode: PartitionMode,
) -> Result<GallaiPartition> {
    let reduced = reduced_coloring(g, &blocks)?;
    let between_colors = reduced.used_colors();
    Ok(GallaiPartition {
        blocks,
        reduced,
        between_colors,
        mode,
    })
}

/// The finest Gallai partition over all choices of the two join colors.
/// For a pair `{a, b}`, edges of other colors force their ends into one
/// block, and so does any pair of blocks joined in both colors; what is
/// left after closing under these rules is the finest partition with joins
/// in `{a, b}`.
fn finest_partition(g: &EdgeColoring) -> Vec<Vec<usize>> {
    let n = g.order();
    let used = g.used_colors();
    if used.len() <= 2 {
        return (0..n).map(|v| vec![v]).collect();
    }
    let mut best: Vec<Vec<usize>> = vec![(0..n).collect()];
    for (i, &a) in used.iter().enumerate() {
        for &b in &used[i + 1..] {
            let blocks = closure(g, a, b);
            if blocks.len() > best.len() {
                best = blocks;
            }
        }
    }
    best
}

fn closure(g: &EdgeColoring, a: Color, b: Color) -> Vec<Vec<usize>> {
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            y = std::mem::replace(&mut parent[y], r);
        }
        r
    }
    let n = g.order();
    let mut parent: Vec<usize> = (0..n).collect();
    for u in 0..n {
        for v in u + 1..n {
            let c = g.raw(u, v);
            if c != a && c != b {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                parent[ru] = rv;
            }
        }
    }
    loop {
        let mut join: HashMap<(usize, usize), Color> = HashMap::new();
        let mut mixed = None;
        'scan: for u in 0..n {
            for v in u + 1..n {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru == rv {
                    continue;
                }
                let c = g.raw(u, v);
                if *join.entry((ru.min(rv), ru.max(rv))).or_insert(c) != c {
                    mixed = Some((ru, rv));
                    break 'scan;
                }
            }
        }
        match mixed {
            Some((ru, rv)) => parent[ru] = rv,
            None => break,
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<usize, usize> = HashMap::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        let i = *index.entry(r).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[i].push(v);
    }
    blocks
}

/// A Gallai partition into exactly `q` blocks, if one exists.
fn partition_with_blocks(g: &EdgeColoring, q: usize) -> Option<Vec<Vec<usize>>> {
    struct State<'a> {
        g: &'a EdgeColoring,
        q: usize,
        assign: Vec<usize>,
        join: Vec<Color>,
        between: Vec<Color>,
    }
    fn go(s: &mut State, x: usize, opened: usize) -> bool {
        let n = s.g.order();
        if x == n {
            return opened == s.q;
        }
        // Remaining vertices must still be able to open the missing blocks.
        if s.q - opened > n - x {
            return false;
        }
        for b in 0..(opened + 1).min(s.q) {
            let mut log: Vec<usize> = Vec::new();
            let between_len = s.between.len();
            let mut ok = true;
            for y in 0..x {
                let by = s.assign[y];
                if by == b {
                    continue;
                }
                let c = s.g.raw(x, y);
                let slot = b * s.q + by;
                match s.join[slot] {
                    0 => {
                        if !s.between.contains(&c) {
                            if s.between.len() == 2 {
                                ok = false;
                                break;
                            }
                            s.between.push(c);
                        }
                        s.join[slot] = c;
                        s.join[by * s.q + b] = c;
                        log.push(slot);
                    }
                    existing if existing != c => {
                        ok = false;
                        break;
                    }
                    _ => {}
                }
            }
            if ok {
                s.assign[x] = b;
                if go(s, x + 1, opened.max(b + 1)) {
                    return true;
                }
            }
            for slot in log {
                let (i, j) = (slot / s.q, slot % s.q);
                s.join[slot] = 0;
                s.join[j * s.q + i] = 0;
            }
            s.between.truncate(between_len);
        }
        false
    }
    let n = g.order();
    let mut s = State {
        g,
        q,
        assign: vec![0; n],
        join: vec![0; q * q],
        between: Vec::new(),
    };
    if !go(&mut s, 0, 0) {
        return None;
    }
    let mut blocks = vec![Vec::new(); q];
    for (v, &b) in s.assign.iter().enumerate() {
        blocks[b].push(v);
    }
    Some(blocks)
}

/// For a minimal partition with more than two blocks: no block sees a
/// single color towards the rest, hence the partition cannot have three
/// blocks.
pub fn minimal_partition_structure_holds(p: &GallaiPartition) -> bool {
    let q = p.q();
    if q <= 2 {
        return true;
    }
    let two_each = (0..q).all(|i| {
        let mut seen: Vec<Color> = (0..q)
            .filter(|&j| j != i)
            .map(|j| p.reduced.raw(i, j))
            .collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == 2
    });
    two_each && q != 3
}

/// Formats blocks as `0,1;2;3,4`.
pub fn format_partition(blocks: &[Vec<usize>]) -> String {
    blocks
        .iter()
        .map(|b| {
            b.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join(";")
}

pub fn parse_partition(text: &str) -> Result<Vec<Vec<usize>>> {
    text.trim()
        .split(';')
        .map(|block| {
            block
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad vertex '{t}' in partition")))
                })
                .collect()
        })
        .collect()
}

impl fmt::Display for GallaiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_partition(&self.blocks))
    }
}

/// A random rainbow-triangle-free coloring of `K_n` from `[k]`: a random
/// reduced graph in two colors, blown up with smaller random colorings.
pub fn random_gallai_coloring<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    k: Color,
) -> Result<EdgeColoring> {
    if n == 0 || k == 0 {
        return Err(Error::BadParameter(
            "random colorings need n >= 1 and k >= 1".into(),
        ));
    }
    if n == 1 {
        return EdgeColoring::monochromatic(1, k, 1);
    }
    let q = rng.gen_range(2..=n.min(5));
    let (a, b) = (rng.gen_range(1..=k), rng.gen_range(1..=k));
    let outer = EdgeColoring::from_fn(HostGraph::complete(q)?, k, |_, _| {
        if rng.gen_bool(0.5) {
            a
        } else {
            b
        }
    })?;
    let mut sizes = vec![1; q];
    for _ in q..n {
        sizes[rng.gen_range(0..q)] += 1;
    }
    let inners = sizes
        .iter()
        .map(|&s| random_gallai_coloring(rng, s, k))
        .collect::<Result<Vec<_>>>()?;
    blow_up(&outer, &inners)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{blow_up, build_c4_critical};

    fn k3(c: [Color; 3]) -> EdgeColoring {
        EdgeColoring::new(
            HostGraph::Complete(3),
            3,
            &[(0, 1, c[0]), (0, 2, c[1]), (1, 2, c[2])],
        )
        .unwrap()
    }

    fn singletons(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|v| vec![v]).collect()
    }

    #[test]
    fn verify_examples() {
        let two =
            EdgeColoring::from_fn(HostGraph::Complete(4), 2, |u, v| 1 + ((u + v) % 2) as Color)
                .unwrap();
        assert_eq!(
            verify_gallai_partition(&two, &singletons(4)).unwrap(),
            PartitionVerdict::Accept
        );
        let mono = EdgeColoring::monochromatic(5, 1, 1).unwrap();
        assert_eq!(
            verify_gallai_partition(&mono, &[vec![0, 3], vec![1, 2, 4]]).unwrap(),
            PartitionVerdict::Accept
        );
        assert_eq!(
            verify_gallai_partition(&k3([1, 2, 3]), &singletons(3)).unwrap(),
            PartitionVerdict::Reject(Violation::ThirdColor {
                colors: vec![1, 2, 3]
            })
        );
        assert!(matches!(
            verify_gallai_partition(&two, &[vec![0, 1], vec![2, 3]]).unwrap(),
            PartitionVerdict::Reject(Violation::MixedPair { .. })
        ));
        assert!(matches!(
            verify_gallai_partition(&two, &[vec![0, 1], vec![2]]),
            Err(Error::NotAPartition(_))
        ));
    }

    #[test]
    fn find_on_c4_critical() {
        let g = build_c4_critical(4).unwrap().coloring;
        let p = find_gallai_partition_with(
            &g,
            GallaiOptions {
                minimal: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(
            verify_gallai_partition(&g, &p.blocks).unwrap(),
            PartitionVerdict::Accept
        );
        // v7 is joined to everything earlier in one color.
        assert_eq!(p.q(), 2);
        assert_eq!(p.blocks, vec![vec![0, 1, 2, 3, 4, 5], vec![6]]);
        let finest = find_gallai_partition(&g).unwrap();
        assert_eq!(
            verify_gallai_partition(&g, &finest.blocks).unwrap(),
            PartitionVerdict::Accept
        );
    }

    #[test]
    fn mono_k4_minimal_is_two() {
        let g = EdgeColoring::monochromatic(4, 1, 1).unwrap();
        let p = find_gallai_partition_with(
            &g,
            GallaiOptions {
                minimal: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!((p.q(), p.mode), (2, PartitionMode::Exhaustive));
    }

    #[test]
    fn rainbow_rejected() {
        assert_eq!(
            find_gallai_partition(&k3([1, 2, 3])),
            Err(Error::RainbowTrianglePresent([0, 1, 2]))
        );
    }

    #[test]
    fn two_c5_core_needs_five_blocks() {
        let g = build_c4_critical(2).unwrap().coloring;
        let p = find_gallai_partition_with(
            &g,
            GallaiOptions {
                minimal: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(p.q(), 5);
        assert!(minimal_partition_structure_holds(&p));
    }

    #[test]
    fn reduced_round_trip_through_blow_up() {
        let outer = build_c4_critical(2).unwrap().coloring.with_k(3).unwrap();
        let inner = EdgeColoring::monochromatic(2, 3, 3).unwrap();
        let g = blow_up(&outer, &vec![inner; 5]).unwrap();
        let blocks: Vec<Vec<usize>> = (0..5).map(|i| vec![2 * i, 2 * i + 1]).collect();
        assert_eq!(reduced_coloring(&g, &blocks).unwrap(), outer);

        let mono = EdgeColoring::monochromatic(4, 1, 1).unwrap();
        let r = reduced_coloring(&mono, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(r.edges(), vec![(0, 1, 1)]);
    }

    #[test]
    fn partition_text() {
        let p = parse_partition("0,1;2;3,4").unwrap();
        assert_eq!(p, vec![vec![0, 1], vec![2], vec![3, 4]]);
        assert_eq!(format_partition(&p), "0,1;2;3,4");
        assert!(parse_partition("0,,1").is_err());
    }
}
