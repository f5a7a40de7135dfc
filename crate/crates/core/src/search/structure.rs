//! Structural recognizers for the critical colorings of `P4` and of stars.

use crate::coloring::{Color, EdgeColoring};
use crate::detect::find_rainbow_triangle;
use crate::error::Result;
use crate::gallai::{find_gallai_partition_with, GallaiOptions};

/// True when `g` is, up to relabeling vertices and colors, a monochromatic
/// triangle plus vertices `x` each joined to the triangle in its own color
/// `c_x` (distinct, and distinct from the triangle's), every edge `xy` colored
/// `c_x` or `c_y`, with no rainbow triangle.
pub fn matches_p4_template(g: &EdgeColoring) -> bool {
    let n = g.order();
    if !g.host().is_complete() || n < 3 || find_rainbow_triangle(g).is_some() {
        return false;
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let t = g.raw(a, b);
                if g.raw(a, c) != t || g.raw(b, c) != t {
                    continue;
                }
                if fits_triangle(g, [a, b, c], t) {
                    return true;
                }
            }
        }
    }
    false
}

fn fits_triangle(g: &EdgeColoring, tri: [usize; 3], t: Color) -> bool {
    let n = g.order();
    let rest: Vec<usize> = (0..n).filter(|v| !tri.contains(v)).collect();
    let mut own = Vec::with_capacity(rest.len());
    for &x in &rest {
        let c = g.raw(x, tri[0]);
        if c == t || tri.iter().any(|&w| g.raw(x, w) != c) || own.contains(&c) {
            return false;
        }
        own.push(c);
    }
    (0..rest.len())
        .all(|i| (i + 1..rest.len()).all(|j| [own[i], own[j]].contains(&g.raw(rest[i], rest[j]))))
}

/// True when `g` is, up to relabeling, the blow-up of two edge-disjoint
/// monochromatic 5-cycles with the part sizes and inner colorings allowed
/// for `K_{1,m}`. Uses a minimal Gallai partition, so `g` must be within
/// the exhaustive partition bound.
pub fn matches_star_template(g: &EdgeColoring, m: usize) -> Result<bool> {
    if !g.host().is_complete() || m < 3 || find_rainbow_triangle(g).is_some() {
        return Ok(false);
    }
    let p = find_gallai_partition_with(
        g,
        GallaiOptions {
            minimal: true,
            ..Default::default()
        },
    )?;
    if p.q() != 5 || p.between_colors.len() != 2 {
        return Ok(false);
    }
    let (a, b) = (p.between_colors[0], p.between_colors[1]);
    let degree = |i: usize, c: Color| {
        (0..5)
            .filter(|&j| j != i && p.reduced.raw(i, j) == c)
            .count()
    };
    if (0..5).any(|i| degree(i, a) != 2 || degree(i, b) != 2) {
        return Ok(false);
    }
    let sizes: Vec<usize> = p.blocks.iter().map(Vec::len).collect();
    let inner_colors = |i: usize| -> Vec<(usize, usize, Color)> {
        let block = &p.blocks[i];
        let mut out = Vec::new();
        for (x, &u) in block.iter().enumerate() {
            for &v in &block[x + 1..] {
                out.push((u, v, g.raw(u, v)));
            }
        }
        out
    };
    let matching = |edges: &[(usize, usize, Color)], colors: &[Color]| {
        let mut hit: Vec<usize> = edges
            .iter()
            .filter(|e| colors.contains(&e.2))
            .flat_map(|e| [e.0, e.1])
            .collect();
        let len = hit.len();
        hit.sort_unstable();
        hit.dedup();
        hit.len() == len
    };
    if m % 2 == 1 {
        let ok = sizes.iter().all(|&s| s == (m - 1) / 2)
            && (0..5).all(|i| inner_colors(i).iter().all(|e| e.2 != a && e.2 != b));
        return Ok(ok);
    }
    let Some(big) = sizes.iter().position(|&s| s == m / 2) else {
        return Ok(false);
    };
    if (0..5).any(|i| i != big && sizes[i] != (m - 2) / 2) {
        return Ok(false);
    }
    let ok = (0..5).all(|i| {
        let edges = inner_colors(i);
        if i == big {
            return matching(&edges, &[a, b]);
        }
        let join = p.reduced.raw(big, i);
        let other = if join == a { b } else { a };
        edges.iter().all(|e| e.2 != join) && matching(&edges, &[other])
    });
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        build_c4_critical, build_p4_critical, build_star_critical, InnerRule, StarInner,
    };

    #[test]
    fn p4_template() {
        for k in 1..=5 {
            assert!(matches_p4_template(
                &build_p4_critical(k, &InnerRule::LaterIndex)
                    .unwrap()
                    .coloring
            ));
        }
        assert!(!matches_p4_template(
            &build_c4_critical(2).unwrap().coloring
        ));
    }

    #[test]
    fn star_template() {
        for (m, k) in [(3, 3), (5, 4), (4, 3), (6, 3)] {
            let g = build_star_critical(m, k, &StarInner::Default)
                .unwrap()
                .coloring;
            assert!(matches_star_template(&g, m).unwrap(), "m = {m}");
        }
        let p4 = build_p4_critical(3, &InnerRule::LaterIndex)
            .unwrap()
            .coloring;
        assert!(!matches_star_template(&p4, 3).unwrap());
    }
}
