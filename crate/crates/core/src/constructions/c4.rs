use serde_json::Value;

use super::{params, two_c5_color};
use crate::certificate::Certificate;
use crate::coloring::{Color, EdgeColoring, HostGraph};
use crate::error::{Error, Result};
use crate::target::TargetGraph;

fn core_color(i: usize, j: usize) -> Color {
    let (lo, hi) = (i.min(j), i.max(j));
    if hi < 5 {
        two_c5_color(lo, hi)
    } else {
        (hi - 2) as Color
    }
}

fn check_k(k: usize) -> Result<Color> {
    if !(2..=250).contains(&k) {
        return Err(Error::BadParameter(format!("k = {k} must lie in 2..=250")));
    }
    Ok(k as Color)
}

/// The `k`-coloring of `K_{k+3}` with no rainbow triangle and no
/// monochromatic `C4`: two edge-disjoint 5-cycles, then each later vertex
/// joined to all earlier ones in a fresh color.
pub fn build_c4_critical(k: usize) -> Result<Certificate> {
    let kc = check_k(k)?;
    let g = EdgeColoring::from_fn(HostGraph::complete(k + 3)?, kc, core_color)?;
    Certificate::issue(
        "c4",
        params(&[("k", Value::from(k))]),
        g,
        vec![TargetGraph::cycle(4)],
        k + 3,
        None,
    )
}

/// [`build_c4_critical`] plus a center joined to every vertex except `v5`,
/// a star of size `k + 2`.
pub fn extend_c4_lower(k: usize) -> Result<Certificate> {
    let kc = check_k(k)?;
    let base = EdgeColoring::from_fn(HostGraph::complete(k + 3)?, kc, core_color)?;
    let star: Vec<(usize, Color)> = (0..k + 3)
        .filter(|&i| i != 4)
        .map(|i| {
            let c = match i {
                1 | 2 => 1,
                0 | 3 => 2,
                _ => (i - 2) as Color,
            };
            (i, c)
        })
        .collect();
    let g = base.extend_with_star(&star)?;
    Certificate::issue(
        "c4-ext",
        params(&[("k", Value::from(k))]),
        g,
        vec![TargetGraph::cycle(4)],
        k + 3,
        Some(k + 2),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_is_two_pentagons() {
        let g = build_c4_critical(2).unwrap().coloring;
        assert_eq!(g.order(), 5);
        for v in 0..5 {
            let ones = (0..5).filter(|&w| g.color(v, w) == Some(1)).count();
            assert_eq!(ones, 2);
        }
        assert_eq!(g.color(0, 3), Some(2));
    }

    #[test]
    fn later_vertex_colors() {
        let g = build_c4_critical(3).unwrap().coloring;
        assert!((0..5).all(|w| g.color(5, w) == Some(3)));
        assert_eq!(build_c4_critical(10).unwrap().coloring.order(), 13);
    }

    #[test]
    fn extension_sizes() {
        for k in 2..=6 {
            let cert = extend_c4_lower(k).unwrap();
            assert_eq!(cert.coloring.host().star_size(), k + 2);
            assert!(!cert.coloring.host().has_edge(4, k + 3));
        }
    }

    #[test]
    fn rejects_small_k() {
        assert!(matches!(build_c4_critical(1), Err(Error::BadParameter(_))));
    }
}
