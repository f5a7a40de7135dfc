use serde_json::Value;

use super::{blow_up, params, two_c5_color};
use crate::certificate::Certificate;
use crate::coloring::{Color, EdgeColoring, HostGraph};
use crate::detect::find_rainbow_triangle;
use crate::error::{Error, Result};
use crate::target::TargetGraph;

/// Colorings inside the five parts.
#[derive(Clone, Debug, Default, PartialEq)]
pub enum StarInner {
    /// Every part monochromatic in color 3.
    #[default]
    Default,
    /// One complete coloring per part, in part order.
    Explicit(Vec<EdgeColoring>),
}

/// Part sizes `|V1|, ..., |V5|` for the star `K_{1,m}`.
pub fn star_part_sizes(m: usize) -> Result<[usize; 5]> {
    if m < 3 {
        return Err(Error::BadParameter(format!("m = {m} must be at least 3")));
    }
    if m % 2 == 1 {
        Ok([(m - 1) / 2; 5])
    } else {
        let s = (m - 2) / 2;
        Ok([m / 2, s, s, s, s])
    }
}

fn check(m: usize, k: usize) -> Result<(Color, [usize; 5])> {
    if !(3..=250).contains(&k) {
        return Err(Error::BadParameter(format!("k = {k} must lie in 3..=250")));
    }
    Ok((k as Color, star_part_sizes(m)?))
}

/// True when the edges colored from `colors` form a matching.
fn is_matching(g: &EdgeColoring, colors: &[Color]) -> bool {
    (0..g.order()).all(|v| {
        (0..g.order())
            .filter(|&w| g.color(v, w).is_some_and(|c| colors.contains(&c)))
            .count()
            <= 1
    })
}

fn validate_inner(m: usize, k: Color, sizes: &[usize; 5], inners: &[EdgeColoring]) -> Result<()> {
    if inners.len() != 5 {
        return Err(Error::BadInnerSpec(format!(
            "{} part colorings given, 5 required",
            inners.len()
        )));
    }
    for (i, g) in inners.iter().enumerate() {
        let part = i + 1;
        if !g.host().is_complete() || g.order() != sizes[i] {
            return Err(Error::BadInnerSpec(format!(
                "H{part} must be a complete coloring on {} vertices",
                sizes[i]
            )));
        }
        if let Some(&c) = g.used_colors().iter().find(|&&c| c > k) {
            return Err(Error::BadInnerSpec(format!(
                "H{part} uses color {c} outside [{k}]"
            )));
        }
        if let Some(t) = find_rainbow_triangle(g) {
            return Err(Error::BadInnerSpec(format!(
                "H{part} has a rainbow triangle {:?}",
                t.map
            )));
        }
        let used = g.used_colors();
        let ok = if m % 2 == 1 {
            used.iter().all(|&c| c >= 3)
        } else {
            match part {
                1 => is_matching(g, &[1, 2]),
                2 | 5 => !used.contains(&1) && is_matching(g, &[2]),
                _ => !used.contains(&2) && is_matching(g, &[1]),
            }
        };
        if !ok {
            let rule = match (m % 2, part) {
                (1, _) => "only colors 3..k",
                (_, 1) => "colors 1 and 2 only on a matching",
                (_, 2 | 5) => "no color 1, color 2 only on a matching",
                _ => "no color 2, color 1 only on a matching",
            };
            return Err(Error::BadInnerSpec(format!("H{part} violates: {rule}")));
        }
    }
    Ok(())
}

fn star_coloring(m: usize, k: usize, inner: &StarInner) -> Result<EdgeColoring> {
    let (kc, sizes) = check(m, k)?;
    let inners: Vec<EdgeColoring> = match inner {
        StarInner::Default => sizes
            .iter()
            .map(|&s| EdgeColoring::monochromatic(s, kc, 3))
            .collect::<Result<_>>()?,
        StarInner::Explicit(gs) => {
            validate_inner(m, kc, &sizes, gs)?;
            gs.iter().map(|g| g.with_k(kc)).collect::<Result<_>>()?
        }
    };
    let outer = EdgeColoring::from_fn(HostGraph::complete(5)?, kc, two_c5_color)?;
    blow_up(&outer, &inners)
}

fn vertex_count(m: usize) -> usize {
    if m % 2 == 1 {
        (5 * m - 5) / 2
    } else {
        (5 * m - 8) / 2
    }
}

/// Blow-up of the two-pentagon 2-coloring on parts sized for `K_{1,m}`.
pub fn build_star_critical(m: usize, k: usize, inner: &StarInner) -> Result<Certificate> {
    let g = star_coloring(m, k, inner)?;
    let inner_name = match inner {
        StarInner::Default => "default",
        StarInner::Explicit(_) => "explicit",
    };
    let p = params(&[
        ("m", Value::from(m)),
        ("k", Value::from(k)),
        ("inner", Value::from(inner_name)),
    ]);
    Certificate::issue(
        "star",
        p,
        g,
        vec![TargetGraph::star(m)],
        vertex_count(m),
        None,
    )
}

/// Center attached to `V1 ∪ V2` in color 3 for odd `m`, or to
/// `V1 ∪ V2 ∪ V3 ∪ V5` (color 1 on `V1 ∪ V3`, color 2 on `V2 ∪ V5`) for even
/// `m >= 12`.
pub fn extend_star_lower(m: usize, k: usize) -> Result<Certificate> {
    if m % 2 == 0 && m < 12 {
        return Err(Error::BadParameter(format!(
            "even m = {m} < 12 has no known extremal extension; the value for m in 6, 8, 10 is open"
        )));
    }
    let base = star_coloring(m, k, &StarInner::Default)?;
    let sizes = star_part_sizes(m)?;
    let mut start = [0; 5];
    for i in 1..5 {
        start[i] = start[i - 1] + sizes[i - 1];
    }
    let part = |i: usize| start[i]..start[i] + sizes[i];
    let (star, expected): (Vec<(usize, Color)>, usize) = if m % 2 == 1 {
        (part(0).chain(part(1)).map(|v| (v, 3)).collect(), m - 1)
    } else {
        let mut s: Vec<(usize, Color)> = part(0).chain(part(2)).map(|v| (v, 1)).collect();
        s.extend(part(1).chain(part(4)).map(|v| (v, 2)));
        (s, 2 * m - 3)
    };
    let g = base.extend_with_star(&star)?;
    let p = params(&[("m", Value::from(m)), ("k", Value::from(k))]);
    Certificate::issue(
        "star-ext",
        p,
        g,
        vec![TargetGraph::star(m)],
        vertex_count(m),
        Some(expected),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_key;
    use crate::constructions::build_c4_critical;

    #[test]
    fn m3_is_two_pentagons() {
        let g = build_star_critical(3, 3, &StarInner::Default)
            .unwrap()
            .coloring;
        let c4 = build_c4_critical(2).unwrap().coloring;
        assert_eq!(canonical_key(&g).unwrap(), canonical_key(&c4).unwrap());
    }

    #[test]
    fn sizes() {
        assert_eq!(star_part_sizes(12).unwrap(), [6, 5, 5, 5, 5]);
        assert_eq!(
            build_star_critical(13, 5, &StarInner::Default)
                .unwrap()
                .coloring
                .order(),
            30
        );
        assert!(build_star_critical(2, 3, &StarInner::Default).is_err());
        assert!(build_star_critical(3, 2, &StarInner::Default).is_err());
    }

    fn h1_with(edges: &[(usize, usize, Color)]) -> StarInner {
        let mut gs = vec![EdgeColoring::from_fn(HostGraph::Complete(6), 4, |u, v| {
            edges
                .iter()
                .find(|e| (e.0, e.1) == (u.min(v), u.max(v)))
                .map_or(3, |e| e.2)
        })
        .unwrap()];
        gs.extend((0..4).map(|_| EdgeColoring::monochromatic(5, 4, 3).unwrap()));
        StarInner::Explicit(gs)
    }

    #[test]
    fn even_matching_condition() {
        assert!(build_star_critical(12, 4, &h1_with(&[(0, 1, 1), (2, 3, 1)])).is_ok());
        let path = h1_with(&[(0, 1, 1), (1, 2, 1)]);
        assert!(matches!(
            build_star_critical(12, 4, &path),
            Err(Error::BadInnerSpec(_))
        ));
    }

    #[test]
    fn extension_sizes() {
        assert_eq!(
            extend_star_lower(3, 3).unwrap().coloring.host().star_size(),
            2
        );
        assert_eq!(
            extend_star_lower(5, 4).unwrap().coloring.host().star_size(),
            4
        );
        assert_eq!(
            extend_star_lower(12, 3)
                .unwrap()
                .coloring
                .host()
                .star_size(),
            21
        );
        assert!(matches!(
            extend_star_lower(8, 3),
            Err(Error::BadParameter(_))
        ));
    }
}
