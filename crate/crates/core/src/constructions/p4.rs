use std::collections::HashMap;

use serde_json::Value;

use super::params;
use crate::certificate::Certificate;
use crate::coloring::{Color, EdgeColoring, HostGraph};
use crate::detect::find_rainbow_triangle;
use crate::error::{Error, Result};
use crate::target::TargetGraph;

/// Colors of the edges among `v4, v5, ...`: an edge `v_i v_j` (`i < j`) must
/// get color `i - 2` or `j - 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum InnerRule {
    /// Every inner edge takes the color of its later endpoint.
    #[default]
    LaterIndex,
    /// Explicit `(u, v, c)` triples on 0-based indices, covering every
    /// inner pair once.
    Explicit(Vec<(usize, usize, Color)>),
}

fn check_k(k: usize) -> Result<Color> {
    if !(1..=250).contains(&k) {
        return Err(Error::BadParameter(format!("k = {k} must lie in 1..=250")));
    }
    Ok(k as Color)
}

fn inner_colors(n: usize, rule: &InnerRule) -> Result<HashMap<(usize, usize), Color>> {
    let mut out = HashMap::new();
    match rule {
        InnerRule::LaterIndex => {
            for b in 3..n {
                for a in 3..b {
                    out.insert((a, b), (b - 1) as Color);
                }
            }
        }
        InnerRule::Explicit(triples) => {
            for &(u, v, c) in triples {
                let (a, b) = (u.min(v), u.max(v));
                if a < 3 || b >= n || a == b {
                    return Err(Error::BadInnerRule(format!("{u}-{v} is not an inner edge")));
                }
                if c as usize != a - 1 && c as usize != b - 1 {
                    return Err(Error::BadInnerRule(format!(
                        "{u}-{v} must be colored {} or {}",
                        a - 1,
                        b - 1
                    )));
                }
                if out.insert((a, b), c).is_some() {
                    return Err(Error::BadInnerRule(format!("{u}-{v} colored twice")));
                }
            }
            let expected = (n.saturating_sub(3)) * (n.saturating_sub(4)) / 2;
            if out.len() != expected {
                return Err(Error::BadInnerRule(format!(
                    "{} of {expected} inner edges colored",
                    out.len()
                )));
            }
        }
    }
    Ok(out)
}

fn p4_coloring(k: usize, rule: &InnerRule) -> Result<EdgeColoring> {
    let kc = check_k(k)?;
    let n = k + 2;
    let inner = inner_colors(n, rule)?;
    let g = EdgeColoring::from_fn(HostGraph::complete(n)?, kc, |u, v| {
        let (a, b) = (u.min(v), u.max(v));
        if b < 3 {
            1
        } else if a < 3 {
            (b - 1) as Color
        } else {
            inner[&(a, b)]
        }
    })?;
    if n < 6 {
        return Ok(g);
    }
    let inner_part = g.induced(&(3..n).collect::<Vec<_>>())?;
    if let Some(t) = find_rainbow_triangle(&inner_part) {
        let m: Vec<usize> = t.map.iter().map(|&x| x + 3).collect();
        return Err(Error::BadInnerRule(format!(
            "rainbow triangle {m:?} among inner vertices"
        )));
    }
    Ok(g)
}

/// The `k`-coloring of `K_{k+2}`: a color-1 triangle `v1 v2 v3`, and each
/// `v_i` (`i >= 4`) joined to the triangle in color `i - 2`.
pub fn build_p4_critical(k: usize, rule: &InnerRule) -> Result<Certificate> {
    let g = p4_coloring(k, rule)?;
    let rule_name = match rule {
        InnerRule::LaterIndex => "later-index",
        InnerRule::Explicit(_) => "explicit",
    };
    let p = params(&[("k", Value::from(k)), ("inner", Value::from(rule_name))]);
    Certificate::issue("p4", p, g, vec![TargetGraph::path(4)], k + 2, None)
}

/// [`build_p4_critical`] with the default rule, plus a center joined to
/// `v4, ..., v_{k+2}` with `v v_i` in color `i - 2`.
pub fn extend_p4_lower(k: usize) -> Result<Certificate> {
    if k < 2 {
        return Err(Error::BadParameter("the P4 extension needs k >= 2".into()));
    }
    let base = p4_coloring(k, &InnerRule::LaterIndex)?;
    let star: Vec<(usize, Color)> = (3..k + 2).map(|i| (i, (i - 1) as Color)).collect();
    let g = base.extend_with_star(&star)?;
    Certificate::issue(
        "p4-ext",
        params(&[("k", Value::from(k))]),
        g,
        vec![TargetGraph::path(4)],
        k + 2,
        Some(k - 1),
    )
}
