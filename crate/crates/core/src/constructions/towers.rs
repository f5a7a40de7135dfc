use serde_json::Value;

use super::{blow_up, params, TwoColorCritical};
use crate::canon::graph_key;
use crate::certificate::Certificate;
use crate::coloring::{Color, EdgeColoring, HostGraph};
use crate::error::{Error, Result};
use crate::target::{classify_target, TargetGraph};

/// Colorings larger than this are refused.
const MAX_VERTICES: usize = 4096;

fn check_k(k: usize) -> Result<Color> {
    if !(2..=250).contains(&k) {
        return Err(Error::BadParameter(format!("k = {k} must lie in 2..=250")));
    }
    Ok(k as Color)
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::TooLarge {
            n,
            bound: MAX_VERTICES,
        });
    }
    Ok(())
}

fn require_target(seed: &TwoColorCritical, h: &TargetGraph, what: &str) -> Result<()> {
    let key = graph_key(h);
    if seed.targets.iter().any(|t| graph_key(t) == key) {
        Ok(())
    } else {
        Err(Error::BadCritical(format!(
            "{what} is not certified against {}",
            h.name()
        )))
    }
}

/// `R2(H) - 1 + (k - 2)(s(H) - 1)`.
pub fn bipartite_vertex_count(k: usize, ramsey: usize, s: usize) -> usize {
    ramsey - 1 + (k - 2) * (s - 1)
}

/// `r*(H) - 1 + (k - 2)(s(H) - 1)`.
pub fn bipartite_star_size(k: usize, r_star: usize, s: usize) -> usize {
    r_star - 1 + (k - 2) * (s - 1)
}

fn bipartite_parts(k: usize, h: &TargetGraph, v1: usize) -> Result<(Color, Vec<usize>)> {
    let kc = check_k(k)?;
    let profile = classify_target(h);
    if !profile.bipartite {
        return Err(Error::NotBipartite);
    }
    let (s, _) = profile.parts()?;
    let mut part = vec![0; v1];
    for i in 2..k {
        part.extend(std::iter::repeat_n(i - 1, s - 1));
    }
    check_size(part.len())?;
    Ok((kc, part))
}

fn bipartite_coloring(k: usize, h: &TargetGraph, crit: &TwoColorCritical) -> Result<EdgeColoring> {
    require_target(crit, h, "the critical input")?;
    let v1 = crit.clique();
    let (kc, part) = bipartite_parts(k, h, v1.order())?;
    EdgeColoring::from_fn(HostGraph::complete(part.len())?, kc, |u, v| {
        let (pu, pv) = (part[u], part[v]);
        match (pu, pv) {
            (0, 0) => v1.color(u, v).expect("clique edge"),
            // Part index p holds V_{p+1}, whose edges get color p + 2.
            _ => (pu.max(pv) + 2) as Color,
        }
    })
}

/// The coloring with parts `V1, ..., V_{k-1}`: `V1` the critical 2-coloring,
/// `V_i` of order `s(H) - 1` in color `i + 1`, and edges from `V_j` back to
/// earlier parts in color `j + 1`.
pub fn build_bipartite_lower(
    k: usize,
    h: &TargetGraph,
    crit: &TwoColorCritical,
) -> Result<Certificate> {
    let g = bipartite_coloring(k, h, crit)?;
    let (s, _) = classify_target(h).parts()?;
    let expected = bipartite_vertex_count(k, crit.clique_order() + 1, s);
    let p = params(&[("k", Value::from(k)), ("target", Value::from(h.name()))]);
    Certificate::issue("bipartite", p, g, vec![h.clone()], expected, None)
}

/// [`build_bipartite_lower`] plus a center joined to all of `V2, ..., V_{k-1}`
/// (in color `i + 1` on `V_i`) and to `V1` as in the critical star
/// extension `crit_ext`.
pub fn extend_bipartite_lower(
    k: usize,
    h: &TargetGraph,
    crit_ext: &TwoColorCritical,
) -> Result<Certificate> {
    let center = crit_ext
        .coloring
        .host()
        .center()
        .ok_or_else(|| Error::BadCritical("the extension input has no star".into()))?;
    let base = bipartite_coloring(k, h, crit_ext)?;
    let (_, part) = bipartite_parts(k, h, crit_ext.clique_order())?;
    let mut star: Vec<(usize, Color)> = crit_ext
        .coloring
        .host()
        .attachment()
        .iter()
        .map(|&x| (x, crit_ext.coloring.raw(x, center)))
        .collect();
    star.extend(
        part.iter()
            .enumerate()
            .filter(|(_, &p)| p > 0)
            .map(|(v, &p)| (v, (p + 2) as Color)),
    );
    let g = base.extend_with_star(&star)?;
    let (s, _) = classify_target(h).parts()?;
    let expected = bipartite_vertex_count(k, crit_ext.clique_order() + 1, s);
    let expected_star = bipartite_star_size(k, crit_ext.star_size() + 1, s);
    let p = params(&[("k", Value::from(k)), ("target", Value::from(h.name()))]);
    Certificate::issue(
        "bipartite-ext",
        p,
        g,
        vec![h.clone()],
        expected,
        Some(expected_star),
    )
}

/// Critical 2-colorings feeding the tower: `base` avoids `H` (order
/// `R2(H) - 1`), `merge` avoids every merge of `H` (order `m(H) - 1`). Each
/// may be a star extension; the extension builders use the stars, the plain
/// builders only the cliques.
#[derive(Clone, Debug, PartialEq)]
pub struct NonBipartiteSeeds {
    pub base: TwoColorCritical,
    pub merge: TwoColorCritical,
}

/// Numbers entering the tower formulas. `r_star` and `r_star_family` are
/// one more than the seeds' star sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TowerParams {
    pub ramsey: usize,
    pub merge_ramsey: usize,
    pub chi: usize,
    pub r_star: usize,
    pub r_star_family: usize,
}

impl TowerParams {
    pub fn from_seeds(h: &TargetGraph, seeds: &NonBipartiteSeeds) -> Self {
        TowerParams {
            ramsey: seeds.base.clique_order() + 1,
            merge_ramsey: seeds.merge.clique_order() + 1,
            chi: h.chromatic_number(),
            r_star: seeds.base.star_size() + 1,
            r_star_family: seeds.merge.star_size() + 1,
        }
    }
}

/// `n_k - 1`: `(R2 - 1)(m - 1)^((k-2)/2)` for even `k`,
/// `(chi - 1)(R2 - 1)(m - 1)^((k-3)/2)` for odd `k`.
pub fn tower_vertex_count(k: usize, p: &TowerParams) -> usize {
    let base = p.ramsey - 1;
    let m = p.merge_ramsey - 1;
    if k % 2 == 0 {
        base * m.pow((k as u32 - 2) / 2)
    } else {
        (p.chi - 1) * base * m.pow((k as u32 - 3) / 2)
    }
}

/// `r_k`, the star size of the tower extension.
pub fn tower_star_size(k: usize, p: &TowerParams) -> usize {
    let base = p.ramsey - 1;
    let m = p.merge_ramsey - 1;
    match k {
        2 => p.r_star - 1,
        _ if k % 2 == 0 => (p.r_star_family - 1) * base * m.pow((k as u32 - 4) / 2),
        _ => (p.chi - 2) * base * m.pow((k as u32 - 3) / 2),
    }
}

fn nonbipartite_check(
    k: usize,
    h: &TargetGraph,
    seeds: &NonBipartiteSeeds,
) -> Result<(Color, TowerParams)> {
    let kc = check_k(k)?;
    if classify_target(h).bipartite {
        return Err(Error::NotNonBipartite);
    }
    require_target(&seeds.base, h, "the base seed")?;
    if k >= 4 {
        require_target(&seeds.merge, h, "the merge seed")?;
    }
    let p = TowerParams::from_seeds(h, seeds);
    if k >= 4 && p.merge_ramsey < 3 {
        return Err(Error::BadCritical(
            "the merge seed needs at least two vertices".into(),
        ));
    }
    check_size(tower_vertex_count(k, &p))?;
    Ok((kc, p))
}

fn copies(g: &EdgeColoring, count: usize) -> Vec<EdgeColoring> {
    vec![g.clone(); count]
}

/// The merge seed's clique, recolored to `lo`/`lo + 1`.
fn merge_layer(seeds: &NonBipartiteSeeds, lo: Color, k: Color) -> Result<EdgeColoring> {
    seeds.merge.clique().recolor(&[lo, lo + 1], k)
}

/// Tower of even height `top` in palette `k`.
fn even_tower(top: usize, k: Color, seeds: &NonBipartiteSeeds) -> Result<EdgeColoring> {
    let mut g = seeds.base.clique().with_k(k)?;
    let mut level = 2;
    while level + 2 <= top {
        let d = merge_layer(seeds, level as Color + 1, k)?;
        g = blow_up(&d, &copies(&g, d.order()))?;
        level += 2;
    }
    Ok(g)
}

fn tower(k: usize, kc: Color, chi: usize, seeds: &NonBipartiteSeeds) -> Result<EdgeColoring> {
    if k % 2 == 0 {
        even_tower(k, kc, seeds)
    } else {
        let g = even_tower(k - 1, kc, seeds)?;
        let outer = EdgeColoring::monochromatic(chi - 1, kc, kc)?;
        blow_up(&outer, &copies(&g, chi - 1))
    }
}

/// The tower `N^k`: the base seed, blown up into copies of the merge seed
/// (in colors `2i+1`, `2i+2`) at each even level, and for odd `k` finally
/// into `K_{chi(H)-1}` in color `k`.
pub fn build_nonbipartite_lower(
    k: usize,
    h: &TargetGraph,
    seeds: &NonBipartiteSeeds,
) -> Result<Certificate> {
    let (kc, p) = nonbipartite_check(k, h, seeds)?;
    let g = tower(k, kc, p.chi, seeds)?;
    let pr = params(&[("k", Value::from(k)), ("target", Value::from(h.name()))]);
    Certificate::issue(
        "tower",
        pr,
        g,
        vec![h.clone()],
        tower_vertex_count(k, &p),
        None,
    )
}

/// The tower plus a center: for `k = 2` the base seed's own star; for even
/// `k >= 4` whole top-level copies, following the merge seed's star; for odd
/// `k` the first `chi(H) - 2` copies in color `k`.
pub fn extend_nonbipartite_lower(
    k: usize,
    h: &TargetGraph,
    seeds: &NonBipartiteSeeds,
) -> Result<Certificate> {
    let (kc, p) = nonbipartite_check(k, h, seeds)?;
    let (g, star): (EdgeColoring, Vec<(usize, Color)>) = if k == 2 {
        let center = seeds
            .base
            .coloring
            .host()
            .center()
            .ok_or_else(|| Error::BadCritical("the base seed has no star".into()))?;
        let star = seeds
            .base
            .coloring
            .host()
            .attachment()
            .iter()
            .map(|&x| (x, seeds.base.coloring.raw(x, center)))
            .collect();
        (seeds.base.clique(), star)
    } else if k % 2 == 0 {
        let witness = &seeds.merge.coloring;
        let center = witness
            .host()
            .center()
            .ok_or_else(|| Error::BadCritical("the merge seed has no star".into()))?;
        let sub = even_tower(k - 2, kc, seeds)?;
        let d = merge_layer(seeds, kc - 1, kc)?;
        let g = blow_up(&d, &copies(&sub, d.order()))?;
        let t = sub.order();
        let star = witness
            .host()
            .attachment()
            .iter()
            .flat_map(|&j| {
                let c = kc - 1 + witness.raw(j, center) - 1;
                (j * t..(j + 1) * t).map(move |u| (u, c))
            })
            .collect();
        (g, star)
    } else {
        let g = tower(k, kc, p.chi, seeds)?;
        let t = g.order() / (p.chi - 1);
        (g, (0..(p.chi - 2) * t).map(|u| (u, kc)).collect())
    };
    let g = g.with_k(kc)?.extend_with_star(&star)?;
    let pr = params(&[("k", Value::from(k)), ("target", Value::from(h.name()))]);
    Certificate::issue(
        "tower-ext",
        pr,
        g,
        vec![h.clone()],
        tower_vertex_count(k, &p),
        Some(tower_star_size(k, &p)),
    )
}
