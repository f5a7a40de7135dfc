#![allow(dead_code)]

use grstar_core::constructions::{two_c5_color, TwoColorCritical};
use grstar_core::gallai::random_gallai_coloring;
use grstar_core::search::{merge_parameters, ramsey2, star_critical_ramsey2};
use grstar_core::{Color, EdgeColoring, HostGraph, SearchConfig, TargetGraph};
use rand::rngs::StdRng;
use rand::Rng;

pub fn quick() -> SearchConfig {
    SearchConfig::with_budget(200_000_000)
}

pub fn random_coloring(rng: &mut StdRng, n: usize, k: Color) -> EdgeColoring {
    EdgeColoring::from_fn(HostGraph::Complete(n), k, |_, _| rng.gen_range(1..=k)).unwrap()
}

pub fn random_gallai(rng: &mut StdRng, n: usize, k: Color) -> EdgeColoring {
    random_gallai_coloring(rng, n, k).unwrap()
}

pub fn pentagons() -> EdgeColoring {
    EdgeColoring::from_fn(HostGraph::Complete(5), 2, two_c5_color).unwrap()
}

/// Critical 2-coloring of `K_{R-1}` avoiding `h`, with or without its
/// critical star.
pub fn ramsey_seed(h: &TargetGraph, with_star: bool) -> TwoColorCritical {
    let r = ramsey2(h, h, 20, &quick()).unwrap();
    let coloring = if with_star {
        star_critical_ramsey2(h, h, Some(r.value), &quick())
            .unwrap()
            .witness
            .unwrap()
    } else {
        r.witness.unwrap()
    };
    TwoColorCritical::new(coloring, vec![h.clone()]).unwrap()
}

/// Critical 2-coloring avoiding every merge of `h`, with its critical star.
pub fn merge_seed(h: &TargetGraph) -> TwoColorCritical {
    let fam = merge_parameters(h, 20, &quick()).unwrap();
    TwoColorCritical::new(fam.star_witness.unwrap(), fam.members).unwrap()
}
