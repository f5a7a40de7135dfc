use anyhow::{ensure, Result};
use grstar_core::detect::find_monochromatic_general;
use grstar_core::gallai::{
    find_gallai_partition, find_gallai_partition_with, minimal_partition_structure_holds,
    random_gallai_coloring, verify_gallai_partition, GallaiOptions, PartitionVerdict,
};
use grstar_core::{find_monochromatic, EdgeColoring, HostGraph, TargetGraph};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::inputs::print;
use crate::manifest::RunManifest;
use crate::{PASS, VERDICT};

#[derive(clap::Args, Debug, Serialize)]
pub struct Args {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random colorings per check.
    #[arg(long, default_value_t = 500)]
    count: usize,
    /// Largest order of the generated colorings.
    #[arg(long, default_value_t = 12)]
    max_order: usize,
}

#[derive(Default, Serialize)]
struct Tally {
    partitions_verified: usize,
    minimal_wide: usize,
    minimal_structure_failures: usize,
    detector_disagreements: usize,
}

pub fn run(a: Args) -> Result<u8> {
    ensure!(a.max_order >= 2, "--max-order must be at least 2");
    let mut manifest = RunManifest::new("check", &a);
    manifest.seed = Some(a.seed);
    let mut rng = StdRng::seed_from_u64(a.seed);
    let mut t = Tally::default();
    let minimal = GallaiOptions {
        minimal: true,
        ..Default::default()
    };
    let targets = [
        TargetGraph::clique(3),
        TargetGraph::path(4),
        TargetGraph::cycle(4),
        TargetGraph::star(3),
        TargetGraph::cycle(5),
    ];
    for _ in 0..a.count {
        let n = rng.gen_range(2..=a.max_order);
        let k = rng.gen_range(2..=5);
        let g = random_gallai_coloring(&mut rng, n, k)?;
        let p = find_gallai_partition(&g)?;
        if verify_gallai_partition(&g, &p.blocks)? == PartitionVerdict::Accept {
            t.partitions_verified += 1;
        }
        if n <= minimal.exhaustive_bound {
            let m = find_gallai_partition_with(&g, minimal)?;
            if m.q() > 2 {
                t.minimal_wide += 1;
                if !minimal_partition_structure_holds(&m) {
                    t.minimal_structure_failures += 1;
                }
            }
        }
        let n = rng.gen_range(3..=9);
        let h = &targets[rng.gen_range(0..targets.len())];
        let g = EdgeColoring::from_fn(HostGraph::complete(n)?, k, |_, _| rng.gen_range(1..=k))?;
        if (1..=k).any(|c| {
            find_monochromatic(&g, h, c).is_some() != find_monochromatic_general(&g, h, c).is_some()
        }) {
            t.detector_disagreements += 1;
        }
    }
    let ok = t.partitions_verified == a.count
        && t.minimal_structure_failures == 0
        && t.detector_disagreements == 0;
    let doc = serde_json::json!({ "pass": ok, "tally": t, "manifest": manifest.to_value() });
    print(&format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
    Ok(if ok { PASS } else { VERDICT })
}
