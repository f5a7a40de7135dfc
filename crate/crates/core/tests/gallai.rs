mod common;

use common::{random_coloring, random_gallai};
use grstar_core::gallai::*;
use grstar_core::{find_rainbow_triangle, Error};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn partitions_of_generated_colorings_verify() {
    let mut rng = StdRng::seed_from_u64(2024);
    for _ in 0..500 {
        let n = rng.gen_range(2..=30);
        let k = rng.gen_range(1..=5);
        let g = random_gallai(&mut rng, n, k);
        let p = find_gallai_partition(&g).unwrap();
        assert_eq!(
            verify_gallai_partition(&g, &p.blocks).unwrap(),
            PartitionVerdict::Accept
        );
        assert!(p.q() >= 2 && p.between_colors.len() <= 2);
        let mut covered: Vec<usize> = p.blocks.concat();
        covered.sort_unstable();
        assert_eq!(covered, (0..n).collect::<Vec<_>>());
        for i in 0..p.q() {
            for j in i + 1..p.q() {
                assert_eq!(
                    p.reduced.color(i, j),
                    g.color(p.blocks[i][0], p.blocks[j][0])
                );
            }
        }
    }
}

#[test]
fn minimal_partitions_have_the_expected_shape() {
    let mut rng = StdRng::seed_from_u64(99);
    let opts = GallaiOptions {
        minimal: true,
        ..GallaiOptions::default()
    };
    let mut wide = 0;
    for _ in 0..500 {
        let n = rng.gen_range(2..=10);
        let k = rng.gen_range(2..=4);
        let g = random_gallai(&mut rng, n, k);
        let p = find_gallai_partition_with(&g, opts).unwrap();
        assert_eq!(p.mode, PartitionMode::Exhaustive);
        assert_eq!(
            verify_gallai_partition(&g, &p.blocks).unwrap(),
            PartitionVerdict::Accept
        );
        if p.q() > 2 {
            wide += 1;
            assert_ne!(p.q(), 3);
            assert!(minimal_partition_structure_holds(&p), "{}", g.to_text());
        }
        assert!(find_gallai_partition(&g).unwrap().q() >= p.q());
    }
    assert!(wide > 0);
}

#[test]
fn rainbow_colorings_are_refused() {
    let mut rng = StdRng::seed_from_u64(5);
    let mut refused = 0;
    for _ in 0..100 {
        let g = random_coloring(&mut rng, 6, 3);
        if find_rainbow_triangle(&g).is_some() {
            refused += 1;
            assert!(matches!(
                find_gallai_partition(&g),
                Err(Error::RainbowTrianglePresent(_))
            ));
        }
    }
    assert!(refused > 0);
}

#[test]
fn bad_partitions_are_rejected() {
    let mut rng = StdRng::seed_from_u64(8);
    let g = random_gallai(&mut rng, 6, 3);
    assert_eq!(
        verify_gallai_partition(&g, &[(0..6).collect()]).unwrap(),
        PartitionVerdict::Reject(Violation::TooFewBlocks)
    );
    assert!(matches!(
        verify_gallai_partition(&g, &[vec![0, 1], vec![2, 3]]),
        Err(Error::NotAPartition(_))
    ));
    assert!(matches!(
        verify_gallai_partition(&g, &[vec![0, 1, 2], vec![2, 3, 4, 5]]),
        Err(Error::NotAPartition(_))
    ));
    let text = format_partition(&find_gallai_partition(&g).unwrap().blocks);
    let blocks = parse_partition(&text).unwrap();
    assert_eq!(
        verify_gallai_partition(&g, &blocks).unwrap(),
        PartitionVerdict::Accept
    );
}
