mod common;

use common::quick;
use grstar_core::search::*;
use grstar_core::{
    find_monochromatic, find_rainbow_triangle, EdgeColoring, HostGraph, SearchConfig, TargetGraph,
    TargetSet,
};

fn sets(h: &TargetGraph, k: usize) -> Vec<TargetSet> {
    vec![TargetSet::from(h.clone()); k]
}

fn gr(h: &TargetGraph, k: usize) -> SearchResult {
    gallai_ramsey_number(&sets(h, k), 20, Method::Dfs, &quick()).unwrap()
}

fn gr_star(h: &TargetGraph, k: usize, n: usize, strategy: Strategy) -> SearchResult {
    star_critical_gallai_number(&sets(h, k), Some(n), strategy, &quick()).unwrap()
}

fn assert_critical(g: &EdgeColoring, h: &TargetGraph, rainbow: bool) {
    if rainbow {
        assert!(find_rainbow_triangle(g).is_none());
    }
    for c in 1..=g.k() {
        assert!(
            find_monochromatic(g, h, c).is_none(),
            "{} in color {c}",
            h.name()
        );
    }
}

#[test]
fn two_color_ramsey_values() {
    let cases = [
        (TargetGraph::path(4), 5),
        (TargetGraph::cycle(4), 6),
        (TargetGraph::star(3), 6),
        (TargetGraph::clique(3), 6),
        (TargetGraph::cycle(5), 9),
        (TargetGraph::star(4), 7),
    ];
    for (h, r) in cases {
        let out = ramsey2(&h, &h, 12, &quick()).unwrap();
        assert_eq!(out.value, r, "{}", h.name());
        let w = out.witness.unwrap();
        assert_eq!(w.order(), r - 1);
        assert_critical(&w, &h, false);
    }
}

#[test]
fn mixed_ramsey_values() {
    let k3 = TargetGraph::clique(3);
    assert_eq!(
        ramsey2(&k3, &TargetGraph::clique(4), 12, &quick())
            .unwrap()
            .value,
        9
    );
    assert_eq!(
        ramsey2(&TargetGraph::path(3), &TargetGraph::path(3), 6, &quick())
            .unwrap()
            .value,
        3
    );
    assert_eq!(
        ramsey2(&k3, &TargetGraph::path(4), 10, &quick())
            .unwrap()
            .value,
        7
    );
}

#[test]
fn gallai_ramsey_values() {
    let cases = [
        (TargetGraph::path(4), 1, 4),
        (TargetGraph::path(4), 2, 5),
        (TargetGraph::path(4), 3, 6),
        (TargetGraph::path(4), 4, 7),
        (TargetGraph::cycle(4), 2, 6),
        (TargetGraph::cycle(4), 3, 7),
        (TargetGraph::star(3), 3, 6),
        (TargetGraph::star(3), 4, 6),
        (TargetGraph::star(4), 3, 7),
    ];
    for (h, k, value) in cases {
        let out = gr(&h, k);
        assert_eq!(out.value, value, "gr_{k}({})", h.name());
        assert!(out.exact);
        let w = out.witness.unwrap();
        assert_eq!(w.order(), value - 1);
        assert_critical(&w, &h, true);
    }
}

#[test]
fn star_critical_values() {
    let cases = [
        (TargetGraph::path(4), 1, 1),
        (TargetGraph::path(4), 2, 2),
        (TargetGraph::path(4), 3, 3),
        (TargetGraph::path(4), 4, 4),
        (TargetGraph::cycle(4), 2, 5),
        (TargetGraph::cycle(4), 3, 6),
        (TargetGraph::star(3), 2, 1),
        (TargetGraph::star(3), 3, 3),
        (TargetGraph::star(3), 4, 3),
        (TargetGraph::clique(3), 2, 5),
        (TargetGraph::star(4), 3, 6),
    ];
    for (h, k, value) in cases {
        let n = gr(&h, k).value;
        let a = gr_star(&h, k, n, Strategy::Direct);
        let b = gr_star(&h, k, n, Strategy::Extend);
        assert_eq!((a.value, b.value), (value, value), "gr*_{k}({})", h.name());
        if let Some(w) = b.witness {
            assert_eq!(
                (w.host().clique_order(), w.host().star_size()),
                (n - 1, value - 1)
            );
            assert_critical(&w, &h, true);
        }
    }
}

#[test]
fn levelwise_agrees_with_dfs() {
    let cfg = SearchConfig {
        canon_bound: 12,
        ..quick()
    };
    for (h, k) in [
        (TargetGraph::path(4), 3),
        (TargetGraph::cycle(4), 3),
        (TargetGraph::star(3), 3),
        (TargetGraph::clique(3), 2),
    ] {
        let a = gallai_ramsey_number(&sets(&h, k), 12, Method::Dfs, &cfg).unwrap();
        let b = gallai_ramsey_number(&sets(&h, k), 12, Method::Levelwise, &cfg).unwrap();
        assert_eq!(a.value, b.value, "{}", h.name());
    }
}

#[test]
fn two_colors_reduce_to_ramsey() {
    for h in [
        TargetGraph::path(4),
        TargetGraph::cycle(4),
        TargetGraph::star(3),
        TargetGraph::clique(3),
        TargetGraph::path(5),
    ] {
        let r = ramsey2(&h, &h, 12, &quick()).unwrap().value;
        assert_eq!(gr(&h, 2).value, r, "{}", h.name());
        let rs = star_critical_ramsey2(&h, &h, Some(r), &quick())
            .unwrap()
            .value;
        assert_eq!(gr_star(&h, 2, r, Strategy::Direct).value, rs);
    }
}

#[test]
fn monotone_in_colors_and_bounded_by_order() {
    for h in [
        TargetGraph::path(4),
        TargetGraph::cycle(4),
        TargetGraph::star(3),
    ] {
        let lo = if h.edge_count() == 4 { 2 } else { 1 };
        let values: Vec<usize> = (lo..=4).map(|k| gr(&h, k).value).collect();
        assert!(
            values.windows(2).all(|w| w[0] <= w[1]),
            "{} {values:?}",
            h.name()
        );
        for (i, k) in (lo..=3).enumerate() {
            let s = gr_star(&h, k, values[i], Strategy::Direct).value;
            assert!(s >= 1 && s < values[i]);
        }
    }
}

#[test]
fn non_threshold_order_is_rejected() {
    let h = TargetGraph::cycle(4);
    assert!(
        star_critical_gallai_number(&sets(&h, 2), Some(5), Strategy::Direct, &quick()).is_err()
    );
}

#[test]
fn budget_exhaustion_reports_stats() {
    let err = gallai_ramsey_number(
        &sets(&TargetGraph::clique(3), 3),
        20,
        Method::Dfs,
        &SearchConfig::with_budget(1000),
    );
    match err {
        Err(grstar_core::Error::BudgetExceeded { stats }) => assert!(stats.nodes >= 1000),
        other => panic!("expected budget exhaustion, got {other:?}"),
    }
}

#[test]
fn checkpoints_resume_to_the_same_answer() {
    let cases = [
        (TargetGraph::path(4), 6, true),
        (TargetGraph::path(4), 5, false),
        (TargetGraph::cycle(4), 7, true),
        (TargetGraph::clique(3), 8, false),
    ];
    let mut interrupted = 0;
    for (h, n, expect) in cases {
        let problem =
            SearchProblem::symmetric(HostGraph::Complete(n), 3, TargetSet::from(h.clone()), true)
                .unwrap();
        let full = arrows(&problem, &quick()).unwrap();
        let mut config = SearchConfig {
            sequential: true,
            ..SearchConfig::with_budget(20)
        };
        let mut rounds = 0;
        let outcome = loop {
            rounds += 1;
            match arrows_resumable(&problem, &config).unwrap() {
                SearchRun::Complete(out) => break out,
                SearchRun::Interrupted { checkpoint, .. } => {
                    let text = format_checkpoint(&checkpoint);
                    config.resume = Some(parse_checkpoint(&text).unwrap());
                }
            }
            assert!(rounds < 100_000);
        };
        assert_eq!(outcome.arrows, expect);
        assert_eq!(full.arrows, expect);
        interrupted += usize::from(rounds > 1);
        if let Some(w) = outcome.counterexample {
            assert_critical(&w, &h, true);
        }
    }
    assert!(interrupted > 0);
}

#[test]
fn merge_family_parameters() {
    let c5 = merge_parameters(&TargetGraph::cycle(5), 12, &quick()).unwrap();
    assert_eq!((c5.m_h, c5.r_star_family), (Some(5), Some(4)));
    let k3 = merge_parameters(&TargetGraph::clique(3), 12, &quick()).unwrap();
    assert_eq!((k3.m_h, k3.r_star_family), (Some(6), Some(5)));
}
