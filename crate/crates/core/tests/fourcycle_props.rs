mod common;

use proptest::prelude::*;
use streamcount::fourcycle::{run_fourcycle, FourCycleParams, FourCycleState};
use streamcount::graph::families::complete_bipartite;
use streamcount::graph::{exact_four_cycle_count, per_edge_four_cycle_counts, wedge_count, ArbitraryStream};
use streamcount::oracle::{ConstantOracle, EdgeScores, PerfectOracle, ThresholdRule, Verdict};
use streamcount::rng::{derived, seeded};
use streamcount::{Graph, VertexId};

use common::{corpus, mean_and_se, small_graph};

/// Cycles as (a, b, c, d) with diagonals ac and bd.
fn cycles(g: &Graph) -> Vec<[VertexId; 4]> {
    let n = g.n() as VertexId;
    let e = |a, b| g.has_edge(a, b);
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for q in [[a, b, c, d], [a, b, d, c], [a, c, b, d]] {
                        if e(q[0], q[1]) && e(q[1], q[2]) && e(q[2], q[3]) && e(q[3], q[0]) {
                            out.push(q);
                        }
                    }
                }
            }
        }
    }
    out
}

fn heavy_pair(g: &Graph, a: VertexId, b: VertexId, threshold: f64) -> bool {
    wedge_count(g, a, b).unwrap() as f64 >= threshold
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn full_rate_wedges_match_common_neighbors(g in small_graph(12)) {
        let mut state = FourCycleState::new(g.n(), FourCycleParams::explicit(1.0, 1.0).unwrap(), &mut seeded(1)).unwrap();
        for &e in g.edges() {
            state.process(e, &mut ConstantOracle(Verdict::Light), &mut seeded(2));
        }
        let diagonals = state.candidate_diagonals();
        let n = g.n() as VertexId;
        let mut want = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let q = wedge_count(&g, u, v).unwrap();
                if q > 0 {
                    want.push((u, v, q));
                }
            }
        }
        prop_assert_eq!(diagonals, want);
    }

    #[test]
    fn overcount_is_cycles_with_two_heavy_diagonals(g in small_graph(11), threshold in 1.0f64..5.0, seed in any::<u64>()) {
        let all = cycles(&g);
        prop_assert_eq!(all.len() as u64, exact_four_cycle_count(&g));
        let doubled = all
            .iter()
            .filter(|c| heavy_pair(&g, c[0], c[2], threshold) && heavy_pair(&g, c[1], c[3], threshold))
            .count() as f64;
        let clear = all
            .iter()
            .filter(|c| !heavy_pair(&g, c[0], c[2], threshold) && !heavy_pair(&g, c[1], c[3], threshold))
            .count() as u64;
        let params = FourCycleParams::explicit(1.0, 1.0).unwrap().with_wedge_threshold(threshold);
        let out = run_fourcycle(&ArbitraryStream::seeded(&g, seed), g.n(), &mut ConstantOracle(Verdict::Light), &params, &mut seeded(seed))
            .unwrap();
        prop_assert_eq!(out.a_l, clear);
        prop_assert_eq!(out.estimate - exact_four_cycle_count(&g) as f64, doubled);
    }

    #[test]
    fn one_heavy_edge_per_cycle(g in small_graph(11), seed in any::<u64>()) {
        // at p = 1 with the strongest edges heavy, single-heavy cycles land in A_h
        let per_edge = EdgeScores::from_counts(&g, &per_edge_four_cycle_counts(&g));
        let top = per_edge.max_score();
        prop_assume!(top > 0.0);
        let mut oracle = PerfectOracle::new(&per_edge, top, ThresholdRule::AtLeast).unwrap();
        let params = FourCycleParams::explicit(1.0, 1.0).unwrap().with_wedge_threshold(f64::INFINITY);
        let out = run_fourcycle(&ArbitraryStream::seeded(&g, seed), g.n(), &mut oracle, &params, &mut seeded(seed)).unwrap();
        let heavy = |a: VertexId, b: VertexId| g.has_edge(a, b) && per_edge.get(streamcount::Edge::new(a, b).unwrap()) >= top;
        let all = cycles(&g);
        let count = |k: usize| {
            all.iter()
                .filter(|c| (0..4).filter(|&i| heavy(c[i], c[(i + 1) % 4])).count() == k)
                .count() as u64
        };
        prop_assert_eq!(out.a_l, count(0));
        prop_assert_eq!(out.a_h, count(1));
    }
}

#[test]
fn saturated_corpus_is_exact() {
    for (name, g) in corpus() {
        let params = FourCycleParams::explicit(1.0, 1.0).unwrap().with_wedge_threshold(f64::INFINITY);
        let out = run_fourcycle(&ArbitraryStream::seeded(&g, 3), g.n(), &mut ConstantOracle(Verdict::Light), &params, &mut seeded(4))
            .unwrap();
        assert_eq!(out.estimate, exact_four_cycle_count(&g) as f64, "{name}");
    }
}

#[test]
fn heavy_wedges_are_rescaled() {
    let g = complete_bipartite(2, 30);
    let t = exact_four_cycle_count(&g) as f64;
    let params = FourCycleParams::explicit(0.5, t).unwrap();
    let ests: Vec<f64> = (0..4000u64)
        .map(|k| {
            let mut oracle = ConstantOracle(Verdict::Light);
            run_fourcycle(&ArbitraryStream::seeded(&g, k), g.n(), &mut oracle, &params, &mut derived(5, k)).unwrap().estimate
        })
        .collect();
    let (mean, se) = mean_and_se(&ests);
    assert!((mean - t).abs() <= 3.0 * se, "{mean} vs {t} (se {se})");
}
