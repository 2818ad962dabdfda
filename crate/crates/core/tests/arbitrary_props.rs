mod common;

use proptest::prelude::*;
use rand::Rng;
use streamcount::arbitrary::{run_arbitrary, run_arbitrary_practical, run_baseline_mvv, ArbParams, PracticalParams};
use streamcount::graph::families::gnp;
use streamcount::graph::{exact_triangle_count, per_edge_triangle_counts, ArbitraryStream};
use streamcount::oracle::{ConstantOracle, EdgeScores, KNoisyOracle, PerfectOracle, ThresholdRule, Verdict};
use streamcount::rng::{derived, seeded};
use streamcount::Graph;

use common::{corpus, mean_and_se, small_graph};

fn variance(xs: &[f64]) -> f64 {
    let (mean, _) = mean_and_se(xs);
    xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() as f64 - 1.0)
}

/// Every edge labelled heavy or light by a fair coin.
fn random_labels(g: &Graph, seed: u64) -> EdgeScores {
    let mut rng = seeded(seed);
    g.edges().iter().map(|&e| (e, if rng.gen_bool(0.5) { 1.0 } else { 0.0 })).collect()
}

#[test]
fn unbiased_for_any_fixed_labelling() {
    let params = ArbParams::explicit(1.0, 0.4).unwrap();
    for (i, (name, g)) in corpus().into_iter().enumerate() {
        if g.n() > 15 {
            continue;
        }
        let t = exact_triangle_count(&g) as f64;
        let labels = random_labels(&g, i as u64);
        let mut rng = seeded(100 + i as u64);
        let ests: Vec<f64> = (0..10_000)
            .map(|k| {
                let mut oracle = PerfectOracle::new(&labels, 0.5, ThresholdRule::Above).unwrap();
                let stream = ArbitraryStream::seeded(&g, k);
                run_arbitrary(&stream, &mut oracle, &params, &mut rng).unwrap().estimate
            })
            .collect();
        let (mean, se) = mean_and_se(&ests);
        assert!((mean - t).abs() <= 3.0 * se + 1e-9, "{name}: {mean} vs {t} (se {se})");
    }
}

#[test]
fn k_noisy_mean_and_variance() {
    let (p, rho, k) = (0.4, 3.0, 1.0);
    let params = ArbParams::explicit(rho, p).unwrap();
    for seed in 0..3u64 {
        let g = gnp(15, 0.5, &mut seeded(200 + seed));
        let t = exact_triangle_count(&g) as f64;
        let scores = EdgeScores::from_counts(&g, &per_edge_triangle_counts(&g));
        let mut rng = seeded(300 + seed);
        let ests: Vec<f64> = (0..10_000)
            .map(|trial| {
                let mut oracle = KNoisyOracle::new(&scores, rho, derived(seed, trial)).unwrap();
                let stream = ArbitraryStream::seeded(&g, trial);
                run_arbitrary(&stream, &mut oracle, &params, &mut rng).unwrap().estimate
            })
            .collect();
        let (mean, se) = mean_and_se(&ests);
        assert!((mean - t).abs() <= 3.0 * se, "{mean} vs {t}");
        let bound = 1.5 * 4.0 * t * (1.0 / (p * p) + 3.0 * k * rho / p);
        assert!(variance(&ests) <= bound, "{} > {bound}", variance(&ests));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn classes_partition_closed_triangles(g in small_graph(14), seed in any::<u64>(), p in 0.05f64..=1.0) {
        let t = exact_triangle_count(&g);
        let labels = random_labels(&g, seed);
        let stream = ArbitraryStream::seeded(&g, seed);
        let mut oracle = PerfectOracle::new(&labels, 0.5, ThresholdRule::Above).unwrap();
        let out = run_arbitrary(&stream, &mut oracle, &ArbParams::explicit(1.0, p).unwrap(), &mut seeded(seed)).unwrap();
        prop_assert!(out.l1 + out.l2 + out.l3 <= t);
        let mut oracle = PerfectOracle::new(&labels, 0.5, ThresholdRule::Above).unwrap();
        let out = run_arbitrary(&stream, &mut oracle, &ArbParams::explicit(1.0, 1.0).unwrap(), &mut seeded(seed)).unwrap();
        prop_assert_eq!(out.l1 + out.l2 + out.l3, t);
        prop_assert_eq!(out.estimate, t as f64);
    }

    #[test]
    fn practical_space_is_min_of_position_and_budget(g in small_graph(14), seed in any::<u64>(), z in 1usize..40) {
        prop_assume!(g.m() > 0);
        let mut rng = seeded(seed);
        let scores: EdgeScores = g.edges().iter().map(|&e| (e, rng.gen_range(0.0..5.0))).collect();
        let params = PracticalParams::new(z, g.m()).unwrap().with_trace();
        let out = run_arbitrary_practical(&ArbitraryStream::seeded(&g, seed), &mut &scores, &params, &mut rng).unwrap();
        prop_assert_eq!(out.trace.len(), g.m());
        for (i, &s) in out.trace.iter().enumerate() {
            prop_assert_eq!(s, (i + 1).min(z));
        }
    }

    #[test]
    fn heavy_only_is_exact(g in small_graph(12), seed in any::<u64>(), p in 0.01f64..1.0) {
        let out = run_arbitrary(
            &ArbitraryStream::seeded(&g, seed),
            &mut ConstantOracle(Verdict::Heavy),
            &ArbParams::explicit(1.0, p).unwrap(),
            &mut seeded(seed),
        )
        .unwrap();
        prop_assert_eq!(out.estimate, exact_triangle_count(&g) as f64);
    }
}

#[test]
fn practical_mode_is_unbiased() {
    for seed in 0..3u64 {
        let g = gnp(16, 0.45, &mut seeded(400 + seed));
        let t = exact_triangle_count(&g) as f64;
        let mut noise = seeded(500 + seed);
        let counts = per_edge_triangle_counts(&g);
        let scores: EdgeScores =
            g.edges().iter().zip(&counts).map(|(&e, &c)| (e, c as f64 + noise.gen_range(-2.0..2.0))).collect();
        let params = PracticalParams::new(g.m() / 3, g.m()).unwrap();
        let mut rng = seeded(600 + seed);
        let ests: Vec<f64> = (0..10_000)
            .map(|k| {
                let stream = ArbitraryStream::seeded(&g, k);
                run_arbitrary_practical(&stream, &mut &scores, &params, &mut rng).unwrap().estimate
            })
            .collect();
        let (mean, se) = mean_and_se(&ests);
        assert!((mean - t).abs() <= 3.0 * se, "seed {seed}: {mean} vs {t} (se {se})");
    }
}

#[test]
fn baseline_is_unbiased() {
    let g = gnp(16, 0.45, &mut seeded(700));
    let t = exact_triangle_count(&g) as f64;
    let mut rng = seeded(701);
    let ests: Vec<f64> = (0..10_000)
        .map(|k| run_baseline_mvv(&ArbitraryStream::seeded(&g, k), 0.3, &mut rng).unwrap().estimate)
        .collect();
    let (mean, se) = mean_and_se(&ests);
    assert!((mean - t).abs() <= 3.0 * se, "{mean} vs {t} (se {se})");
}
