mod common;

use streamcount::graph::families::{complete, gnp};
use streamcount::graph::{adjacency_stream, exact_triangle_count, r_counts, VertexOrder};
use streamcount::oracle::{EdgeScores, ExpTailOracle, EXP_TAIL_K};
use streamcount::rng::{derived, ks_one_sample, median, seeded};
use streamcount::value::{run_erv, run_multilayer, ErvParams, LayerParams};

use common::mean_and_se;

#[test]
fn single_copy_follows_t_over_exp() {
    let g = complete(4);
    let order = VertexOrder::identity(4);
    let r = EdgeScores::from_counts(&g, &r_counts(&g, &order));
    let params = ErvParams::explicit(1, 100, 1.0).unwrap();
    let mut rng = seeded(1);
    let outs: Vec<f64> = (0..10_000)
        .map(|_| run_erv(adjacency_stream(&g, &order), &mut &r, &params, &mut rng).unwrap().copy_maxima[0])
        .collect();
    let ks = ks_one_sample(&outs, |x| if x <= 0.0 { 0.0 } else { (-4.0 / x).exp() });
    assert!(ks < 0.03, "KS {ks}");
}

#[test]
fn many_copies_concentrate() {
    let g = gnp(25, 0.4, &mut seeded(2));
    let order = VertexOrder::random(g.n(), &mut seeded(3));
    let t = exact_triangle_count(&g) as f64;
    let r = EdgeScores::from_counts(&g, &r_counts(&g, &order));
    let eps = 0.2;
    let copies = (50.0f64 / (eps * eps)).ceil() as usize;
    let params = ErvParams::explicit(copies, copies * g.m(), 1.0).unwrap();
    let mut rng = seeded(4);
    let hits = (0..200)
        .filter(|_| {
            let out = run_erv(adjacency_stream(&g, &order), &mut &r, &params, &mut rng).unwrap();
            let x = t / median(&out.copy_maxima).unwrap();
            let ln2 = std::f64::consts::LN_2;
            (ln2 * (1.0 - eps)..=ln2 * (1.0 + 5.0 * eps)).contains(&x)
        })
        .count();
    assert!(hits >= 180, "{hits}/200");
}

#[test]
fn budget_is_respected() {
    let g = gnp(60, 0.3, &mut seeded(5));
    let order = VertexOrder::random(g.n(), &mut seeded(6));
    let truth = EdgeScores::from_counts(&g, &r_counts(&g, &order));
    for budget in [8, 40, 200, 1000] {
        let params = ErvParams::explicit(8, budget, 1.0).unwrap();
        for trial in 0..20 {
            let mut oracle = ExpTailOracle::new(&truth, 2.0, 1.0, derived(7, trial)).unwrap();
            let out = run_erv(adjacency_stream(&g, &order), &mut oracle, &params, &mut derived(8, trial)).unwrap();
            assert!(out.peak_space <= budget, "{} > {budget}", out.peak_space);
        }
    }
}

#[test]
fn bounded_budget_loses_no_maxima() {
    let g = gnp(60, 0.3, &mut seeded(9));
    let order = VertexOrder::random(g.n(), &mut seeded(10));
    let t = exact_triangle_count(&g) as f64;
    let truth = EdgeScores::from_counts(&g, &r_counts(&g, &order));
    let (eps, alpha, beta) = (0.5, 2.0, 1.0);
    let bound = ErvParams::new(eps, alpha, beta, EXP_TAIL_K, g.m(), t).unwrap();
    let open = ErvParams::explicit(bound.copies, bound.copies * g.m(), beta).unwrap();
    let (mut same, mut total) = (0, 0);
    for trial in 0..20 {
        let run = |params: &ErvParams| {
            let mut oracle = ExpTailOracle::new(&truth, alpha, beta, derived(11, trial)).unwrap();
            run_erv(adjacency_stream(&g, &order), &mut oracle, params, &mut derived(12, trial)).unwrap()
        };
        let (a, b) = (run(&bound), run(&open));
        assert!(a.peak_space <= bound.budget);
        same += a.copy_maxima.iter().zip(&b.copy_maxima).filter(|(x, y)| x == y).count();
        total += bound.copies;
    }
    assert!(same as f64 >= 0.9 * total as f64, "{same}/{total} copies agree");
}

#[test]
fn multilayer_is_unbiased() {
    for seed in 0..3u64 {
        let g = gnp(18, 0.5, &mut seeded(20 + seed));
        let order = VertexOrder::random(g.n(), &mut seeded(30 + seed));
        let t = exact_triangle_count(&g) as f64;
        let truth = EdgeScores::from_counts(&g, &r_counts(&g, &order));
        let params = LayerParams::new(g.n(), 0.5, 1.0, t).unwrap().scaled(0.05).with_repeats(1);
        let mut rng = seeded(40 + seed);
        let ests: Vec<f64> = (0..10_000)
            .map(|k| {
                let mut oracle = ExpTailOracle::new(&truth, 2.0, 1.0, derived(seed, k)).unwrap();
                run_multilayer(adjacency_stream(&g, &order), &mut oracle, &params, &mut rng).unwrap().estimate
            })
            .collect();
        let (mean, se) = mean_and_se(&ests);
        assert!((mean - t).abs() <= 3.0 * se, "seed {seed}: {mean} vs {t} (se {se})");
    }
}
