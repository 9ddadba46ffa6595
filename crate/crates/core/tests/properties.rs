//! Property tests for invariants that must hold for every input.

mod common;

use lsbm::bisection::{cut_value, min_bisection_exact, BalanceMode};
use lsbm::cycles::count_labeled_cycles;
use lsbm::harness::{ExperimentConfig, Method, SweepVariable, WeightMode};
use lsbm::model::{
    er_pair_law, log_likelihood, lsbm_pair_law, sample_gw_tree, sample_labeled_er, sample_lsbm, Edge,
    LabeledTree, TreeNode,
};
use lsbm::sdp::{solve_sdp, SdpOptions};
use lsbm::spectral::{extreme_eigenpair, trim, DeflatedAdjacency, EigenOptions, SymmetricOperator};
use lsbm::tree::root_posterior;
use lsbm::weights::{alpha_beta, optimal_weight, overlap, snr_statistic, tau};
use lsbm::{Label, LabelAlphabet, LabeledGraph, ModelParams, TypeAssignment, WeightFunction, WeightedAdjacency};
use proptest::prelude::*;

use common::{brute_cycles, brute_min_bisection, dense};

fn dist(k: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..1.0, k).prop_map(|v| {
        let s: f64 = v.iter().sum();
        v.into_iter().map(|x| x / s).collect()
    })
}

fn params() -> impl Strategy<Value = ModelParams> {
    (1usize..4).prop_flat_map(|k| (0.0f64..8.0, 0.0f64..8.0, dist(k), dist(k))).prop_map(|(a, b, mu, nu)| {
        let tokens: Vec<String> = (0..mu.len()).map(|i| format!("t{i}")).collect();
        ModelParams::new(a, b, mu, nu, LabelAlphabet::new(tokens).unwrap()).unwrap()
    })
}

fn signs(n: usize) -> impl Strategy<Value = TypeAssignment> {
    prop::collection::vec(any::<bool>(), n)
        .prop_map(|v| TypeAssignment::new(v.into_iter().map(|b| if b { 1 } else { -1 }).collect()).unwrap())
}

fn sparse_matrix(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize, f64)>)> {
    (2..max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let m = pairs.len();
        (Just(n), prop::collection::vec((any::<bool>(), -1.0f64..1.0), m)).prop_map(move |(n, picks)| {
            let e = pairs.iter().zip(picks).filter(|(_, (keep, _))| *keep).map(|(&(u, v), (_, x))| (u, v, x)).collect();
            (n, e)
        })
    })
}

fn labeled_graph(max_n: usize, labels: usize) -> impl Strategy<Value = LabeledGraph> {
    (3..max_n).prop_flat_map(move |n| {
        let m = n * (n - 1) / 2;
        (Just(n), prop::collection::vec(prop::option::weighted(0.3, 0..labels as u16), m)).prop_map(move |(n, picks)| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges = pairs.zip(picks).filter_map(|((u, v), l)| l.map(|l| Edge { u, v, label: Label(l) })).collect();
            let tokens: Vec<String> = (0..labels).map(|i| format!("t{i}")).collect();
            LabeledGraph::new(n, LabelAlphabet::new(tokens).unwrap(), edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tau_is_nonnegative_and_zero_only_without_signal(p in params()) {
        let t = tau(&p);
        prop_assert!(t >= 0.0);
        let silent = (0..p.num_labels()).all(|l| (p.a * p.mu[l] - p.b * p.nu[l]).abs() < 1e-12);
        prop_assert_eq!(t < 1e-15, silent);
    }

    #[test]
    fn optimal_weight_maximises_signal(p in params(), w in prop::collection::vec(-1.0f64..1.0, 3)) {
        prop_assume!(p.a + p.b > 0.1);
        let best = snr_statistic(&p, &optimal_weight(&p));
        let w = WeightFunction::new(w[..p.num_labels()].to_vec());
        if let (Ok(best), Ok(other)) = (best, snr_statistic(&p, &w)) {
            prop_assert!((best * best - 2.0 * tau(&p)).abs() <= 1e-10);
            prop_assert!(other <= best + 1e-12);
        }
    }

    #[test]
    fn alpha_beta_is_linear_in_the_weight(
        p in params(),
        x in prop::collection::vec(-2.0f64..2.0, 3),
        y in prop::collection::vec(-2.0f64..2.0, 3),
        c in -3.0f64..3.0,
    ) {
        let k = p.num_labels();
        let (x, y) = (&x[..k], &y[..k]);
        let combo = WeightFunction::new(x.iter().zip(y).map(|(a, b)| c * a + b).collect());
        let (ax, bx) = alpha_beta(&p, &WeightFunction::new(x.to_vec())).unwrap();
        let (ay, by) = alpha_beta(&p, &WeightFunction::new(y.to_vec())).unwrap();
        let (ac, bc) = alpha_beta(&p, &combo).unwrap();
        prop_assert!((ac - (c * ax + ay)).abs() < 1e-10);
        prop_assert!((bc - (c * bx + by)).abs() < 1e-10);
    }

    #[test]
    fn overlap_symmetries((s, t) in (1usize..40).prop_flat_map(|n| (signs(n), signs(n)))) {
        let q = overlap(&s, &t).unwrap();
        let flipped = TypeAssignment::new(s.as_slice().iter().map(|x| -x).collect()).unwrap();
        prop_assert!((0.0..=0.5).contains(&q));
        prop_assert_eq!(q, overlap(&t, &s).unwrap());
        prop_assert_eq!(q, overlap(&flipped, &t).unwrap());
    }

    #[test]
    fn trimming_only_removes((g, d) in (labeled_graph(14, 2), 0.0f64..12.0)) {
        let (h, report) = trim(&g, d);
        prop_assert_eq!(h.n(), g.n());
        for e in h.edges() {
            prop_assert!(g.edges().contains(e));
        }
        for u in 0..g.n() {
            prop_assert!(h.degree(u) <= g.degree(u));
            if report.removed_vertices.contains(&u) {
                prop_assert_eq!(h.degree(u), 0);
            }
        }
        prop_assert_eq!(report.removed_edges, g.num_edges() - h.num_edges());
    }

    #[test]
    fn deflated_product_and_eigen_residual((n, e) in sparse_matrix(30), alpha in -2.0f64..2.0, seed in any::<u64>()) {
        let w = WeightedAdjacency::from_triplets(n, &e).unwrap();
        let op = DeflatedAdjacency { w: &w, alpha };
        let x: Vec<f64> = (0..n).map(|i| ((i * 7 + 3) % 11) as f64 - 5.0).collect();
        let mut y = vec![0.0; n];
        op.apply(&x, &mut y);
        let d = dense(n, &e);
        for u in 0..n {
            let want: f64 = (0..n).map(|v| (d[u][v] - alpha / n as f64) * x[v]).sum();
            prop_assert!((y[u] - want).abs() < 1e-12);
        }
        let opts = EigenOptions { seed, ..EigenOptions::default() };
        let r = extreme_eigenpair(&w, alpha, &opts).unwrap();
        op.apply(&r.eigenvector, &mut y);
        let resid = y.iter().zip(&r.eigenvector).map(|(a, b)| (a - r.eigenvalue * b).powi(2)).sum::<f64>().sqrt();
        prop_assert!(resid <= opts.tol);
        prop_assert!((r.eigenvector.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn bisection_is_balanced_optimal_and_flip_invariant((n, e) in sparse_matrix(11)) {
        let w = WeightedAdjacency::from_triplets(n, &e).unwrap();
        let mode = if n % 2 == 0 { BalanceMode::Exact } else { BalanceMode::Relaxed };
        let best = min_bisection_exact(&w, mode).unwrap();
        let s = &best.assignment;
        prop_assert!(s.balance().abs() <= (n % 2) as i64);
        prop_assert_eq!(s.get(0), 1);
        let flipped = TypeAssignment::new(s.as_slice().iter().map(|x| -x).collect()).unwrap();
        prop_assert_eq!(cut_value(&w, s).unwrap(), cut_value(&w, &flipped).unwrap());
        if n % 2 == 0 {
            let (cut, _) = brute_min_bisection(&dense(n, &e));
            prop_assert!((best.cut - cut).abs() < 1e-9);
        }
    }

    #[test]
    fn sdp_reports_its_own_residuals((n, e) in sparse_matrix(9)) {
        let w = WeightedAdjacency::from_triplets(n, &e).unwrap();
        let sol = solve_sdp(&w, &SdpOptions::default()).unwrap();
        let y = &sol.y;
        let diag = (0..n).map(|i| (y.get(i, i) - 1.0).abs()).fold(0.0, f64::max);
        prop_assert!((diag - sol.diag_deviation).abs() < 1e-15);
        prop_assert!((y.total().abs() / (n * n) as f64 - sol.sum_violation).abs() < 1e-15);
        let d = dense(n, &e);
        let obj: f64 = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| d[i][j] * y.get(i, j)).sum();
        prop_assert!((obj - sol.objective).abs() < 1e-9);
        prop_assert!(sol.is_feasible(1e-5));
    }

    #[test]
    fn census_totals_match_unlabeled_count(g in labeled_graph(11, 3)) {
        let census = count_labeled_cycles(&g, 6).unwrap();
        for k in 3..=6 {
            let brute: u64 = brute_cycles(&g, k).values().sum();
            prop_assert_eq!(census.total_at(k), brute);
        }
    }

    #[test]
    fn census_is_equivariant_under_label_renaming(g in labeled_graph(10, 3), rot in 1u16..3) {
        let renamed = LabeledGraph::new(
            g.n(),
            g.alphabet().clone(),
            g.edges().iter().map(|e| Edge { label: Label((e.label.0 + rot) % 3), ..*e }).collect(),
        ).unwrap();
        let a = count_labeled_cycles(&g, 5).unwrap();
        let b = count_labeled_cycles(&renamed, 5).unwrap();
        for (labels, count) in a.entries() {
            let mapped: Vec<Label> = labels.iter().map(|l| Label((l.0 + rot) % 3)).collect();
            prop_assert_eq!(b.count(&mapped), count);
        }
        prop_assert_eq!(a.entries().len(), b.entries().len());
    }

    #[test]
    fn flipping_observations_complements_the_posterior(eps in 0.0f64..0.5, a in 0.5f64..5.0, b in 0.5f64..5.0, seed in any::<u64>()) {
        let p = ModelParams::binary(a, b, eps).unwrap();
        let t = sample_gw_tree(&p, 3, seed).unwrap();
        let nodes: Vec<TreeNode> = t.nodes().iter().map(|x| TreeNode { spin: -x.spin, ..x.clone() }).collect();
        let flipped = LabeledTree::new(nodes, t.depth_limit()).unwrap();
        let (x, y) = (root_posterior(&t, &p).unwrap(), root_posterior(&flipped, &p).unwrap());
        prop_assert!((x + y - 1.0).abs() < 1e-12);
    }

    #[test]
    fn likelihood_is_flip_invariant(p in params(), seed in any::<u64>()) {
        prop_assume!(p.a <= 8.0 && p.b <= 8.0 && p.a + p.b > 0.0);
        let (g, s) = sample_lsbm(&p, 20, seed).unwrap();
        g.validate().unwrap();
        let flipped = TypeAssignment::new(s.as_slice().iter().map(|x| -x).collect()).unwrap();
        let x = log_likelihood(&g, &s, &p).unwrap();
        let y = log_likelihood(&g, &flipped, &p).unwrap();
        prop_assert_eq!(x.is_impossible(), y.is_impossible());
        if !x.is_impossible() {
            prop_assert!((x.value() - y.value()).abs() < 1e-9);
        }
        let er = sample_labeled_er(&p, 20, seed).unwrap();
        er.validate().unwrap();
    }

    #[test]
    fn symmetric_model_matches_null_pair_law(a in 0.1f64..8.0, mu in dist(3), n in 10usize..1000) {
        let tokens = ["x", "y", "z"];
        let p = ModelParams::new(a, a, mu.clone(), mu, LabelAlphabet::new(tokens).unwrap()).unwrap();
        let l = lsbm_pair_law(&p, n);
        let e = er_pair_law(&p, n).unwrap();
        prop_assert!((l.edge_prob - e.edge_prob).abs() < 1e-15);
        for (x, y) in l.labels.iter().zip(&e.labels) {
            prop_assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn config_round_trips(
        a in 0.0f64..10.0,
        b in 0.0f64..10.0,
        n in 2usize..5000,
        trials in 1usize..50,
        seed in any::<u64>(),
        method in prop::sample::select(vec![Method::Spectral, Method::Sdp, Method::Bisect]),
        weights in prop::sample::select(vec![WeightMode::Optimal, WeightMode::Mle, WeightMode::Unit]),
        sweep in prop::sample::select(vec![SweepVariable::Epsilon, SweepVariable::A, SweepVariable::B]),
        grid in prop::collection::vec(0.0f64..0.5, 1..6),
        trim in any::<bool>(),
        timing in any::<bool>(),
    ) {
        let cfg = ExperimentConfig { a, b, n, trials, seed, method, weights, sweep, grid, trim, timing, ..ExperimentConfig::default() };
        prop_assert_eq!(ExperimentConfig::parse(&cfg.serialize()).unwrap(), cfg);
    }
}
