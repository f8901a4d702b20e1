//! Property tests: structural invariants that must hold for every valid
//! input, not just the calibrated scenario settings.

use boardnet::boards::{init, init_unbiased, BoardState, InitConfig, InitMode};
use boardnet::dynamics::{
    assign_vacancies, grow_endogenous, grow_exogenous, lambda_schedule, retire, step,
    DynamicsConfig, EndoApplication, GrowthMode, InflowState, LambdaMode,
};
use boardnet::metrics::{
    eigencentrality, network_homophily, perception_all_observers, representation_bins,
};
use boardnet::netgen::{
    couple_sizes_to_degrees, fit_tail_exponent, gen_ba, gen_fitness_ba, gen_homophily_ba,
    sample_board_sizes, FirmGraph,
};
use boardnet::rng::run_rng;
use proptest::prelude::*;
use std::collections::HashSet;

fn build_state(n: usize, m: usize, share: f64, seed: u64) -> (FirmGraph, BoardState) {
    let mut rng = run_rng(seed, 0);
    let graph = gen_ba(n, m, &mut rng).unwrap();
    let raw = sample_board_sizes(n, 12.5, 20.6, 3, &mut rng).unwrap();
    let sizes = couple_sizes_to_degrees(&graph, &raw).unwrap();
    let state = init_unbiased(&sizes, share, &mut rng).unwrap();
    (graph, state)
}

fn is_connected(graph: &FirmGraph) -> bool {
    let n = graph.n();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in graph.neighbors(u) {
            if !seen[v as usize] {
                seen[v as usize] = true;
                count += 1;
                stack.push(v as usize);
            }
        }
    }
    count == n
}

fn assert_simple_graph(graph: &FirmGraph, n: usize, m: usize) {
    assert_eq!(graph.n(), n);
    let mut degree_sum = 0usize;
    for u in 0..n {
        let nb = graph.neighbors(u);
        degree_sum += nb.len();
        let set: HashSet<u32> = nb.iter().copied().collect();
        assert_eq!(set.len(), nb.len(), "duplicate edge at node {u}");
        assert!(!set.contains(&(u as u32)), "self loop at node {u}");
        for &v in nb {
            assert!(
                graph.neighbors(v as usize).contains(&(u as u32)),
                "edge {u}-{v} not symmetric"
            );
        }
        assert!(graph.degree(u) >= m, "node {u} has degree {}", graph.degree(u));
    }
    assert_eq!(degree_sum, 2 * graph.edge_count());
    assert_eq!(graph.edges().count(), graph.edge_count());
    assert!(is_connected(graph));
}

fn share_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![4 => 0.0f64..=1.0, 1 => Just(0.0f64), 1 => Just(1.0f64)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exogenous_growth_stays_inside_the_band(
        x_star in 0.05f64..=1.0,
        frac in 0.0f64..=1.0,
        g_f in 0.0f64..=1.0,
    ) {
        let x = frac * x_star;
        let next = grow_exogenous(x, g_f, x_star);
        prop_assert!(next >= x - 1e-12, "shrank: {x} -> {next}");
        prop_assert!(next <= x_star + 1e-12, "overshot: {next} > {x_star}");
        prop_assert_eq!(grow_exogenous(0.0, g_f, x_star), 0.0);
        prop_assert!((grow_exogenous(x_star, g_f, x_star) - x_star).abs() < 1e-12);
    }

    #[test]
    fn endogenous_growth_stays_inside_the_band(
        x_star in 0.05f64..=1.0,
        frac in 0.0f64..=1.0,
        g_f in 0.0f64..=1.0,
        delta_s in -2.0f64..=2.0,
        literal in proptest::bool::ANY,
    ) {
        let x = frac * x_star;
        let application = if literal {
            EndoApplication::Literal
        } else {
            EndoApplication::Increment
        };
        let next = grow_endogenous(x, g_f, x_star, delta_s, application);
        prop_assert!((0.0..=x_star + 1e-12).contains(&next), "left [0, {x_star}]: {next}");
        if application == EndoApplication::Increment {
            // A poor perception can stall growth but never reverse it.
            prop_assert!(next >= x - 1e-12, "increment mode shrank: {x} -> {next}");
        }
    }

    #[test]
    fn lambda_is_bounded_and_falls_with_the_share(
        y1 in 0.0f64..=1.0,
        y2 in 0.0f64..=1.0,
        lambda_bar in 0.01f64..=1.0,
        g_lambda in 0.0f64..=60.0,
        y_m in 0.0f64..=1.0,
        fixed in proptest::bool::ANY,
    ) {
        let cfg = DynamicsConfig {
            lambda_mode: if fixed { LambdaMode::Fixed } else { LambdaMode::SizeDependent },
            lambda_bar,
            g_lambda,
            y_m,
            ..DynamicsConfig::default()
        };
        for y in [y1, y2] {
            let l = lambda_schedule(y, &cfg);
            prop_assert!((0.0..=lambda_bar + 1e-12).contains(&l), "lambda {l} outside [0, {lambda_bar}]");
        }
        if fixed {
            prop_assert_eq!(lambda_schedule(y1, &cfg), lambda_bar);
        } else {
            let (lo, hi) = if y1 <= y2 { (y1, y2) } else { (y2, y1) };
            prop_assert!(
                lambda_schedule(lo, &cfg) >= lambda_schedule(hi, &cfg) - 1e-12,
                "schedule rose between y={lo} and y={hi}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn retirement_balances_the_books(
        n in 20usize..=120,
        share in share_strategy(),
        retire_rate in 0.0f64..=1.0,
        seed in any::<u64>(),
    ) {
        let (_, mut state) = build_state(n, 3, share, seed);
        let sizes_before = state.sizes().to_vec();
        let occ_before: Vec<u32> = (0..n).map(|i| state.occupied(i)).collect();
        let (tf, tm, ta) = (state.total_f(), state.total_m(), state.total_occupied());

        let mut rng = run_rng(seed, 1);
        let vac = retire(&mut state, retire_rate, &mut rng).unwrap();

        prop_assert_eq!(state.sizes(), &sizes_before[..]);
        prop_assert_eq!(vac.per_firm.iter().map(|&v| v as u64).sum::<u64>(), vac.total as u64);
        prop_assert_eq!(vac.retired_f as u64 + vac.retired_m as u64, vac.total as u64);
        prop_assert_eq!(state.total_occupied() + vac.total as u64, ta);
        prop_assert_eq!(state.total_f() + vac.retired_f as u64, tf);
        prop_assert_eq!(state.total_m() + vac.retired_m as u64, tm);
        for i in 0..n {
            prop_assert!(vac.per_firm[i] <= occ_before[i]);
        }
        if retire_rate == 1.0 {
            prop_assert_eq!(state.total_occupied(), 0);
        }
        if retire_rate == 0.0 {
            prop_assert_eq!(vac.total, 0);
        }
    }

    #[test]
    fn assignment_fills_every_seat_with_the_rounded_f_count(
        n in 20usize..=120,
        share in share_strategy(),
        retire_rate in 0.05f64..=1.0,
        x_next in 0.0f64..=1.0,
        lambda in 0.0f64..=1.0,
        beta in 0.0f64..=5.0,
        seed in any::<u64>(),
    ) {
        let (graph, mut state) = build_state(n, 3, share, seed);
        let seats = state.total_seats();
        let mut rng = run_rng(seed, 2);
        let vac = retire(&mut state, retire_rate, &mut rng).unwrap();
        let f_after_retire = state.total_f();

        assign_vacancies(&mut state, &graph, &vac, x_next, lambda, beta, &mut rng).unwrap();

        let n_f = (x_next * vac.total as f64).round() as u64;
        prop_assert_eq!(state.total_occupied(), seats, "boards not full again");
        prop_assert_eq!(state.total_f(), f_after_retire + n_f);
        for i in 0..n {
            prop_assert!(state.f_count(i) + state.m_count(i) == state.size(i));
        }
    }

    #[test]
    fn a_full_board_stays_full_through_steps(
        n in 20usize..=120,
        share in share_strategy(),
        retire_rate in 0.0f64..=1.0,
        g_f in 0.0f64..=0.5,
        endogenous in proptest::bool::ANY,
        fixed_lambda in proptest::bool::ANY,
        delta_s_pre in -1.5f64..=1.5,
        seed in any::<u64>(),
    ) {
        let (graph, mut state) = build_state(n, 3, share, seed);
        let seats = state.total_seats();
        let cfg = DynamicsConfig {
            retire_rate,
            g_f,
            growth_mode: if endogenous { GrowthMode::Endogenous } else { GrowthMode::Exogenous },
            lambda_mode: if fixed_lambda { LambdaMode::Fixed } else { LambdaMode::SizeDependent },
            ..DynamicsConfig::default()
        };
        let mut inflow = InflowState { x: 0.02 };
        let mut rng = run_rng(seed, 3);
        let mut prev_x = inflow.x;
        for _ in 0..3 {
            let rep = step(&mut state, &graph, &mut inflow, &cfg, delta_s_pre, &mut rng).unwrap();
            prop_assert_eq!(state.total_occupied(), seats);
            prop_assert!((0.0..=1.0).contains(&state.share_f()));
            prop_assert!((0.0..=cfg.lambda_bar + 1e-12).contains(&rep.lambda_used));
            prop_assert_eq!(rep.retired_f as u64 + rep.retired_m as u64, rep.vacancies as u64);
            prop_assert!((0.0..=cfg.target_share + 1e-12).contains(&inflow.x));
            if cfg.growth_mode == GrowthMode::Exogenous {
                prop_assert!(inflow.x >= prev_x - 1e-12, "exogenous inflow fell");
            }
            prev_x = inflow.x;
        }
    }

    #[test]
    fn a_step_is_a_pure_function_of_the_seed(
        n in 20usize..=80,
        share in 0.0f64..=1.0,
        endogenous in proptest::bool::ANY,
        seed in any::<u64>(),
    ) {
        let (graph, mut a) = build_state(n, 3, share, seed);
        let mut b = a.clone();
        let cfg = DynamicsConfig {
            growth_mode: if endogenous { GrowthMode::Endogenous } else { GrowthMode::Exogenous },
            ..DynamicsConfig::default()
        };
        let (mut ia, mut ib) = (InflowState { x: 0.02 }, InflowState { x: 0.02 });
        let (mut ra, mut rb) = (run_rng(seed, 4), run_rng(seed, 4));
        for _ in 0..3 {
            let rep_a = step(&mut a, &graph, &mut ia, &cfg, 0.1, &mut ra).unwrap();
            let rep_b = step(&mut b, &graph, &mut ib, &cfg, 0.1, &mut rb).unwrap();
            prop_assert_eq!(rep_a, rep_b);
        }
        prop_assert_eq!(a, b);
        prop_assert_eq!(ia, ib);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn generated_graphs_are_simple_and_connected(
        n in 12usize..=100,
        m in 1usize..=4,
        h in 0.0f64..=1.0,
        f_a in 0.0f64..=1.0,
        seed in any::<u64>(),
    ) {
        let mut rng = run_rng(seed, 0);
        assert_simple_graph(&gen_ba(n, m, &mut rng).unwrap(), n, m);

        let mut rng = run_rng(seed, 1);
        let fitness: Vec<f64> = (0..n).map(|i| 0.5 + (i % 7) as f64).collect();
        assert_simple_graph(&gen_fitness_ba(n, m, &fitness, &mut rng).unwrap(), n, m);

        let mut rng = run_rng(seed, 2);
        let (graph, labels) = gen_homophily_ba(n, m, f_a, h, &mut rng).unwrap();
        assert_simple_graph(&graph, n, m);
        prop_assert_eq!(labels.len(), n);
        prop_assert!((0.0..=1.0).contains(&labels.f_a()));
    }

    #[test]
    fn coupled_sizes_are_a_degree_monotone_permutation(
        n in 10usize..=100,
        seed in any::<u64>(),
    ) {
        let mut rng = run_rng(seed, 0);
        let graph = gen_ba(n, 3, &mut rng).unwrap();
        let raw = sample_board_sizes(n, 12.5, 20.6, 3, &mut rng).unwrap();
        let coupled = couple_sizes_to_degrees(&graph, &raw).unwrap();

        let mut sorted_raw = raw.clone();
        let mut sorted_coupled = coupled.clone();
        sorted_raw.sort_unstable();
        sorted_coupled.sort_unstable();
        prop_assert_eq!(sorted_raw, sorted_coupled, "sizes not a permutation");

        for i in 0..n {
            for j in 0..n {
                if graph.degree(i) > graph.degree(j) {
                    prop_assert!(
                        coupled[i] >= coupled[j],
                        "degree {} got size {} but degree {} got {}",
                        graph.degree(i), coupled[i], graph.degree(j), coupled[j]
                    );
                }
            }
        }
    }

    #[test]
    fn sampled_board_sizes_respect_the_floor(
        n in 1usize..=300,
        mean in 4.0f64..=25.0,
        var in 0.0f64..=40.0,
        min in 1u32..=4,
        seed in any::<u64>(),
    ) {
        let mut rng = run_rng(seed, 0);
        let sizes = sample_board_sizes(n, mean, var, min, &mut rng).unwrap();
        prop_assert_eq!(sizes.len(), n);
        prop_assert!(sizes.iter().all(|&s| s >= min));
    }

    #[test]
    fn init_places_the_exact_rounded_count(
        n in 10usize..=120,
        share in share_strategy(),
        gamma in 0.0f64..0.99,
        biased in proptest::bool::ANY,
        seed in any::<u64>(),
    ) {
        let mut rng = run_rng(seed, 0);
        let graph = gen_ba(n, 3, &mut rng).unwrap();
        let raw = sample_board_sizes(n, 12.5, 20.6, 3, &mut rng).unwrap();
        let sizes = couple_sizes_to_degrees(&graph, &raw).unwrap();
        let cfg = InitConfig {
            mode: if biased { InitMode::Biased } else { InitMode::Unbiased },
            gamma,
            initial_share: share,
        };
        let state = init(&sizes, &graph, &cfg, &mut rng).unwrap();

        let seats = state.total_seats();
        prop_assert_eq!(state.total_occupied(), seats);
        prop_assert_eq!(state.total_f(), (share * seats as f64).round() as u64);
        for i in 0..n {
            prop_assert!(state.f_count(i) <= state.size(i));
        }
    }

    #[test]
    fn centrality_is_positive_and_normalized(
        n in 10usize..=100,
        m in 2usize..=4,
        seed in any::<u64>(),
    ) {
        let mut rng = run_rng(seed, 0);
        let graph = gen_ba(n, m, &mut rng).unwrap();
        let scores = eigencentrality(&graph, 1e-12, 10_000).unwrap();
        prop_assert_eq!(scores.len(), n);
        prop_assert!(scores.scores().iter().all(|&s| s > 0.0 && s <= 1.0));
        prop_assert_eq!(scores.scores().iter().cloned().fold(f64::MIN, f64::max), 1.0);
    }

    #[test]
    fn homophily_metric_is_a_bounded_correlation(
        n in 20usize..=120,
        share in share_strategy(),
        seed in any::<u64>(),
    ) {
        let (graph, state) = build_state(n, 3, share, seed);
        let r = network_homophily(&state, &graph);
        prop_assert!(r.is_finite());
        prop_assert!((-1.0..=1.0).contains(&r), "correlation out of range: {r}");
    }

    #[test]
    fn perceptions_decompose_by_observer_group(
        n in 20usize..=120,
        share in share_strategy(),
        seed in any::<u64>(),
    ) {
        let (graph, state) = build_state(n, 3, share, seed);
        let (pf, pm, pa) = perception_all_observers(&state, &graph, false);
        let (tf, tm, ta) = (state.total_f() as f64, state.total_m() as f64, state.total_occupied() as f64);
        let lhs = tf * pf.unwrap_or(0.0) + tm * pm.unwrap_or(0.0);
        let rhs = ta * pa.expect("boards start full");
        prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs().max(1.0), "{lhs} != {rhs}");
    }

    #[test]
    fn representation_bins_are_finite_and_complete(
        n in 20usize..=120,
        share in share_strategy(),
        n_bins in 1usize..=12,
        seed in any::<u64>(),
    ) {
        let (graph, state) = build_state(n, 3, share, seed);
        let scores = eigencentrality(&graph, 1e-10, 10_000).unwrap();
        let bins = representation_bins(&state, &scores, n_bins);
        prop_assert_eq!(bins.len(), n_bins);
        prop_assert!(bins.iter().all(|r| r.is_finite() && *r >= 0.0));
        if n_bins == 1 {
            let expect = if state.total_f() == 0 { 0.0 } else { 1.0 };
            prop_assert!((bins[0] - expect).abs() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn tail_fit_lands_in_the_searchable_range(
        n in 600usize..=1200,
        k_min in 4u32..=8,
        seed in any::<u64>(),
    ) {
        let mut rng = run_rng(seed, 0);
        let graph = gen_ba(n, 3, &mut rng).unwrap();
        let alpha = fit_tail_exponent(&graph.degrees(), k_min).unwrap();
        prop_assert!(alpha.is_finite());
        prop_assert!(alpha > 1.0 && alpha < 12.0, "alpha {alpha} escaped the bracket");
    }
}
