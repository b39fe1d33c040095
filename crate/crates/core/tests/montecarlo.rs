mod common;

use pursuit_core::chain::FixedStrategy;
use pursuit_core::graph::{complete, cycle, path};
use pursuit_core::montecarlo::{
    simulate_drunk_pursuit, simulate_random_cops, walk_deviation_check, Evader, Pursuer, SimOptions,
};
use pursuit_core::solver::cadr_solve;
use pursuit_core::{ConfigSpace, CopConfig, Exec, SolveOptions};

#[test]
fn optimal_policy_on_p3() {
    let g = path(3).unwrap();
    let sol = cadr_solve(&ConfigSpace::new(&g, 1).unwrap(), &SolveOptions::default()).unwrap();
    let (start, dct) = sol.optimal_start();
    let r = simulate_drunk_pursuit(
        &g,
        Pursuer::Feedback { policy: &sol.policy, start: &start },
        &SimOptions::new(1_000_000, 11),
    )
    .unwrap();
    assert!((r.mean - dct).abs() < 0.01, "{}", r.mean);
}

#[test]
fn fixed_sweep_on_p5() {
    let g = path(5).unwrap();
    let s = FixedStrategy::new(&g, FixedStrategy::path_sweep(5)).unwrap();
    let r = simulate_drunk_pursuit(&g, Pursuer::Fixed(&s), &SimOptions::new(1_000_000, 12)).unwrap();
    assert!((r.mean - 1.55).abs() < 0.01, "{}", r.mean);
}

#[test]
fn policies_match_solver_within_three_sigma() {
    for seed in 0..3 {
        let g = common::seeded_graph(600 + seed, 9, 0.25);
        let sol = cadr_solve(&ConfigSpace::new(&g, 1).unwrap(), &SolveOptions::default()).unwrap();
        let (start, dct) = sol.optimal_start();
        let r = simulate_drunk_pursuit(
            &g,
            Pursuer::Feedback { policy: &sol.policy, start: &start },
            &SimOptions::new(100_000, seed),
        )
        .unwrap();
        assert!((r.mean - dct).abs() <= 3.0 * r.stderr, "{} vs {dct} ± {}", r.mean, r.stderr);
    }
}

#[test]
fn random_cops_terminate_on_p5() {
    let g = path(5).unwrap();
    let mut opts = SimOptions::new(10_000, 13);
    opts.max_rounds = Some(10_000);
    let r = simulate_random_cops(&g, 1, Evader::MaxDistanceGreedy, &opts).unwrap();
    assert_eq!(r.censored, 0);
    assert!(r.mean > 0.0);
}

#[test]
fn random_cops_covering_every_vertex() {
    let g = cycle(6).unwrap();
    for evader in [Evader::MaxDistanceGreedy, Evader::UniformRandom] {
        let r = simulate_random_cops(&g, 6, evader, &SimOptions::new(500, 14)).unwrap();
        assert_eq!((r.mean, r.max, r.censored), (0.0, 0, 0));
    }
}

#[test]
fn k4_greedy_evader_capture_within_two_rounds() {
    // one cop: each round catches with probability 1/4, so P(T ≤ 2) = 7/16
    let g = complete(4).unwrap();
    let r = simulate_random_cops(&g, 1, Evader::MaxDistanceGreedy, &SimOptions::new(200_000, 15)).unwrap();
    let p = (r.histogram[0] + r.histogram[1] + r.histogram[2]) as f64 / r.trials as f64;
    let sigma = (7.0 / 16.0 * 9.0 / 16.0 / r.trials as f64).sqrt();
    assert!((p - 7.0 / 16.0).abs() < 3.0 * sigma, "{p}");
    // three cops miss the last vertex with probability (3/4)^3 per round
    let r = simulate_random_cops(&g, 3, Evader::MaxDistanceGreedy, &SimOptions::new(50_000, 16)).unwrap();
    let p1 = r.histogram[1] as f64 / r.trials as f64;
    let sigma = (37.0 / 64.0 * 27.0 / 64.0 / r.trials as f64).sqrt();
    assert_eq!(r.histogram[0], 0);
    assert!((p1 - 37.0 / 64.0).abs() < 3.0 * sigma, "{p1}");
}

#[test]
fn identical_seeds_reproduce_reports() {
    let g = cycle(9).unwrap();
    let sol = cadr_solve(&ConfigSpace::new(&g, 2).unwrap(), &SolveOptions::default()).unwrap();
    let start = CopConfig::new(vec![0, 4]);
    let run = |exec| {
        let mut opts = SimOptions::new(20_000, 77);
        opts.exec = exec;
        simulate_drunk_pursuit(&g, Pursuer::Feedback { policy: &sol.policy, start: &start }, &opts)
            .unwrap()
            .to_json()
    };
    assert_eq!(run(Exec::Sequential), run(Exec::Parallel));
    assert_eq!(run(Exec::default()), run(Exec::default()));
}

#[test]
fn walk_deviation_bound() {
    let p = walk_deviation_check(1000, 3.0, 20_000, 17, Exec::default()).unwrap();
    assert!(p <= 2.0 * 1000f64.powf(-1.25));
    assert_eq!(walk_deviation_check(4, 2.1, 100, 1, Exec::default()).unwrap(), 0.0);
}
