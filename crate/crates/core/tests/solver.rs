use naelab::formula::{emit_dimacs, parse_dimacs, random_instance, GeneratorMode};
use naelab::naesolve::{solve_nae, DlsStrategy, SolvePath, SolverConfig};
use naelab::oracle::brute_decide;
use naelab::scalar::rational;
use naelab::transform::{greedy_pairs, to_conjugate_instance};
use naelab::{Instance, Mode};

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let cfgs = [
        SolverConfig::default(),
        SolverConfig { nu: Some(rational(1, 1000)), ..Default::default() },
        SolverConfig { nu: Some(rational(3, 10)), ..Default::default() },
    ];
    for seed in 0..30u64 {
        let f = random_instance(14, 3, 30 + seed as usize, GeneratorMode::Uniform, seed).unwrap().instance;
        for cfg in &cfgs {
            let one = in_pool(1, || solve_nae(&f, cfg).unwrap());
            let four = in_pool(4, || solve_nae(&f, cfg).unwrap());
            assert_eq!(one, four, "seed {seed}");
        }
    }
}

#[test]
fn dimacs_round_trip_keeps_the_answer() {
    for seed in 0..20u64 {
        let f = random_instance(12, 4, 40, GeneratorMode::PlantedNae, seed).unwrap().instance;
        let g = parse_dimacs(&emit_dimacs(&f)).unwrap();
        assert_eq!(f, g);
        let r = solve_nae(&g, &SolverConfig::default()).unwrap();
        assert!(g.is_satisfied_by(r.outcome.assignment().unwrap(), Mode::Nae));
    }
}

#[test]
fn mixed_lengths_and_two_sat_path() {
    let f = Instance::from_dimacs_clauses(4, &[&[1, 2], &[-2, 3], &[3, 4], &[-1, -4]]).unwrap();
    let r = solve_nae(&f, &SolverConfig::default()).unwrap();
    assert_eq!(r.trace.path, SolvePath::TwoSat);
    assert_eq!(r.outcome.is_sat(), brute_decide(&f, Mode::Nae).unwrap().is_some());
    for seed in 0..40u64 {
        let f = naelab::formula::random_mixed_instance(11, &[2, 3, 5], 30, seed % 3 == 0, seed).unwrap().instance;
        let r = solve_nae(&f, &SolverConfig::default()).unwrap();
        assert_eq!(r.outcome.is_sat(), brute_decide(&f, Mode::Nae).unwrap().is_some(), "seed {seed}");
    }
}

#[test]
fn randomized_dls_never_claims_unsat_on_its_own() {
    let cfg = SolverConfig {
        nu: Some(rational(1, 1000)),
        dls_strategy: DlsStrategy::RandomizedWalk,
        walk_restarts: 5,
        ..Default::default()
    };
    for seed in 0..20u64 {
        let f = random_instance(10, 3, 40, GeneratorMode::Uniform, seed).unwrap().instance;
        let r = solve_nae(&f, &cfg).unwrap();
        if !r.outcome.is_sat() {
            assert_eq!(r.trace.path, SolvePath::DlsFallback);
        }
        assert_eq!(r.outcome.is_sat(), brute_decide(&f, Mode::Nae).unwrap().is_some());
    }
}

#[test]
fn greedy_pairs_are_maximal_and_disjoint() {
    for seed in 0..50u64 {
        let f = random_instance(15, 4, 20, GeneratorMode::Uniform, seed).unwrap().instance;
        let g = to_conjugate_instance(&f).unwrap();
        let p = greedy_pairs(&g);
        assert!(p.is_maximal_in(&g));
        assert_eq!(p.vars().len(), p.pairs().iter().map(|q| q.len()).sum::<usize>());
    }
}

#[test]
fn large_k_is_rejected() {
    let lits: Vec<i64> = (1..=17).collect();
    let f = Instance::from_dimacs_clauses(17, &[&lits]).unwrap();
    assert!(solve_nae(&f, &SolverConfig::default()).is_err());
}
