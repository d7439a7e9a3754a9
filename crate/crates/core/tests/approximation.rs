use naelab::approx::{
    cond_prob_complete, random_walk_repeat, reduce_solve, restarts_for, walk_success_probability, ApproxTrace,
    ExactEngine, ReduceOptions,
};
use naelab::formula::{count_satisfied, random_instance, GeneratorMode, PartialAssignment};
use naelab::oracle::brute_max;
use naelab::scalar::rational;
use naelab::{Clause, Mode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn restart_schedule_reaches_delta() {
    let delta = rational(7, 8);
    let mut ok = 0;
    let total = 20;
    for i in 0..total {
        let n = [8, 10, 12][i % 3];
        let f = random_instance(n, 3, 4 * n, GeneratorMode::Uniform, 100 + i as u64).unwrap().instance;
        let (opt, _) = brute_max(&f, Mode::Nae).unwrap();
        let p = walk_success_probability(3, 0.875, f.num_clauses(), opt, n);
        let restarts = restarts_for(20.0, p);
        let r = random_walk_repeat(&f, Mode::Nae, &delta, restarts, i as u64, Some(opt)).unwrap();
        ok += r.meets(&delta).unwrap() as usize;
    }
    assert!(ok as f64 >= 0.95 * total as f64, "{ok}/{total}");
}

#[test]
fn completion_never_loses_half() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for trial in 0..200u64 {
        let f = random_instance(12, 3, 30, GeneratorMode::Uniform, trial).unwrap().instance;
        let ve: Vec<u32> = (1..=12).filter(|_| rng.gen_bool(0.3)).collect();
        let fe: Vec<Clause> = f.clauses().iter().filter(|c| c.vars().any(|v| ve.contains(&v))).cloned().collect();
        let alpha1: PartialAssignment = (1..=12).filter(|v| !ve.contains(v)).map(|v| (v, rng.gen())).collect();
        let c = cond_prob_complete(&fe, &ve, &alpha1, Mode::Nae, None).unwrap();
        assert!(2 * c.satisfied >= fe.len());
        assert!(naelab::Rational::from_integer(c.satisfied.into()) >= c.initial_expectation);
    }
}

#[test]
fn completion_keeps_satisfied_clauses() {
    let fe = vec![Clause::from_dimacs(&[1, 2, 3]).unwrap(), Clause::from_dimacs(&[-1, 2, -3]).unwrap()];
    let alpha1: PartialAssignment = [(2, true), (3, false)].into_iter().collect();
    for seed in [None, Some(1), Some(9)] {
        assert_eq!(cond_prob_complete(&fe, &[1], &alpha1, Mode::Nae, seed).unwrap().satisfied, 2);
    }
}

#[test]
fn reduce_solve_engines_agree_at_t_zero() {
    for seed in 0..30u64 {
        let f = random_instance(11, 3, 40, GeneratorMode::Uniform, seed).unwrap().instance;
        let opt = brute_max(&f, Mode::Nae).unwrap().0;
        for engine in [ExactEngine::Auto, ExactEngine::Williams, ExactEngine::Oracle] {
            let opts = ReduceOptions { engine, ..Default::default() };
            let r = reduce_solve(&f, Mode::Nae, &rational(1, 1), &opts).unwrap();
            assert_eq!(r.achieved, opt);
        }
    }
}

#[test]
fn reduce_solve_sat_mode_and_trace() {
    for seed in 0..30u64 {
        let f = random_instance(10, 2, 25, GeneratorMode::Uniform, seed).unwrap().instance;
        let opts = ReduceOptions { t_override: Some(3), ..Default::default() };
        let r = reduce_solve(&f, Mode::Sat, &rational(9, 10), &opts).unwrap();
        assert_eq!(count_satisfied(&f, &r.assignment, Mode::Sat), r.achieved);
        let ApproxTrace::ReduceSolve { t, eliminated, steps, .. } = r.trace else { panic!() };
        assert_eq!((t, eliminated.len(), steps.len()), (3, 3, 3));
        assert!(steps.windows(2).all(|w| w[1].m_before == w[0].m_after));
    }
}
