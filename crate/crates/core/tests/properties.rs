use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use swapsched::io::{generate_instance, generate_sim_scenario, GenParams, SimGenParams};
use swapsched::model::{
    check_feasibility, mission_success, normalized_weights, objective, usage_profile, Mode, ProblemInstance, Schedule, CAPACITY_TOLERANCE,
};
use swapsched::sim::{run_simulation, AdmissionPolicy, AssignmentPolicy, EventKind, NodeSpec, Zone};
use swapsched::solvers::{
    brute_force_oracle, solve_anytime, solve_exact, solve_genetic, solve_greedy, solve_local_search, ExactLimits,
    GaParams, InnerSolver, SolveReport,
};

fn instance_params() -> impl Strategy<Value = GenParams> {
    (1usize..=5, 1usize..=8, 0u32..=2, 0.0f64..=0.6, any::<u64>()).prop_map(|(missions, slots, low, density, seed)| {
        GenParams {
            missions,
            slots,
            capacity: (low, low + 3),
            work: (1, 7),
            fraction: (0.2, 1.0),
            rate_cap: (1, 3),
            rating: (1, 9),
            interaction_density: density,
            interaction_max: 1.0,
            seed,
        }
    })
}

fn tiny_params() -> impl Strategy<Value = GenParams> {
    (1usize..=2, 1usize..=3, any::<u64>()).prop_map(|(missions, slots, seed)| GenParams {
        missions,
        slots,
        capacity: (0, 3),
        work: (1, 4),
        fraction: (0.2, 1.0),
        rate_cap: (1, 3),
        rating: (1, 6),
        interaction_density: 0.5,
        interaction_max: 1.5,
        seed,
    })
}

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Raw), Just(Mode::Rated)]
}

fn all_solvers(instance: &ProblemInstance, mode: Mode, seed: u64) -> Vec<SolveReport> {
    vec![
        solve_greedy(instance, mode).unwrap(),
        solve_local_search(instance, mode, 5_000.0, seed).unwrap(),
        solve_genetic(instance, mode, &GaParams { generations: 20, ..GaParams::default() }, seed).unwrap(),
        solve_exact(instance, mode, ExactLimits::default()).unwrap(),
    ]
}

/// Independent restatement of the feasibility rules.
fn naive_feasible(instance: &ProblemInstance, schedule: &Schedule, mode: Mode) -> bool {
    let ratings = instance.ratings().ratings();
    let top = ratings.iter().cloned().fold(f64::MIN, f64::max);
    for (i, m) in instance.missions().iter().enumerate() {
        let row = &schedule.rows()[i];
        let mut total = 0;
        for (t, &a) in row.iter().enumerate() {
            if a > 0 && (t < m.release || t >= m.deadline) {
                return false;
            }
            if a > m.rate_cap {
                return false;
            }
            total += a;
        }
        if total > m.total_work {
            return false;
        }
    }
    for t in 0..instance.slots() {
        let mut usage = instance.platform().at(t);
        for i in 0..instance.len() {
            let w = if mode == Mode::Raw { 1.0 } else { ratings[i] / top };
            usage -= w * f64::from(schedule.rows()[i][t]);
            for j in i + 1..instance.len() {
                if schedule.rows()[i][t] > 0 && schedule.rows()[j][t] > 0 {
                    usage -= instance.interaction().matrix()[i][j];
                }
            }
        }
        if usage < -CAPACITY_TOLERANCE {
            return false;
        }
    }
    true
}

fn schedule_for(instance: &ProblemInstance, cells: &[u32]) -> Schedule {
    let slots = instance.slots();
    Schedule::from_rows((0..instance.len()).map(|i| (0..slots).map(|t| cells[(i * slots + t) % cells.len()]).collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn every_solver_returns_feasible_schedules(params in instance_params(), mode in mode(), seed in any::<u64>()) {
        let instance = generate_instance(&params).unwrap();
        for report in all_solvers(&instance, mode, seed) {
            let verdict = check_feasibility(&instance, &report.schedule, mode).unwrap();
            prop_assert!(verdict.feasible, "{} violations: {:?}", report.solver, verdict.violations);
            prop_assert!(naive_feasible(&instance, &report.schedule, mode), "{}", report.solver);
            let obj = objective(&instance, &report.schedule).unwrap();
            prop_assert_eq!(obj.value, report.value);
            prop_assert_eq!(mission_success(&instance, &report.schedule).unwrap(), report.success);
        }
    }

    #[test]
    fn exact_dominates_heuristics(params in instance_params(), mode in mode(), seed in any::<u64>()) {
        let instance = generate_instance(&params).unwrap();
        let reports = all_solvers(&instance, mode, seed);
        let exact = reports.last().unwrap();
        prop_assert!(exact.optimal);
        for report in &reports {
            prop_assert!(report.value <= exact.value, "{} {} > {}", report.solver, report.value, exact.value);
            prop_assert!(report.ratio <= 1.0);
        }
        prop_assert!(reports[1].value >= reports[0].value, "local search fell below its greedy start");
    }

    #[test]
    fn feasibility_checkers_agree(params in instance_params(), mode in mode(), cells in prop::collection::vec(0u32..3, 1..40)) {
        let instance = generate_instance(&params).unwrap();
        let schedule = schedule_for(&instance, &cells);
        let verdict = check_feasibility(&instance, &schedule, mode).unwrap();
        prop_assert_eq!(verdict.feasible, naive_feasible(&instance, &schedule, mode));
        prop_assert_eq!(verdict.feasible, verdict.violations.is_empty());
    }

    #[test]
    fn success_is_monotone_in_allocation(params in instance_params(), cells in prop::collection::vec(0u32..3, 1..40), extra in prop::collection::vec(0u32..2, 1..40)) {
        let instance = generate_instance(&params).unwrap();
        let base = schedule_for(&instance, &cells);
        let mut more = base.clone();
        for i in 0..instance.len() {
            for t in 0..instance.slots() {
                more.set(i, t, base.get(i, t) + extra[(i * 7 + t) % extra.len()]);
            }
        }
        let (before, after) = (mission_success(&instance, &base).unwrap(), mission_success(&instance, &more).unwrap());
        for (b, a) in before.iter().zip(&after) {
            prop_assert!(!b || *a);
        }
    }

    #[test]
    fn rating_scale_keeps_success_sets(params in instance_params(), mode in mode(), seed in any::<u64>(), power in -4i32..8) {
        let instance = generate_instance(&params).unwrap();
        let scaled = instance.scale_ratings(2f64.powi(power)).unwrap();
        let original = all_solvers(&instance, mode, seed);
        let rescaled = all_solvers(&scaled, mode, seed);
        for (a, b) in original.iter().zip(&rescaled) {
            prop_assert_eq!(&a.success, &b.success, "{}", a.solver);
            prop_assert_eq!(&a.schedule, &b.schedule, "{}", a.solver);
        }
        let raw = usage_profile(&instance, &original[0].schedule, Mode::Rated).unwrap();
        let raw_scaled = usage_profile(&scaled, &original[0].schedule, Mode::Rated).unwrap();
        prop_assert_eq!(raw, raw_scaled);
    }

    #[test]
    fn rating_swap_permutes_the_multiset(params in instance_params(), i in 0usize..5, j in 0usize..5) {
        let instance = generate_instance(&params).unwrap();
        let (i, j) = (i % instance.len(), j % instance.len());
        let swapped = instance.swap_ratings(i, j).unwrap();
        let sorted = |inst: &ProblemInstance| {
            let mut r = inst.ratings().ratings().to_vec();
            r.sort_by(f64::total_cmp);
            r
        };
        prop_assert_eq!(sorted(&instance), sorted(&swapped));
        prop_assert_eq!(swapped.ratings().rating(i), instance.ratings().rating(j));
        prop_assert_eq!(swapped.ratings().rating(j), instance.ratings().rating(i));
        prop_assert_eq!(swapped.ratings().max(), instance.ratings().max());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn exact_matches_oracle(params in tiny_params(), mode in mode()) {
        let instance = generate_instance(&params).unwrap();
        let oracle = brute_force_oracle(&instance, mode).unwrap();
        let exact = solve_exact(&instance, mode, ExactLimits::default()).unwrap();
        prop_assert_eq!(exact.value, oracle.value);
        prop_assert!(exact.headroom <= oracle.headroom + 1e-9);
    }

    #[test]
    fn harder_fraction_never_helps(params in instance_params(), mode in mode(), which in 0usize..5, step in 0.05f64..1.0) {
        let instance = generate_instance(&GenParams { missions: params.missions.min(4), slots: params.slots.min(6), ..params }).unwrap();
        let i = which % instance.len();
        let mut mission = instance.mission(i).clone();
        mission.fraction = (mission.fraction + step).min(1.0);
        let harder = instance.with_mission(i, mission).unwrap();
        let before = solve_exact(&instance, mode, ExactLimits::default()).unwrap().value;
        let after = solve_exact(&harder, mode, ExactLimits::default()).unwrap().value;
        prop_assert!(after <= before);
    }

    #[test]
    fn less_capacity_never_helps(params in instance_params(), mode in mode(), slot in 0usize..8, cut in 1u32..4) {
        let instance = generate_instance(&GenParams { missions: params.missions.min(4), slots: params.slots.min(6), ..params }).unwrap();
        let t = slot % instance.slots();
        let mut capacity = instance.platform().capacity().to_vec();
        capacity[t] = (capacity[t] - f64::from(cut)).max(0.0);
        let poorer = instance.with_capacity(capacity).unwrap();
        let before = solve_exact(&instance, mode, ExactLimits::default()).unwrap().value;
        let after = solve_exact(&poorer, mode, ExactLimits::default()).unwrap().value;
        prop_assert!(after <= before);
    }
}

fn sim_params() -> impl Strategy<Value = SimGenParams> {
    (1usize..=4, 0usize..=30, 1u64..=30, any::<bool>(), any::<bool>(), 0.0f64..=1.0, any::<u64>()).prop_map(
        |(nodes, jobs, horizon, offload, earliest, hard_share, seed)| SimGenParams {
            nodes,
            jobs,
            horizon,
            hard_share,
            admission: if offload { AdmissionPolicy::Offload } else { AdmissionPolicy::Terminate },
            assignment: if earliest { AssignmentPolicy::EarliestFinish } else { AssignmentPolicy::PriorityFirst },
            seed,
            ..SimGenParams::default()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn simulator_conserves_jobs(params in sim_params()) {
        let scenario = generate_sim_scenario(&params).unwrap();
        let (metrics, log) = run_simulation(&scenario, params.seed).unwrap();
        prop_assert_eq!(metrics.total_jobs, scenario.jobs.len() as u64);
        prop_assert_eq!(metrics.dispositions(), metrics.total_jobs);
        prop_assert!(metrics.offloaded <= metrics.total_jobs);

        let mut terminal: BTreeMap<&str, usize> = BTreeMap::new();
        for event in &log {
            if matches!(event.kind, EventKind::Complete | EventKind::Fail | EventKind::Terminate) {
                *terminal.entry(event.job.as_str()).or_default() += 1;
            }
        }
        prop_assert!(terminal.values().all(|&n| n == 1), "a job was settled twice");
        let settled = metrics.completed + metrics.failed_deadline + metrics.terminated_at_admission;
        prop_assert_eq!(terminal.len() as u64, settled);
        for (id, busy) in &metrics.utilization {
            prop_assert!((0.0..=1.0).contains(busy), "node {} utilization {}", id, busy);
        }
    }

    #[test]
    fn simulator_is_deterministic(params in sim_params()) {
        let scenario = generate_sim_scenario(&params).unwrap();
        let first = run_simulation(&scenario, params.seed).unwrap();
        let second = run_simulation(&scenario, params.seed).unwrap();
        prop_assert_eq!(first, second);
    }

    #[test]
    fn hard_jobs_never_complete_late(params in sim_params()) {
        let scenario = generate_sim_scenario(&params).unwrap();
        let (_, log) = run_simulation(&scenario, params.seed).unwrap();
        let deadlines: BTreeMap<&str, Option<u64>> =
            scenario.jobs.iter().map(|j| (j.id.as_str(), j.hard_deadline())).collect();
        let mut completed = BTreeSet::new();
        for event in log.iter().filter(|e| e.kind == EventKind::Complete) {
            let finish: u64 = event.detail.iter().find(|(k, _)| *k == "finish").unwrap().1.parse().unwrap();
            prop_assert_eq!(finish, event.tick + 1);
            if let Some(deadline) = deadlines[event.job.as_str()] {
                prop_assert!(finish <= deadline, "{} finished at {} past {}", event.job, finish, deadline);
            }
            prop_assert!(completed.insert(event.job.clone()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn preemption_never_loses_work(params in sim_params()) {
        let scenario = generate_sim_scenario(&SimGenParams { labels: 4, ..params }).unwrap();
        let (_, log) = run_simulation(&scenario, params.seed).unwrap();
        let work: BTreeMap<&str, u32> = scenario.jobs.iter().map(|j| (j.id.as_str(), j.work)).collect();
        let mut last: BTreeMap<&str, u32> = BTreeMap::new();
        for event in log.iter().filter(|e| e.kind == EventKind::Preempt) {
            let remaining: u32 = event.detail.iter().find(|(k, _)| *k == "remaining").unwrap().1.parse().unwrap();
            let ceiling = last.get(event.job.as_str()).copied().unwrap_or(work[event.job.as_str()]);
            prop_assert!(remaining <= ceiling, "{} went from {} to {} remaining", event.job, ceiling, remaining);
            last.insert(event.job.as_str(), remaining);
        }
    }

    #[test]
    fn an_extra_node_never_costs_completions(params in sim_params(), rate in 1u32..=4, latency in 0u64..=3, rear in any::<bool>()) {
        let base = generate_sim_scenario(&SimGenParams { assignment: AssignmentPolicy::EarliestFinish, ..params }).unwrap();
        let mut bigger = base.clone();
        bigger.nodes.push(NodeSpec { id: "extra".into(), rate, link_latency: latency, zone: if rear { Zone::Rear } else { Zone::Hostile } });
        let (before, _) = run_simulation(&base, params.seed).unwrap();
        let (after, _) = run_simulation(&bigger, params.seed).unwrap();
        prop_assert!(after.completed >= before.completed, "{} -> {}", before.completed, after.completed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn anytime_reports_keep_their_contract(params in instance_params(), mode in mode(), seed in any::<u64>(), inner in 0usize..4) {
        let instance = generate_instance(&params).unwrap();
        let inner = [InnerSolver::Greedy, InnerSolver::Local, InnerSolver::Genetic(GaParams::default()), InnerSolver::Exact][inner].clone();
        let report = solve_anytime(&inner, &instance, mode, 20.0, seed).unwrap();
        prop_assert!(report.checkpoints.windows(2).all(|w| w[0] < w[1]));
        prop_assert!((0.0..=1.0).contains(&report.ratio));
        prop_assert!(report.value <= report.upper_bound);
        if report.optimal {
            prop_assert_eq!(report.ratio, 1.0);
        }
        prop_assert!(check_feasibility(&instance, &report.schedule, mode).unwrap().feasible);
    }

    #[test]
    fn reports_are_reproducible(params in instance_params(), mode in mode(), seed in any::<u64>()) {
        let instance = generate_instance(&params).unwrap();
        for (mut a, mut b) in all_solvers(&instance, mode, seed).into_iter().zip(all_solvers(&instance, mode, seed)) {
            a.elapsed_ms = 0.0;
            b.elapsed_ms = 0.0;
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn weights_ignore_rating_scale(ratings in prop::collection::vec(0.1f64..100.0, 1..8), k in 0.01f64..100.0, power in -8i32..8) {
        let base = normalized_weights(&ratings).unwrap();
        let scaled: Vec<f64> = ratings.iter().map(|r| r * k).collect();
        for (a, b) in base.iter().zip(normalized_weights(&scaled).unwrap()) {
            prop_assert!((a - b).abs() <= 1e-9 * a.abs());
        }
        let exact: Vec<f64> = ratings.iter().map(|r| r * 2f64.powi(power)).collect();
        prop_assert_eq!(base, normalized_weights(&exact).unwrap());
    }
}
