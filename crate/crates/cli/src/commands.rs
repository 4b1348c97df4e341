use std::path::{Path, PathBuf};

use swapsched::io::{
    format_real, generate_instance, generate_sim_scenario, load_scenario, save_metrics, save_report, save_scenario,
    GenParams, ScenarioDocument, SimGenParams,
};
use swapsched::model::{Mode, ProblemInstance};
use swapsched::sim::{format_log, run_simulation, SimScenario};
use swapsched::solvers::{
    solve_anytime, solve_exact, solve_genetic, solve_greedy, solve_local_search, ExactLimits, InnerSolver,
    SolveReport,
};

use crate::{read, write, CompareArgs, Failure, GenArgs, KindArg, PolicyPair, SimulateArgs, SolveArgs, SolverChoice, ValidateArgs};

/// Budget for local search and anytime runs when none is given.
const DEFAULT_BUDGET_MS: u64 = 1000;

pub const CSV_HEADER: [&str; 6] = ["solver", "budget_ms", "value", "ratio", "elapsed_ms", "abandoned"];

fn load(path: &Path) -> Result<ScenarioDocument, Failure> {
    let document = load_scenario(&read(path)?)?;
    for warning in document.warnings() {
        eprintln!("warning: {warning}");
    }
    Ok(document)
}

fn load_instance(path: &Path) -> Result<ProblemInstance, Failure> {
    match load(path)? {
        ScenarioDocument::Optimize(instance) => Ok(instance),
        ScenarioDocument::Simulate(_) => Err(Failure(format!("{} is a simulate scenario; expected kind optimize", path.display()))),
    }
}

fn run(choice: &SolverChoice, instance: &ProblemInstance, mode: Mode, budget_ms: u64, seed: u64) -> Result<SolveReport, Failure> {
    let budget = budget_ms as f64;
    let report = match choice {
        SolverChoice::Direct(InnerSolver::Greedy) => solve_greedy(instance, mode),
        SolverChoice::Direct(InnerSolver::Local) => solve_local_search(instance, mode, budget, seed),
        SolverChoice::Direct(InnerSolver::Genetic(params)) => solve_genetic(instance, mode, params, seed),
        SolverChoice::Direct(InnerSolver::Exact) => solve_exact(instance, mode, ExactLimits::default()),
        SolverChoice::Anytime(inner) => solve_anytime(inner, instance, mode, budget, seed),
    };
    Ok(report?)
}

fn summary(report: &SolveReport) -> String {
    format!(
        "solver={} value={} ratio={} abandoned={} elapsed_ms={}",
        report.solver,
        format_real(report.value),
        format_real(report.ratio),
        report.abandoned(),
        format_real(report.elapsed_ms)
    )
}

pub fn solve(args: SolveArgs) -> Result<(), Failure> {
    let instance = load_instance(&args.scenario)?;
    let report = run(&args.solver, &instance, args.mode.into(), args.budget_ms.unwrap_or(DEFAULT_BUDGET_MS), args.seed)?;
    write(args.out.as_deref(), &save_report(&report))?;
    // Keep standard output clean for the report when it goes there.
    if args.out.is_some() {
        println!("{}", summary(&report));
    } else {
        eprintln!("{}", summary(&report));
    }
    Ok(())
}

pub fn compare(args: CompareArgs) -> Result<(), Failure> {
    let instance = load_instance(&args.scenario)?;
    let mode: Mode = args.mode.into();
    let mut rows = Vec::new();
    for choice in &args.solver {
        for &budget in &args.budget_ms {
            rows.push((choice.name(), budget, run(choice, &instance, mode, budget, args.seed)?));
        }
    }
    rows.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));

    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(CSV_HEADER)?;
    for (name, budget, report) in &rows {
        out.write_record([
            name.clone(),
            budget.to_string(),
            format_real(report.value),
            format_real(report.ratio),
            format_real(report.elapsed_ms),
            report.abandoned().to_string(),
        ])?;
    }
    let bytes = out.into_inner().map_err(|e| Failure(e.to_string()))?;
    write(args.csv.as_deref(), &String::from_utf8(bytes)?)
}

/// `<stem>.<label>.<ext>` next to `path`.
fn labelled(path: &Path, label: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}.{label}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{label}"),
    };
    path.with_file_name(name)
}

fn policy_label(scenario: &SimScenario) -> String {
    let name = |v: serde_json::Value| v.as_str().unwrap_or_default().to_string();
    format!(
        "{}-{}",
        name(serde_json::to_value(scenario.admission_policy).unwrap_or_default()),
        name(serde_json::to_value(scenario.assignment_policy).unwrap_or_default())
    )
}

pub fn simulate(args: SimulateArgs) -> Result<(), Failure> {
    let mut base = match load(&args.scenario)? {
        ScenarioDocument::Simulate(scenario) => scenario,
        ScenarioDocument::Optimize(_) => {
            return Err(Failure(format!("{} is an optimize scenario; expected kind simulate", args.scenario.display())))
        }
    };
    if let Some(ticks) = args.ticks {
        base.horizon = ticks;
    }
    let variants: Vec<SimScenario> = if args.policies.is_empty() {
        vec![base]
    } else {
        args.policies
            .iter()
            .map(|&PolicyPair { admission, assignment }| SimScenario {
                admission_policy: admission,
                assignment_policy: assignment.unwrap_or(base.assignment_policy),
                ..base.clone()
            })
            .collect()
    };
    let several = variants.len() > 1;
    for scenario in &variants {
        let (metrics, events) = run_simulation(scenario, args.seed)?;
        let label = policy_label(scenario);
        let target = |path: &Option<PathBuf>| path.as_ref().map(|p| if several { labelled(p, &label) } else { p.clone() });
        let metrics_text = save_metrics(&metrics);
        if several || args.out.is_some() {
            println!(
                "policies={label} total={} completed={} failed_deadline={} terminated={} in_flight={} offloaded={}",
                metrics.total_jobs,
                metrics.completed,
                metrics.failed_deadline,
                metrics.terminated_at_admission,
                metrics.in_flight_at_horizon,
                metrics.offloaded
            );
        }
        if let Some(path) = target(&args.out) {
            write(Some(&path), &metrics_text)?;
        } else if !several {
            write(None, &metrics_text)?;
        }
        if let Some(path) = target(&args.log) {
            write(Some(&path), &format_log(&events))?;
        }
    }
    Ok(())
}

pub fn generate(args: GenArgs) -> Result<(), Failure> {
    let document = match args.kind {
        KindArg::Optimize => ScenarioDocument::Optimize(generate_instance(&GenParams {
            missions: args.missions,
            slots: args.slots,
            seed: args.seed,
            ..GenParams::default()
        })?),
        KindArg::Simulate => ScenarioDocument::Simulate(generate_sim_scenario(&SimGenParams {
            nodes: args.nodes,
            jobs: args.jobs,
            horizon: args.ticks,
            seed: args.seed,
            ..SimGenParams::default()
        })?),
    };
    write(args.out.as_deref(), &save_scenario(&document))
}

pub fn validate(args: ValidateArgs) -> Result<(), Failure> {
    match load(&args.scenario)? {
        ScenarioDocument::Optimize(instance) => {
            println!("ok: optimize scenario with {} missions over {} slots", instance.len(), instance.slots())
        }
        ScenarioDocument::Simulate(scenario) => println!(
            "ok: simulate scenario with {} nodes, {} jobs, horizon {}",
            scenario.nodes.len(),
            scenario.jobs.len(),
            scenario.horizon
        ),
    }
    Ok(())
}
