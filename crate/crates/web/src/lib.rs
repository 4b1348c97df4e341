//! Browser bindings. Every entry point takes and returns JSON text so the page
//! needs no generated type glue beyond strings.

use serde::Serialize;
use swapsched::io::{generate_instance, load_scenario, save_scenario, GenParams, ScenarioDocument};
use swapsched::model::{usage_profile, Mode};
use swapsched::sim::{format_log, run_simulation, AdmissionPolicy, SimMetrics};
use swapsched::solvers::{
    solve_anytime, solve_exact, solve_genetic, solve_greedy, solve_local_search, ExactLimits, GaParams, InnerSolver,
    SolveReport,
};
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct SolveView {
    report: SolveReport,
    missions: Vec<String>,
    capacity: Vec<f64>,
    usage: Vec<f64>,
}

#[derive(Serialize)]
struct SimulateView {
    metrics: SimMetrics,
    log: String,
}

fn document(scenario: &str) -> Result<ScenarioDocument, String> {
    load_scenario(scenario).map_err(|e| e.to_string())
}

pub fn solve_json(scenario: &str, solver: &str, mode: &str, budget_ms: f64, seed: u64) -> Result<String, String> {
    let ScenarioDocument::Optimize(instance) = document(scenario)? else {
        return Err("expected an optimize scenario".into());
    };
    let mode: Mode = mode.parse().map_err(|e: swapsched::model::ModelError| e.to_string())?;
    let report = match solver.strip_prefix("anytime:") {
        Some(inner) => {
            let inner: InnerSolver = inner.parse().map_err(|e: swapsched::solvers::SolveError| e.to_string())?;
            solve_anytime(&inner, &instance, mode, budget_ms, seed)
        }
        None => match solver {
            "greedy" => solve_greedy(&instance, mode),
            "local" => solve_local_search(&instance, mode, budget_ms, seed),
            "ga" => solve_genetic(&instance, mode, &GaParams::default(), seed),
            "exact" => solve_exact(&instance, mode, ExactLimits::default()),
            other => return Err(format!("unknown solver `{other}`")),
        },
    }
    .map_err(|e| e.to_string())?;
    let usage = usage_profile(&instance, &report.schedule, mode).map_err(|e| e.to_string())?;
    let view = SolveView {
        missions: instance.missions().iter().map(|m| m.id.clone()).collect(),
        capacity: instance.platform().capacity().to_vec(),
        usage,
        report,
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

pub fn simulate_json(scenario: &str, admission: &str, seed: u64) -> Result<String, String> {
    let ScenarioDocument::Simulate(mut scenario) = document(scenario)? else {
        return Err("expected a simulate scenario".into());
    };
    scenario.admission_policy = match admission {
        "terminate" => AdmissionPolicy::Terminate,
        "offload" => AdmissionPolicy::Offload,
        "" => scenario.admission_policy,
        other => return Err(format!("unknown admission policy `{other}`")),
    };
    let (metrics, events) = run_simulation(&scenario, seed).map_err(|e| e.to_string())?;
    serde_json::to_string(&SimulateView { metrics, log: format_log(&events) }).map_err(|e| e.to_string())
}

pub fn generate_json(missions: usize, slots: usize, seed: u64) -> Result<String, String> {
    let instance = generate_instance(&GenParams { missions, slots, seed, ..GenParams::default() }).map_err(|e| e.to_string())?;
    Ok(save_scenario(&ScenarioDocument::Optimize(instance)))
}

/// Solves an optimize scenario; returns the report plus the usage curve.
#[wasm_bindgen]
pub fn solve(scenario: &str, solver: &str, mode: &str, budget_ms: f64, seed: u32) -> Result<String, JsError> {
    solve_json(scenario, solver, mode, budget_ms, u64::from(seed)).map_err(|e| JsError::new(&e))
}

/// Runs a simulate scenario, optionally overriding the admission policy.
#[wasm_bindgen]
pub fn simulate(scenario: &str, admission: &str, seed: u32) -> Result<String, JsError> {
    simulate_json(scenario, admission, u64::from(seed)).map_err(|e| JsError::new(&e))
}

/// A random optimize scenario.
#[wasm_bindgen]
pub fn generate(missions: u32, slots: u32, seed: u32) -> Result<String, JsError> {
    generate_json(missions as usize, slots as usize, u64::from(seed)).map_err(|e| JsError::new(&e))
}
