//! Solver suite for the discretized mission model.
//!
//! Every heuristic works on priority permutations: a [`Decoder`] turns an order
//! of missions into a schedule by granting units earliest-first and rolling back
//! any mission that cannot reach its required work. Greedy decodes the rating
//! order once; local search and the genetic algorithm search over orders; the
//! exact solver branches on which missions succeed and proves optimality.

mod advisor;
mod anytime;
mod decoder;
mod exact;
mod genetic;
mod local;
mod oracle;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use web_time::{Duration, Instant};

use crate::model::{mission_success, objective, ModelError, Mode, ProblemInstance, Schedule};

pub use advisor::{
    advise_order, advisor_dataset, extract_features, gradient, loss, score, train_advisor, AdvisorWeights, Example,
    TrainedAdvisor, FEATURES,
};
pub use anytime::{solve_anytime, InnerSolver};
pub use decoder::{priority_order, solve_greedy, Decoder};
pub use exact::{solve_exact, ExactLimits};
pub use genetic::{solve_genetic, solve_genetic_seeded, GaParams};
pub use local::solve_local_search;
pub use oracle::{brute_force_oracle, OracleResult, ORACLE_STATE_CAP};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{what} = {value} exceeds the configured limit {limit}")]
    LimitExceeded { what: &'static str, value: u64, limit: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("degenerate instance: {0}")]
    Degenerate(String),
    #[error("{0}")]
    Domain(String),
}

pub type Result<T, E = SolveError> = std::result::Result<T, E>;

/// Outcome of one solver run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub solver: String,
    pub mode: Mode,
    pub seed: u64,
    pub schedule: Schedule,
    pub value: f64,
    pub headroom: f64,
    pub success: Vec<bool>,
    pub upper_bound: f64,
    pub ratio: f64,
    pub optimal: bool,
    pub iterations: u64,
    /// Incumbent values in the order they were found.
    pub checkpoints: Vec<f64>,
    pub elapsed_ms: f64,
}

impl SolveReport {
    /// Missions that did not reach their required work.
    pub fn abandoned(&self) -> usize {
        self.success.iter().filter(|s| !**s).count()
    }
}

/// Wall-clock budget and incumbent trace shared by the iterative solvers.
#[derive(Debug)]
pub(crate) struct Control {
    start: Instant,
    deadline: Option<Instant>,
    checkpoints: Vec<f64>,
}

impl Control {
    pub(crate) fn unbounded() -> Self {
        Self { start: Instant::now(), deadline: None, checkpoints: Vec::new() }
    }

    pub(crate) fn with_budget_ms(budget_ms: f64) -> Self {
        let start = Instant::now();
        Self { start, deadline: Some(start + Duration::from_secs_f64(budget_ms / 1000.0)), checkpoints: Vec::new() }
    }

    pub(crate) fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    pub(crate) fn record(&mut self, value: f64) {
        if self.checkpoints.last().is_none_or(|last| value > *last) {
            self.checkpoints.push(value);
        }
    }

    fn elapsed_ms(&self) -> f64 {
        self.start.elapsed().as_secs_f64() * 1000.0
    }
}

pub(crate) fn check_budget(budget_ms: f64) -> Result<()> {
    if budget_ms.is_finite() && budget_ms > 0.0 {
        Ok(())
    } else {
        Err(SolveError::InvalidParams(format!("budget_ms must be positive, got {budget_ms}")))
    }
}

/// Σ R_i, always a valid bound on the objective.
pub fn rating_sum_bound(instance: &ProblemInstance) -> f64 {
    instance.ratings().total()
}

pub(crate) struct Finish<'a> {
    pub solver: &'a str,
    pub mode: Mode,
    pub seed: u64,
    pub iterations: u64,
    /// Valid upper bound on the optimum; ignored when `proven`.
    pub upper_bound: f64,
    pub proven: bool,
}

impl Finish<'_> {
    pub(crate) fn report(self, instance: &ProblemInstance, schedule: Schedule, control: Control) -> Result<SolveReport> {
        let obj = objective(instance, &schedule)?;
        let success = mission_success(instance, &schedule)?;
        let upper_bound = if self.proven { obj.value } else { self.upper_bound.max(obj.value) };
        let optimal = self.proven || obj.value >= upper_bound;
        let ratio = if optimal || upper_bound <= 0.0 { 1.0 } else { obj.value / upper_bound };
        Ok(SolveReport {
            solver: self.solver.to_string(),
            mode: self.mode,
            seed: self.seed,
            schedule,
            value: obj.value,
            headroom: obj.headroom,
            success,
            upper_bound,
            ratio,
            optimal,
            iterations: self.iterations,
            elapsed_ms: control.elapsed_ms(),
            checkpoints: control.checkpoints,
        })
    }
}
