use std::fmt;
use std::str::FromStr;

use super::decoder::{priority_order, Decoder};
use super::exact::{branch_and_bound, MASK_BITS};
use super::genetic::{evolve, GaParams};
use super::local::descend;
use super::{check_budget, rating_sum_bound, Control, Finish, Result, SolveError, SolveReport};
use crate::model::{Mode, ProblemInstance};

/// Solver run under an anytime budget.
#[derive(Debug, Clone, PartialEq)]
pub enum InnerSolver {
    Greedy,
    Local,
    /// Generations are unbounded under a budget; the other parameters apply.
    Genetic(GaParams),
    Exact,
}

impl InnerSolver {
    pub fn name(&self) -> &'static str {
        match self {
            InnerSolver::Greedy => "greedy",
            InnerSolver::Local => "local",
            InnerSolver::Genetic(_) => "ga",
            InnerSolver::Exact => "exact",
        }
    }
}

impl fmt::Display for InnerSolver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InnerSolver {
    type Err = SolveError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(InnerSolver::Greedy),
            "local" => Ok(InnerSolver::Local),
            "ga" => Ok(InnerSolver::Genetic(GaParams::default())),
            "exact" => Ok(InnerSolver::Exact),
            other => Err(SolveError::InvalidParams(format!("unknown solver `{other}`"))),
        }
    }
}

/// Runs `inner` against a wall-clock budget and reports the best incumbent with
/// a valid upper bound.
///
/// The bound is the rating sum, or for the exact solver the largest bound left
/// among its open nodes. Incumbent values only ever grow, so the checkpoint
/// trace is non-decreasing. The budget is checked between decode steps.
pub fn solve_anytime(
    inner: &InnerSolver,
    instance: &ProblemInstance,
    mode: Mode,
    budget_ms: f64,
    seed: u64,
) -> Result<SolveReport> {
    check_budget(budget_ms)?;
    let mut control = Control::with_budget_ms(budget_ms);
    let decoder = Decoder::new(instance, mode);
    let mut upper_bound = rating_sum_bound(instance);
    let mut proven = false;
    let (schedule, iterations) = match inner {
        InnerSolver::Greedy => {
            let (schedule, obj) = decoder.evaluate(&priority_order(instance));
            control.record(obj.value);
            (schedule, 1)
        }
        InnerSolver::Local => {
            let descent = descend(&decoder, priority_order(instance), seed, &mut control);
            (descent.schedule, descent.moves)
        }
        InnerSolver::Genetic(params) => {
            params.validate()?;
            let evolved = evolve(&decoder, params, seed, &[], None, &mut control);
            (evolved.schedule, evolved.generations)
        }
        InnerSolver::Exact => {
            if instance.len() > MASK_BITS {
                return Err(SolveError::LimitExceeded { what: "missions", value: instance.len() as u64, limit: MASK_BITS as u64 });
            }
            let outcome = branch_and_bound(instance, mode, &mut control);
            proven = outcome.proven;
            upper_bound = upper_bound.min(outcome.bound);
            (outcome.schedule, outcome.nodes)
        }
    };
    let name = format!("anytime:{}", inner.name());
    Finish { solver: &name, mode, seed, iterations, upper_bound, proven }.report(instance, schedule, control)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::instance_a;

    #[test]
    fn exact_with_generous_budget() {
        let report = solve_anytime(&InnerSolver::Exact, &instance_a(), Mode::Rated, 5_000.0, 0).unwrap();
        assert!(report.optimal);
        assert_eq!(report.ratio, 1.0);
        assert_eq!(report.solver, "anytime:exact");
    }

    #[test]
    fn greedy_on_instance_a() {
        let report = solve_anytime(&InnerSolver::Greedy, &instance_a(), Mode::Rated, 100.0, 0).unwrap();
        assert_eq!(report.value, 3.0);
        assert_eq!(report.upper_bound, 3.0);
        assert_eq!(report.ratio, 1.0);
    }

    #[test]
    fn parses_inner_names() {
        assert_eq!("exact".parse::<InnerSolver>().unwrap(), InnerSolver::Exact);
        assert!("anneal".parse::<InnerSolver>().is_err());
    }

    #[test]
    fn rejects_zero_budget() {
        assert!(solve_anytime(&InnerSolver::Greedy, &instance_a(), Mode::Raw, 0.0, 0).is_err());
    }
}
