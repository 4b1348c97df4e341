use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::decoder::{priority_order, Decoder};
use super::{Control, Finish, Result, SolveError, SolveReport};
use crate::model::{mission_success, Mode, ProblemInstance, Schedule, CAPACITY_TOLERANCE};

/// Desk-scale limits for the exact solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactLimits {
    pub max_missions: usize,
    pub max_slots: usize,
}

impl Default for ExactLimits {
    fn default() -> Self {
        Self { max_missions: 8, max_slots: 16 }
    }
}

/// Hard ceiling from the bitmask representation of success sets.
pub(crate) const MASK_BITS: usize = 64;

/// Branch-and-bound over which missions succeed.
///
/// Missions are decided in priority order; a node's bound is the rating sum of
/// its included and undecided missions. Whether a success set is achievable is
/// settled by a depth-first search over slots (see [`SlotSearch`]).
pub fn solve_exact(instance: &ProblemInstance, mode: Mode, limits: ExactLimits) -> Result<SolveReport> {
    let checks = [
        ("missions", instance.len(), limits.max_missions.min(MASK_BITS)),
        ("slots", instance.slots(), limits.max_slots),
    ];
    for (what, value, limit) in checks {
        if value > limit {
            return Err(SolveError::LimitExceeded { what, value: value as u64, limit: limit as u64 });
        }
    }
    let mut control = Control::unbounded();
    let outcome = branch_and_bound(instance, mode, &mut control);
    Finish { solver: "exact", mode, seed: 0, iterations: outcome.nodes, upper_bound: outcome.bound, proven: outcome.proven }
        .report(instance, outcome.schedule, control)
}

pub(crate) struct BnbOutcome {
    pub schedule: Schedule,
    /// Search finished: the incumbent is optimal.
    pub proven: bool,
    /// Largest bound among open nodes, or the incumbent value when proven.
    pub bound: f64,
    pub nodes: u64,
}

struct Node {
    depth: usize,
    mask: u64,
    bound: f64,
    checked: bool,
}

pub(crate) fn branch_and_bound(instance: &ProblemInstance, mode: Mode, control: &mut Control) -> BnbOutcome {
    debug_assert!(instance.len() <= MASK_BITS);
    let n = instance.len();
    let ratings = instance.ratings().ratings();
    // Rating sum of a set, always added in index order so that a superset never
    // sums below a subset.
    let set_value = |mask: u64| -> f64 { (0..n).filter(|i| mask & (1 << i) != 0).map(|i| ratings[i]).sum() };

    let order = priority_order(instance);
    let mut undecided = vec![0u64; n + 1];
    for depth in (0..n).rev() {
        undecided[depth] = undecided[depth + 1] | 1 << order[depth];
    }

    let decoder = Decoder::new(instance, mode);
    let (mut best_schedule, _) = decoder.evaluate(&order);
    let greedy_success = mission_success(instance, &best_schedule).expect("decoder shape");
    let mut best_mask = greedy_success.iter().enumerate().filter(|(_, s)| **s).fold(0u64, |m, (i, _)| m | 1 << i);
    let mut best_value = set_value(best_mask);
    control.record(best_value);

    let weights = instance.weights(mode);
    let mut stack = vec![Node { depth: 0, mask: 0, bound: set_value(undecided[0]), checked: true }];
    let mut nodes = 0;
    while let Some(mut node) = stack.pop() {
        if node.bound <= best_value {
            continue;
        }
        if !node.checked {
            match SlotSearch::new(instance, &weights, node.mask, control).solve() {
                Feasibility::Aborted => {
                    stack.push(node);
                    break;
                }
                Feasibility::Infeasible => continue,
                Feasibility::Feasible(schedule) => {
                    let value = set_value(node.mask);
                    if value > best_value {
                        best_value = value;
                        best_mask = node.mask;
                        best_schedule = schedule;
                        control.record(best_value);
                    }
                    node.checked = true;
                }
            }
        }
        nodes += 1;
        if node.depth == n {
            continue;
        }
        if control.expired() {
            stack.push(node);
            break;
        }
        let next = node.depth + 1;
        let mission = order[node.depth];
        stack.push(Node { depth: next, mask: node.mask, bound: set_value(node.mask | undecided[next]), checked: true });
        stack.push(Node { depth: next, mask: node.mask | 1 << mission, bound: node.bound, checked: false });
    }
    debug_assert_eq!(set_value(best_mask), best_value);

    let open = stack.iter().filter(|n| n.bound > best_value).map(|n| n.bound).fold(f64::NEG_INFINITY, f64::max);
    let proven = open == f64::NEG_INFINITY;
    BnbOutcome { schedule: best_schedule, proven, bound: if proven { best_value } else { open }, nodes }
}

pub(crate) enum Feasibility {
    Feasible(Schedule),
    Infeasible,
    Aborted,
}

/// Decides whether every mission in a set can reach its required work.
///
/// Slots are filled left to right. Within a slot only maximal allocation vectors
/// are tried: lowering an allocation never breaks a later slot, so a vector that
/// could still grow is dominated. Failed `(slot, remaining work)` states are
/// memoized.
struct SlotSearch<'a> {
    instance: &'a ProblemInstance,
    weights: &'a [f64],
    control: &'a Control,
    members: Vec<usize>,
    /// Per member and slot: units that fit alone (0 outside the window).
    caps: Vec<Vec<u32>>,
    /// Per member: suffix sums of `caps`.
    reach: Vec<Vec<u64>>,
    capacity_left: Vec<f64>,
    alloc: Vec<Vec<u32>>,
    failed: HashSet<(usize, Vec<u32>)>,
    steps: u64,
    aborted: bool,
}

impl<'a> SlotSearch<'a> {
    fn new(instance: &'a ProblemInstance, weights: &'a [f64], mask: u64, control: &'a Control) -> Self {
        let slots = instance.slots();
        let members: Vec<usize> = (0..instance.len()).filter(|i| mask & (1 << i) != 0).collect();
        let caps: Vec<Vec<u32>> = members
            .iter()
            .map(|&i| {
                let m = instance.mission(i);
                (0..slots)
                    .map(|t| {
                        if !m.window().contains(&t) {
                            return 0;
                        }
                        let fit = ((instance.platform().at(t) + CAPACITY_TOLERANCE) / weights[i]).floor();
                        if fit >= f64::from(m.rate_cap) {
                            m.rate_cap
                        } else {
                            fit.max(0.0) as u32
                        }
                    })
                    .collect()
            })
            .collect();
        let reach = caps
            .iter()
            .map(|row| {
                let mut suffix = vec![0u64; slots + 1];
                for t in (0..slots).rev() {
                    suffix[t] = suffix[t + 1] + u64::from(row[t]);
                }
                suffix
            })
            .collect();
        let mut capacity_left = vec![0.0; slots + 1];
        for t in (0..slots).rev() {
            capacity_left[t] = capacity_left[t + 1] + instance.platform().at(t);
        }
        let alloc = vec![vec![0; slots]; members.len()];
        Self { instance, weights, control, members, caps, reach, capacity_left, alloc, failed: HashSet::new(), steps: 0, aborted: false }
    }

    fn solve(mut self) -> Feasibility {
        let mut remaining: Vec<u32> = self.members.iter().map(|&i| self.instance.mission(i).required_work()).collect();
        if self.fill(0, &mut remaining) {
            let mut schedule = Schedule::for_instance(self.instance);
            for (k, &i) in self.members.iter().enumerate() {
                for (t, &a) in self.alloc[k].iter().enumerate() {
                    schedule.set(i, t, a);
                }
            }
            Feasibility::Feasible(schedule)
        } else if self.aborted {
            Feasibility::Aborted
        } else {
            Feasibility::Infeasible
        }
    }

    fn fill(&mut self, slot: usize, remaining: &mut Vec<u32>) -> bool {
        if remaining.iter().all(|&r| r == 0) {
            return true;
        }
        if slot == self.instance.slots() {
            return false;
        }
        if remaining.iter().enumerate().any(|(k, &r)| u64::from(r) > self.reach[k][slot]) {
            return false;
        }
        let weighted: f64 = remaining.iter().enumerate().map(|(k, &r)| self.weights[self.members[k]] * f64::from(r)).sum();
        let slack = CAPACITY_TOLERANCE * (self.instance.slots() - slot) as f64;
        if weighted > self.capacity_left[slot] + slack {
            return false;
        }
        if self.failed.contains(&(slot, remaining.clone())) {
            return false;
        }
        self.steps += 1;
        if self.steps % 128 == 0 && self.control.expired() {
            self.aborted = true;
            return false;
        }

        let eligible: Vec<(usize, u32)> = (0..self.members.len())
            .filter(|&k| remaining[k] > 0 && self.caps[k][slot] > 0)
            .map(|k| (k, self.caps[k][slot].min(remaining[k])))
            .collect();
        let mut x = vec![0u32; eligible.len()];
        let mut active = Vec::with_capacity(eligible.len());
        if self.enumerate(slot, &eligible, 0, &mut x, 0.0, 0.0, &mut active, remaining) {
            return true;
        }
        if !self.aborted {
            self.failed.insert((slot, remaining.clone()));
        }
        false
    }

    fn room(&self, slot: usize, load: f64, penalty: f64) -> f64 {
        self.instance.platform().at(slot) - load - penalty
    }

    fn penalty_with(&self, member: usize, active: &[usize]) -> f64 {
        let gamma = self.instance.interaction();
        let i = self.members[member];
        active.iter().map(|&other| gamma.get(i, self.members[other])).sum()
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        &mut self,
        slot: usize,
        eligible: &[(usize, u32)],
        e: usize,
        x: &mut Vec<u32>,
        load: f64,
        penalty: f64,
        active: &mut Vec<usize>,
        remaining: &mut Vec<u32>,
    ) -> bool {
        if e == eligible.len() {
            if !self.is_maximal(slot, eligible, x, load, penalty, active) {
                return false;
            }
            for (&(k, _), &units) in eligible.iter().zip(x.iter()) {
                remaining[k] -= units;
                self.alloc[k][slot] = units;
            }
            if self.fill(slot + 1, remaining) {
                return true;
            }
            for (&(k, _), &units) in eligible.iter().zip(x.iter()) {
                remaining[k] += units;
                self.alloc[k][slot] = 0;
            }
            return false;
        }

        let (k, upper) = eligible[e];
        let w = self.weights[self.members[k]];
        let with = penalty + self.penalty_with(k, active);
        let fit = ((self.room(slot, load, with) + CAPACITY_TOLERANCE) / w).floor();
        let mut units = if fit >= f64::from(upper) { upper } else { fit.max(0.0) as u32 };
        while units > 0 && self.room(slot, load + w * f64::from(units), with) < -CAPACITY_TOLERANCE {
            units -= 1;
        }
        active.push(k);
        while units > 0 {
            x[e] = units;
            if self.enumerate(slot, eligible, e + 1, x, load + w * f64::from(units), with, active, remaining) {
                return true;
            }
            if self.aborted {
                return false;
            }
            units -= 1;
        }
        active.pop();
        x[e] = 0;
        self.enumerate(slot, eligible, e + 1, x, load, penalty, active, remaining)
    }

    fn is_maximal(&self, slot: usize, eligible: &[(usize, u32)], x: &[u32], load: f64, penalty: f64, active: &[usize]) -> bool {
        eligible.iter().zip(x).all(|(&(k, upper), &units)| {
            if units >= upper {
                return true;
            }
            let w = self.weights[self.members[k]];
            let extra = if units == 0 { self.penalty_with(k, active) } else { 0.0 };
            self.room(slot, load + w, penalty + extra) < -CAPACITY_TOLERANCE
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::check_feasibility;
    use crate::model::fixtures::{instance_a, mission};
    use crate::solvers::brute_force_oracle;

    #[test]
    fn instance_a_is_three() {
        for mode in [Mode::Rated, Mode::Raw] {
            let report = solve_exact(&instance_a(), mode, ExactLimits::default()).unwrap();
            assert_eq!(report.value, 3.0);
            assert!(report.optimal);
            assert_eq!(report.ratio, 1.0);
            assert_eq!(report.value, brute_force_oracle(&instance_a(), mode).unwrap().value);
        }
    }

    #[test]
    fn forced_abandonment() {
        // Window holds at most 2 units (min(m, P) = 1 per slot, 2 slots).
        let inst = ProblemInstance::new(3, vec![1.0, 1.0, 5.0], vec![mission("x", 0, 2, 3, 1.0, 2, 4.0)], None).unwrap();
        let report = solve_exact(&inst, Mode::Raw, ExactLimits::default()).unwrap();
        assert_eq!(report.value, 0.0);
        assert!(report.optimal);
        assert_eq!(report.success, vec![false]);
    }

    #[test]
    fn limit_exceeded() {
        let inst = ProblemInstance::new(20, vec![1.0; 20], vec![mission("x", 0, 2, 1, 1.0, 1, 1.0)], None).unwrap();
        let err = solve_exact(&inst, Mode::Raw, ExactLimits::default()).unwrap_err();
        assert_eq!(err, SolveError::LimitExceeded { what: "slots", value: 20, limit: 16 });
    }

    #[test]
    fn beats_greedy_when_rating_order_blocks() {
        let inst = ProblemInstance::new(
            2,
            vec![1.0, 1.0],
            vec![
                mission("wide", 0, 2, 2, 1.0, 1, 3.0),
                mission("early", 0, 1, 1, 1.0, 1, 2.0),
                mission("late", 1, 2, 1, 1.0, 1, 2.0),
            ],
            None,
        )
        .unwrap();
        let report = solve_exact(&inst, Mode::Raw, ExactLimits::default()).unwrap();
        assert_eq!(report.value, 4.0);
        assert_eq!(report.success, vec![false, true, true]);
        assert!(check_feasibility(&inst, &report.schedule, Mode::Raw).unwrap().feasible);
    }

    #[test]
    fn needs_interleaving_across_slots() {
        // Both missions fit only if neither takes its full rate in slot 0.
        let gamma = vec![vec![0.0, 0.5], vec![0.5, 0.0]];
        let inst = ProblemInstance::new(
            3,
            vec![3.0, 3.0, 1.0],
            vec![mission("x", 0, 3, 3, 1.0, 3, 2.0), mission("y", 0, 2, 3, 1.0, 2, 2.0)],
            Some(gamma),
        )
        .unwrap();
        let exact = solve_exact(&inst, Mode::Raw, ExactLimits::default()).unwrap();
        let oracle = brute_force_oracle(&inst, Mode::Raw).unwrap();
        assert_eq!(exact.value, oracle.value);
        assert!(check_feasibility(&inst, &exact.schedule, Mode::Raw).unwrap().feasible);
    }
}
