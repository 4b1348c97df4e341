use std::cmp::Ordering;

use super::{rating_sum_bound, Control, Finish, Result, SolveReport};
use crate::model::{objective, Mode, Objective, ProblemInstance, Schedule, CAPACITY_TOLERANCE};

/// Missions by rating (descending), then deadline (ascending), then id.
pub fn priority_order(instance: &ProblemInstance) -> Vec<usize> {
    let mut order: Vec<usize> = (0..instance.len()).collect();
    order.sort_by(|&a, &b| priority_cmp(instance, a, b));
    order
}

pub(crate) fn priority_cmp(instance: &ProblemInstance, a: usize, b: usize) -> Ordering {
    let (ma, mb) = (instance.mission(a), instance.mission(b));
    mb.rating
        .total_cmp(&ma.rating)
        .then(ma.deadline.cmp(&mb.deadline))
        .then_with(|| ma.id.cmp(&mb.id))
}

/// Turns a priority permutation into a feasible schedule.
///
/// Each mission in turn is granted units earliest-first inside its window, up to
/// its rate cap and the residual slot capacity (including the interaction penalty
/// of becoming active next to missions already placed). A mission that cannot
/// reach its required work is rolled back entirely.
pub struct Decoder<'a> {
    instance: &'a ProblemInstance,
    weights: Vec<f64>,
    required: Vec<u32>,
}

impl<'a> Decoder<'a> {
    pub fn new(instance: &'a ProblemInstance, mode: Mode) -> Self {
        Self {
            instance,
            weights: instance.weights(mode),
            required: instance.missions().iter().map(|m| m.required_work()).collect(),
        }
    }

    pub fn instance(&self) -> &'a ProblemInstance {
        self.instance
    }

    pub fn decode(&self, order: &[usize]) -> Schedule {
        let inst = self.instance;
        let gamma = inst.interaction();
        let mut schedule = Schedule::for_instance(inst);
        let mut load = vec![0.0; inst.slots()];
        let mut penalty = vec![0.0; inst.slots()];
        let mut active: Vec<Vec<usize>> = vec![Vec::new(); inst.slots()];
        let mut grants: Vec<(usize, u32, f64)> = Vec::new();

        for &i in order {
            let mission = inst.mission(i);
            let need = self.required[i];
            let w = self.weights[i];
            let mut got = 0;
            grants.clear();
            for slot in mission.window() {
                if got == need {
                    break;
                }
                let extra: f64 = active[slot].iter().map(|&j| gamma.get(i, j)).sum();
                let fixed = load[slot];
                let other = penalty[slot] + extra;
                let fits = |a: u32| inst.platform().at(slot) - (fixed + w * f64::from(a)) - other >= -CAPACITY_TOLERANCE;
                let room = (inst.platform().at(slot) - fixed - other + CAPACITY_TOLERANCE) / w;
                let mut a = mission.rate_cap.min(need - got);
                if room < f64::from(a) {
                    a = if room >= 1.0 { room.floor() as u32 } else { 0 };
                }
                while a > 0 && !fits(a) {
                    a -= 1;
                }
                if a > 0 {
                    schedule.set(i, slot, a);
                    got += a;
                    grants.push((slot, a, extra));
                }
            }
            if got < need {
                schedule.clear_mission(i);
                continue;
            }
            for &(slot, a, extra) in &grants {
                load[slot] += w * f64::from(a);
                penalty[slot] += extra;
                active[slot].push(i);
            }
        }
        schedule
    }

    pub fn evaluate(&self, order: &[usize]) -> (Schedule, Objective) {
        let schedule = self.decode(order);
        let obj = objective(self.instance, &schedule).expect("decoder output matches instance shape");
        (schedule, obj)
    }
}

pub fn solve_greedy(instance: &ProblemInstance, mode: Mode) -> Result<SolveReport> {
    let mut control = Control::unbounded();
    let (schedule, obj) = Decoder::new(instance, mode).evaluate(&priority_order(instance));
    control.record(obj.value);
    Finish { solver: "greedy", mode, seed: 0, iterations: 1, upper_bound: rating_sum_bound(instance), proven: false }
        .report(instance, schedule, control)
}
