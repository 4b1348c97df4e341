use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::decoder::{priority_order, Decoder};
use super::{check_budget, rating_sum_bound, Control, Finish, Result, SolveReport};
use crate::model::{Mode, Objective, ProblemInstance, Schedule};

/// First-improvement descent over transpositions of the priority order,
/// starting from the greedy order.
pub fn solve_local_search(instance: &ProblemInstance, mode: Mode, budget_ms: f64, seed: u64) -> Result<SolveReport> {
    check_budget(budget_ms)?;
    let mut control = Control::with_budget_ms(budget_ms);
    let decoder = Decoder::new(instance, mode);
    let outcome = descend(&decoder, priority_order(instance), seed, &mut control);
    Finish {
        solver: "local",
        mode,
        seed,
        iterations: outcome.moves,
        upper_bound: rating_sum_bound(instance),
        proven: false,
    }
    .report(instance, outcome.schedule, control)
}

pub(crate) struct Descent {
    pub schedule: Schedule,
    pub moves: u64,
}

pub(crate) fn descend(decoder: &Decoder<'_>, start: Vec<usize>, seed: u64, control: &mut Control) -> Descent {
    let n = start.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    pairs.shuffle(&mut rng);

    let mut order = start;
    let (mut schedule, mut best): (Schedule, Objective) = decoder.evaluate(&order);
    control.record(best.value);
    let bound = rating_sum_bound(decoder.instance());
    let mut moves = 0;

    // Scan the neighborhood cyclically; a full lap without improvement is a local optimum.
    let mut since_improvement = 0;
    let mut cursor = 0;
    while since_improvement < pairs.len() && best.value < bound && !control.expired() {
        let (i, j) = pairs[cursor];
        cursor = (cursor + 1) % pairs.len();
        order.swap(i, j);
        let (candidate, obj) = decoder.evaluate(&order);
        if obj.improves_on(&best) {
            schedule = candidate;
            best = obj;
            moves += 1;
            since_improvement = 0;
            control.record(best.value);
        } else {
            order.swap(i, j);
            since_improvement += 1;
        }
    }
    Descent { schedule, moves }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::{instance_a, mission};
    use crate::solvers::{brute_force_oracle, solve_greedy};

    /// Rating order places the single wide mission first, which blocks both
    /// narrower ones; any order that defers it completes two missions.
    fn blocking_instance() -> ProblemInstance {
        ProblemInstance::new(
            2,
            vec![1.0, 1.0],
            vec![
                mission("wide", 0, 2, 2, 1.0, 1, 3.0),
                mission("early", 0, 1, 1, 1.0, 1, 2.0),
                mission("late", 1, 2, 1, 1.0, 1, 2.0),
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn greedy_optimal_means_no_moves() {
        let inst = instance_a();
        let greedy = solve_greedy(&inst, Mode::Rated).unwrap();
        let local = solve_local_search(&inst, Mode::Rated, 1_000.0, 3).unwrap();
        assert_eq!(local.schedule, greedy.schedule);
        assert_eq!(local.iterations, 0);
    }

    #[test]
    fn improves_on_rating_order() {
        let inst = blocking_instance();
        let oracle = brute_force_oracle(&inst, Mode::Raw).unwrap();
        let greedy = solve_greedy(&inst, Mode::Raw).unwrap();
        assert!(oracle.value > greedy.value, "fixture must defeat greedy");
        assert_eq!(greedy.value, 3.0);
        assert_eq!(oracle.value, 4.0);

        let local = solve_local_search(&inst, Mode::Raw, 1_000.0, 11).unwrap();
        assert!(local.value > greedy.value);
        assert_eq!(local.value, 4.0);
        assert!(local.iterations >= 1);
    }

    #[test]
    fn rejects_nonpositive_budget() {
        assert!(solve_local_search(&instance_a(), Mode::Raw, 0.0, 0).is_err());
    }
}
