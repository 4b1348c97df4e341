use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::decoder::{priority_order, Decoder};
use super::{rating_sum_bound, Control, Finish, Result, SolveError, SolveReport};
use crate::model::{Mode, Objective, ProblemInstance, Schedule};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaParams {
    pub population: usize,
    pub generations: usize,
    pub crossover_prob: f64,
    pub mutation_prob: f64,
    pub tournament: usize,
    pub elitism: usize,
}

impl Default for GaParams {
    fn default() -> Self {
        Self { population: 32, generations: 60, crossover_prob: 0.9, mutation_prob: 0.2, tournament: 3, elitism: 2 }
    }
}

impl GaParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(SolveError::InvalidParams(msg));
        if self.population < 2 {
            return bad(format!("population must be at least 2, got {}", self.population));
        }
        if self.generations < 1 {
            return bad("generations must be at least 1".into());
        }
        for (name, p) in [("crossover_prob", self.crossover_prob), ("mutation_prob", self.mutation_prob)] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} must lie in [0, 1], got {p}"));
            }
        }
        if self.tournament < 1 {
            return bad("tournament size must be at least 1".into());
        }
        if self.elitism >= self.population {
            return bad(format!("elitism {} must be below population {}", self.elitism, self.population));
        }
        Ok(())
    }
}

pub fn solve_genetic(instance: &ProblemInstance, mode: Mode, params: &GaParams, seed: u64) -> Result<SolveReport> {
    solve_genetic_seeded(instance, mode, params, seed, &[])
}

/// Genetic search whose initial population holds the greedy order, then each of
/// `initial` (e.g. advisor orders), then seeded random permutations.
pub fn solve_genetic_seeded(
    instance: &ProblemInstance,
    mode: Mode,
    params: &GaParams,
    seed: u64,
    initial: &[Vec<usize>],
) -> Result<SolveReport> {
    params.validate()?;
    for order in initial {
        check_permutation(order, instance.len())?;
    }
    let mut control = Control::unbounded();
    let best = evolve(&Decoder::new(instance, mode), params, seed, initial, Some(params.generations), &mut control);
    Finish { solver: "ga", mode, seed, iterations: best.generations, upper_bound: rating_sum_bound(instance), proven: false }
        .report(instance, best.schedule, control)
}

fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for &i in order {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(SolveError::InvalidParams(format!("{order:?} is not a permutation of 0..{n}")));
        }
    }
    if order.len() != n {
        return Err(SolveError::InvalidParams(format!("{order:?} is not a permutation of 0..{n}")));
    }
    Ok(())
}

pub(crate) struct Evolved {
    pub schedule: Schedule,
    pub generations: u64,
}

struct Individual {
    order: Vec<usize>,
    fitness: Objective,
}

/// Runs until `generations` are done (unbounded when `None`), the control
/// deadline passes, or the rating-sum bound is reached. Returns the best-ever
/// individual; the random stream does not depend on the stopping point.
pub(crate) fn evolve(
    decoder: &Decoder<'_>,
    params: &GaParams,
    seed: u64,
    initial: &[Vec<usize>],
    generations: Option<usize>,
    control: &mut Control,
) -> Evolved {
    let instance = decoder.instance();
    let n = instance.len();
    let bound = rating_sum_bound(instance);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let greedy = priority_order(instance);
    let (greedy_schedule, greedy_fitness) = decoder.evaluate(&greedy);
    control.record(greedy_fitness.value);
    let mut best = (greedy_schedule, greedy_fitness);
    let mut population = vec![Individual { order: greedy, fitness: greedy_fitness }];

    let done = |best: &Objective, control: &Control| best.value >= bound || control.expired();
    let consider = |order: Vec<usize>, best: &mut (Schedule, Objective), control: &mut Control| {
        let (schedule, fitness) = decoder.evaluate(&order);
        if fitness.improves_on(&best.1) {
            *best = (schedule, fitness);
            control.record(fitness.value);
        }
        Individual { order, fitness }
    };

    for order in initial.iter().take(params.population - 1) {
        if done(&best.1, control) {
            return Evolved { schedule: best.0, generations: 0 };
        }
        population.push(consider(order.clone(), &mut best, control));
    }
    while population.len() < params.population {
        if done(&best.1, control) {
            return Evolved { schedule: best.0, generations: 0 };
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        population.push(consider(order, &mut best, control));
    }

    let mut generation = 0u64;
    while generations.is_none_or(|g| (generation as usize) < g) {
        // Rank by fitness, index order among equals.
        let mut ranked: Vec<usize> = (0..population.len()).collect();
        ranked.sort_by(|&a, &b| {
            let (fa, fb) = (&population[a].fitness, &population[b].fitness);
            if fa.improves_on(fb) {
                std::cmp::Ordering::Less
            } else if fb.improves_on(fa) {
                std::cmp::Ordering::Greater
            } else {
                a.cmp(&b)
            }
        });
        let mut next: Vec<Individual> = ranked[..params.elitism]
            .iter()
            .map(|&k| Individual { order: population[k].order.clone(), fitness: population[k].fitness })
            .collect();
        while next.len() < params.population {
            if done(&best.1, control) {
                return Evolved { schedule: best.0, generations: generation };
            }
            let a = tournament(&population, params.tournament, &mut rng);
            let b = tournament(&population, params.tournament, &mut rng);
            let mut child = if rng.gen_bool(params.crossover_prob) {
                order_crossover(&population[a].order, &population[b].order, &mut rng)
            } else {
                population[a].order.clone()
            };
            if n >= 2 && rng.gen_bool(params.mutation_prob) {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                child.swap(i, j);
            }
            next.push(consider(child, &mut best, control));
        }
        population = next;
        generation += 1;
        if done(&best.1, control) {
            break;
        }
    }
    Evolved { schedule: best.0, generations: generation }
}

fn tournament(population: &[Individual], size: usize, rng: &mut ChaCha8Rng) -> usize {
    let mut winner = rng.gen_range(0..population.len());
    for _ in 1..size {
        let k = rng.gen_range(0..population.len());
        let (fk, fw) = (&population[k].fitness, &population[winner].fitness);
        if fk.improves_on(fw) || (!fw.improves_on(fk) && k < winner) {
            winner = k;
        }
    }
    winner
}

/// OX1: copy a slice of the first parent, fill the rest in the second parent's
/// order starting after the slice.
fn order_crossover(first: &[usize], second: &[usize], rng: &mut impl Rng) -> Vec<usize> {
    let n = first.len();
    if n < 2 {
        return first.to_vec();
    }
    let (mut lo, mut hi) = (rng.gen_range(0..n), rng.gen_range(0..n));
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    let mut child = vec![usize::MAX; n];
    let mut taken = vec![false; n];
    for k in lo..=hi {
        child[k] = first[k];
        taken[first[k]] = true;
    }
    let mut slot = (hi + 1) % n;
    for k in 0..n {
        let gene = second[(hi + 1 + k) % n];
        if !taken[gene] {
            child[slot] = gene;
            taken[gene] = true;
            slot = (slot + 1) % n;
        }
    }
    child
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::{instance_a, mission};
    use crate::solvers::solve_greedy;
    use proptest::prelude::*;

    #[test]
    fn single_mission_matches_greedy() {
        let inst = ProblemInstance::new(2, vec![3.0; 2], vec![mission("x", 0, 2, 4, 1.0, 2, 2.0)], None).unwrap();
        let params = GaParams { population: 2, generations: 1, elitism: 1, ..GaParams::default() };
        let ga = solve_genetic(&inst, Mode::Raw, &params, 5).unwrap();
        let greedy = solve_greedy(&inst, Mode::Raw).unwrap();
        assert_eq!(ga.schedule, greedy.schedule);
        assert_eq!(ga.value, greedy.value);
    }

    #[test]
    fn deterministic_per_seed() {
        let inst = instance_a();
        let params = GaParams::default();
        let mut a = solve_genetic(&inst, Mode::Rated, &params, 42).unwrap();
        let mut b = solve_genetic(&inst, Mode::Rated, &params, 42).unwrap();
        a.elapsed_ms = 0.0;
        b.elapsed_ms = 0.0;
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_params() {
        let inst = instance_a();
        for params in [
            GaParams { population: 1, elitism: 0, ..GaParams::default() },
            GaParams { generations: 0, ..GaParams::default() },
            GaParams { crossover_prob: 1.5, ..GaParams::default() },
            GaParams { tournament: 0, ..GaParams::default() },
            GaParams { elitism: 32, ..GaParams::default() },
        ] {
            assert!(matches!(solve_genetic(&inst, Mode::Raw, &params, 0), Err(SolveError::InvalidParams(_))));
        }
        assert!(solve_genetic_seeded(&inst, Mode::Raw, &GaParams::default(), 0, &[vec![0, 0]]).is_err());
    }

    proptest! {
        #[test]
        fn crossover_yields_permutation(n in 1usize..12, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut a: Vec<usize> = (0..n).collect();
            let mut b = a.clone();
            a.shuffle(&mut rng);
            b.shuffle(&mut rng);
            let mut child = order_crossover(&a, &b, &mut rng);
            child.sort_unstable();
            prop_assert_eq!(child, (0..n).collect::<Vec<_>>());
        }
    }
}
