use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Result, ScenarioError};
use crate::model::{MissionSpec, ProblemInstance};
use crate::sim::{AdmissionPolicy, AssignmentPolicy, DeadlineClass, JobSpec, NodeSpec, SimScenario, Zone};

/// Random instance parameters. Ranges are inclusive.
///
/// Capacities, work, rate caps and ratings are integers so that objective
/// values are exact sums; fractions are drawn on a 0.01 grid and interaction
/// coefficients on a 0.1 grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub missions: usize,
    pub slots: usize,
    pub capacity: (u32, u32),
    pub work: (u32, u32),
    pub fraction: (f64, f64),
    pub rate_cap: (u32, u32),
    pub rating: (u32, u32),
    /// Probability that a pair of missions interacts.
    pub interaction_density: f64,
    /// Largest interaction coefficient.
    pub interaction_max: f64,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        Self {
            missions: 4,
            slots: 8,
            capacity: (1, 4),
            work: (1, 6),
            fraction: (0.5, 1.0),
            rate_cap: (1, 3),
            rating: (1, 9),
            interaction_density: 0.3,
            interaction_max: 1.0,
            seed: 0,
        }
    }
}

impl GenParams {
    fn check(&self) -> Result<()> {
        let fail = |msg: String| Err(ScenarioError::Domain(msg));
        if self.slots == 0 {
            return fail("slots must be at least 1".into());
        }
        for (name, (lo, hi), min) in [
            ("capacity", self.capacity, 0),
            ("work", self.work, 1),
            ("rate_cap", self.rate_cap, 1),
            ("rating", self.rating, 1),
        ] {
            if lo > hi || lo < min {
                return fail(format!("{name} range ({lo}, {hi}) is empty or below {min}"));
            }
        }
        let (lo, hi) = self.fraction;
        if !(lo > 0.0 && lo <= hi && hi <= 1.0) || fraction_steps(self.fraction).is_none() {
            return fail(format!("fraction range ({lo}, {hi}) must lie in (0, 1] and contain a multiple of 0.01"));
        }
        if !(0.0..=1.0).contains(&self.interaction_density) {
            return fail(format!("interaction density {} must lie in [0, 1]", self.interaction_density));
        }
        if !(self.interaction_max.is_finite() && self.interaction_max >= 0.0) {
            return fail(format!("interaction max {} must be nonnegative", self.interaction_max));
        }
        Ok(())
    }
}

fn fraction_steps((lo, hi): (f64, f64)) -> Option<(u32, u32)> {
    let first = ((lo * 100.0) - 1e-9).ceil().max(1.0) as u32;
    let last = ((hi * 100.0) + 1e-9).floor().min(100.0) as u32;
    (first <= last).then_some((first, last))
}

/// Deterministic in `params.seed`; the result always satisfies every model invariant.
pub fn generate_instance(params: &GenParams) -> Result<ProblemInstance> {
    params.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let slots = params.slots;
    let capacity: Vec<f64> =
        (0..slots).map(|_| f64::from(rng.gen_range(params.capacity.0..=params.capacity.1))).collect();
    let (f_lo, f_hi) = fraction_steps(params.fraction).expect("checked");
    let missions: Vec<MissionSpec> = (0..params.missions)
        .map(|i| {
            let release = rng.gen_range(0..slots);
            let deadline = rng.gen_range(release + 1..=slots);
            MissionSpec {
                id: format!("m{i}"),
                release,
                deadline,
                total_work: rng.gen_range(params.work.0..=params.work.1),
                fraction: f64::from(rng.gen_range(f_lo..=f_hi)) / 100.0,
                rate_cap: rng.gen_range(params.rate_cap.0..=params.rate_cap.1),
                rating: f64::from(rng.gen_range(params.rating.0..=params.rating.1)),
            }
        })
        .collect();
    let n = missions.len();
    let steps = (params.interaction_max * 10.0).floor() as u32;
    let mut gamma = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(params.interaction_density) && steps > 0 {
                let g = f64::from(rng.gen_range(1..=steps)) / 10.0;
                gamma[i][j] = g;
                gamma[j][i] = g;
            }
        }
    }
    ProblemInstance::new(slots, capacity, missions, Some(gamma)).map_err(|e| ScenarioError::Domain(e.to_string()))
}

/// Random simulator workload parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimGenParams {
    pub nodes: usize,
    pub jobs: usize,
    pub horizon: u64,
    pub max_rate: u32,
    pub max_latency: u64,
    pub max_work: u32,
    pub labels: u32,
    /// Share of jobs with a hard deadline.
    pub hard_share: f64,
    /// Hard deadlines fall within `arrival + 1 ..= arrival + max_slack`.
    pub max_slack: u64,
    pub admission: AdmissionPolicy,
    pub assignment: AssignmentPolicy,
    pub seed: u64,
}

impl Default for SimGenParams {
    fn default() -> Self {
        Self {
            nodes: 3,
            jobs: 20,
            horizon: 30,
            max_rate: 4,
            max_latency: 3,
            max_work: 6,
            labels: 3,
            hard_share: 0.7,
            max_slack: 8,
            admission: AdmissionPolicy::Offload,
            assignment: AssignmentPolicy::EarliestFinish,
            seed: 0,
        }
    }
}

pub fn generate_sim_scenario(params: &SimGenParams) -> Result<SimScenario> {
    if params.nodes == 0 || params.horizon == 0 || params.max_rate == 0 || params.max_work == 0 || params.labels == 0 || params.max_slack == 0 {
        return Err(ScenarioError::Domain("nodes, horizon, max_rate, max_work, labels and max_slack must be positive".into()));
    }
    if !(0.0..=1.0).contains(&params.hard_share) {
        return Err(ScenarioError::Domain(format!("hard share {} must lie in [0, 1]", params.hard_share)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let nodes: Vec<NodeSpec> = (0..params.nodes)
        .map(|k| NodeSpec {
            id: format!("n{k}"),
            rate: rng.gen_range(1..=params.max_rate),
            link_latency: rng.gen_range(0..=params.max_latency),
            zone: if rng.gen_bool(0.5) { Zone::Hostile } else { Zone::Rear },
        })
        .collect();
    let jobs = (0..params.jobs)
        .map(|k| {
            let arrival = rng.gen_range(0..params.horizon);
            let deadline_class = if rng.gen_bool(params.hard_share) {
                DeadlineClass::Hard { deadline: arrival + rng.gen_range(1..=params.max_slack) }
            } else {
                DeadlineClass::Flexible { weight: 1.0 }
            };
            JobSpec {
                id: format!("j{k:03}"),
                arrival,
                work: rng.gen_range(1..=params.max_work),
                deadline_class,
                priority_label: rng.gen_range(1..=params.labels),
                origin_node: nodes[rng.gen_range(0..nodes.len())].id.clone(),
            }
        })
        .collect();
    Ok(SimScenario {
        nodes,
        jobs,
        horizon: params.horizon,
        admission_policy: params.admission,
        assignment_policy: params.assignment,
    })
}
