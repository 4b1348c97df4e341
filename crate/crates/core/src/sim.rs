//! Tick-driven simulator of job off-loading across edge nodes.
//!
//! Each node serves `rate` work units per tick, highest priority label first
//! (preemptive; ties by arrival then id). A job arriving at its origin node is
//! admitted, terminated, or handed to the global engine, which places it on a
//! remote node after that node's link latency. Hard jobs that are not done by
//! their deadline fail and release their resources; flexible jobs never fail.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::Issue;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid scenario: {}", .0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Issue>),
    #[error("no remote node available for job `{0}`")]
    NoRemoteNode(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Zone {
    Hostile,
    Rear,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeSpec {
    pub id: String,
    /// Work units served per tick.
    pub rate: u32,
    /// Ticks for an off-loaded job to reach this node.
    pub link_latency: u64,
    pub zone: Zone,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DeadlineClass {
    /// Must finish at or before `deadline`.
    Hard { deadline: u64 },
    Flexible { weight: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JobSpec {
    pub id: String,
    pub arrival: u64,
    pub work: u32,
    pub deadline_class: DeadlineClass,
    /// Larger labels preempt smaller ones.
    pub priority_label: u32,
    pub origin_node: String,
}

impl JobSpec {
    pub fn hard_deadline(&self) -> Option<u64> {
        match self.deadline_class {
            DeadlineClass::Hard { deadline } => Some(deadline),
            DeadlineClass::Flexible { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissionPolicy {
    Terminate,
    Offload,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssignmentPolicy {
    EarliestFinish,
    PriorityFirst,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimScenario {
    pub nodes: Vec<NodeSpec>,
    pub jobs: Vec<JobSpec>,
    pub horizon: u64,
    pub admission_policy: AdmissionPolicy,
    pub assignment_policy: AssignmentPolicy,
}

impl SimScenario {
    pub fn issues(&self) -> Vec<Issue> {
        let mut out = Vec::new();
        if self.horizon < 1 {
            out.push(Issue::new("horizon", "must be at least 1"));
        }
        for (k, node) in self.nodes.iter().enumerate() {
            if node.rate < 1 {
                out.push(Issue::new(format!("nodes[{k}].rate"), "rate must be at least 1"));
            }
            if self.nodes[..k].iter().any(|n| n.id == node.id) {
                out.push(Issue::new(format!("nodes[{k}].id"), format!("duplicate node id `{}`", node.id)));
            }
        }
        for (k, job) in self.jobs.iter().enumerate() {
            let at = |field: &str| format!("jobs[{k}].{field}");
            if job.work < 1 {
                out.push(Issue::new(at("work"), "work must be at least 1"));
            }
            if job.priority_label < 1 {
                out.push(Issue::new(at("priority_label"), "priority label must be at least 1"));
            }
            if self.horizon >= 1 && job.arrival >= self.horizon {
                out.push(Issue::new(at("arrival"), format!("arrival {} is not before the horizon {}", job.arrival, self.horizon)));
            }
            match job.deadline_class {
                DeadlineClass::Hard { deadline } if deadline <= job.arrival => {
                    out.push(Issue::new(at("deadline_class.deadline"), format!("deadline {deadline} must exceed arrival {}", job.arrival)));
                }
                DeadlineClass::Flexible { weight } if !(weight.is_finite() && weight >= 0.0) => {
                    out.push(Issue::new(at("deadline_class.weight"), format!("weight {weight} must be finite and nonnegative")));
                }
                _ => {}
            }
            if !self.nodes.iter().any(|n| n.id == job.origin_node) {
                out.push(Issue::new(at("origin_node"), format!("unknown node `{}`", job.origin_node)));
            }
            if self.jobs[..k].iter().any(|j| j.id == job.id) {
                out.push(Issue::new(at("id"), format!("duplicate job id `{}`", job.id)));
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let issues = self.issues();
        if issues.is_empty() {
            Ok(())
        } else {
            Err(SimError::Invalid(issues))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimMetrics {
    pub seed: u64,
    pub total_jobs: u64,
    pub completed: u64,
    pub failed_deadline: u64,
    pub terminated_at_admission: u64,
    pub in_flight_at_horizon: u64,
    /// Jobs handed to the global engine, whatever became of them.
    pub offloaded: u64,
    /// Busy ticks over the horizon, per node id.
    pub utilization: BTreeMap<String, f64>,
    /// Mean completion minus arrival over completed jobs, per priority label.
    pub mean_response: BTreeMap<u32, f64>,
}

impl SimMetrics {
    pub fn dispositions(&self) -> u64 {
        self.completed + self.failed_deadline + self.terminated_at_admission + self.in_flight_at_horizon
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Admit,
    Terminate,
    Offload,
}

#[derive(Debug, Clone, PartialEq)]
struct Queued {
    job: usize,
    id: String,
    arrival: u64,
    label: u32,
    remaining: u32,
}

impl Queued {
    /// Service order: larger label first, then earlier arrival, then id.
    fn runs_before(&self, label: u32, arrival: u64, id: &str) -> bool {
        (std::cmp::Reverse(self.label), self.arrival, self.id.as_str()) < (std::cmp::Reverse(label), arrival, id)
    }
}

/// Live state of one node: its queue and how many ticks it has been busy.
#[derive(Debug, Clone)]
pub struct NodeState {
    spec: NodeSpec,
    queue: Vec<Queued>,
    busy_ticks: u64,
    last_served: Option<usize>,
}

impl NodeState {
    pub fn new(spec: NodeSpec) -> Self {
        Self { spec, queue: Vec::new(), busy_ticks: 0, last_served: None }
    }

    pub fn spec(&self) -> &NodeSpec {
        &self.spec
    }

    /// Queues `remaining` units of a job without any admission check.
    pub fn enqueue(&mut self, index: usize, job: &JobSpec, remaining: u32) {
        self.queue.push(Queued {
            job: index,
            id: job.id.clone(),
            arrival: job.arrival,
            label: job.priority_label,
            remaining,
        });
    }

    pub fn queued_work(&self) -> u64 {
        self.queue.iter().map(|q| u64::from(q.remaining)).sum()
    }

    /// Work that would be served before `job` if it joined now.
    pub fn work_ahead(&self, job: &JobSpec) -> u64 {
        self.queue
            .iter()
            .filter(|q| q.runs_before(job.priority_label, job.arrival, &job.id))
            .map(|q| u64::from(q.remaining))
            .sum()
    }

    /// Tick by which `job` would finish here, ignoring future arrivals.
    pub fn projected_finish(&self, job: &JobSpec, now: u64) -> u64 {
        now + (self.work_ahead(job) + u64::from(job.work)).div_ceil(u64::from(self.spec.rate))
    }

    fn top(&self) -> Option<usize> {
        (0..self.queue.len()).min_by(|&a, &b| {
            let (qa, qb) = (&self.queue[a], &self.queue[b]);
            (std::cmp::Reverse(qa.label), qa.arrival, &qa.id).cmp(&(std::cmp::Reverse(qb.label), qb.arrival, &qb.id))
        })
    }
}

/// Origin-node decision for a job arriving at `now`.
pub fn local_admission(node: &NodeState, job: &JobSpec, policy: AdmissionPolicy, now: u64, horizon: u64) -> Decision {
    let projected = node.projected_finish(job, now);
    match (job.deadline_class, policy) {
        (DeadlineClass::Hard { deadline }, _) if projected <= deadline => Decision::Admit,
        (DeadlineClass::Hard { .. }, AdmissionPolicy::Terminate) => Decision::Terminate,
        (DeadlineClass::Hard { .. }, AdmissionPolicy::Offload) => Decision::Offload,
        (DeadlineClass::Flexible { .. }, AdmissionPolicy::Offload) if projected > horizon => Decision::Offload,
        (DeadlineClass::Flexible { .. }, _) => Decision::Admit,
    }
}

/// Chooses a node for an off-loaded job; returns its id.
pub fn global_assign(cluster: &[NodeState], job: &JobSpec, policy: AssignmentPolicy, now: u64) -> Result<String, SimError> {
    let candidates: Vec<usize> = (0..cluster.len()).collect();
    assign_among(cluster, &candidates, job, policy, now).map(|k| cluster[k].spec.id.clone())
}

fn assign_among(
    cluster: &[NodeState],
    candidates: &[usize],
    job: &JobSpec,
    policy: AssignmentPolicy,
    now: u64,
) -> Result<usize, SimError> {
    if candidates.is_empty() {
        return Err(SimError::NoRemoteNode(job.id.clone()));
    }
    let pool: Vec<usize> = match policy {
        AssignmentPolicy::EarliestFinish => candidates.to_vec(),
        AssignmentPolicy::PriorityFirst => match job.deadline_class {
            DeadlineClass::Hard { .. } => {
                let nearest = candidates.iter().map(|&k| cluster[k].spec.link_latency).min().unwrap_or(0);
                candidates.iter().copied().filter(|&k| cluster[k].spec.link_latency == nearest).collect()
            }
            DeadlineClass::Flexible { .. } => {
                let rear: Vec<usize> = candidates.iter().copied().filter(|&k| cluster[k].spec.zone == Zone::Rear).collect();
                if rear.is_empty() {
                    candidates.to_vec()
                } else {
                    rear
                }
            }
        },
    };
    let eta = |k: usize| cluster[k].spec.link_latency + cluster[k].projected_finish(job, now);
    Ok(pool
        .into_iter()
        .min_by(|&a, &b| eta(a).cmp(&eta(b)).then_with(|| cluster[a].spec.id.cmp(&cluster[b].spec.id)))
        .expect("pool is non-empty"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    Arrive,
    Admit,
    Terminate,
    Offload,
    Assign,
    Deliver,
    Preempt,
    Complete,
    Fail,
    Strand,
}

impl EventKind {
    fn as_str(self) -> &'static str {
        match self {
            EventKind::Arrive => "arrive",
            EventKind::Admit => "admit",
            EventKind::Terminate => "terminate",
            EventKind::Offload => "offload",
            EventKind::Assign => "assign",
            EventKind::Deliver => "deliver",
            EventKind::Preempt => "preempt",
            EventKind::Complete => "complete",
            EventKind::Fail => "fail",
            EventKind::Strand => "strand",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub tick: u64,
    pub kind: EventKind,
    pub job: String,
    pub node: String,
    pub detail: Vec<(&'static str, String)>,
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tick {} {} job={} node={} detail=", self.tick, self.kind.as_str(), self.job, self.node)?;
        for (k, (key, value)) in self.detail.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{key}={value}")?;
        }
        Ok(())
    }
}

/// One line per event, newline-terminated.
pub fn format_log(events: &[Event]) -> String {
    events.iter().map(|e| format!("{e}\n")).collect()
}

struct Transit {
    job: usize,
    node: usize,
    deliver_at: u64,
}

/// Runs the scenario to its horizon.
///
/// `seed` is echoed in the metrics; ordering inside the loop is fully
/// determined by the scenario.
pub fn run_simulation(scenario: &SimScenario, seed: u64) -> Result<(SimMetrics, Vec<Event>), SimError> {
    scenario.validate()?;
    let jobs = &scenario.jobs;
    let mut nodes: Vec<NodeState> = scenario.nodes.iter().cloned().map(NodeState::new).collect();
    let node_index = |id: &str| scenario.nodes.iter().position(|n| n.id == id).expect("validated origin");

    let mut arrivals: Vec<usize> = (0..jobs.len()).collect();
    arrivals.sort_by(|&a, &b| (jobs[a].arrival, &jobs[a].id).cmp(&(jobs[b].arrival, &jobs[b].id)));
    let mut next_arrival = 0;

    let mut log = Vec::new();
    let mut event = |tick: u64, kind: EventKind, job: usize, node: &str, detail: Vec<(&'static str, String)>| {
        log.push(Event { tick, kind, job: jobs[job].id.clone(), node: node.to_string(), detail });
    };

    let mut metrics = SimMetrics {
        seed,
        total_jobs: jobs.len() as u64,
        completed: 0,
        failed_deadline: 0,
        terminated_at_admission: 0,
        in_flight_at_horizon: 0,
        offloaded: 0,
        utilization: BTreeMap::new(),
        mean_response: BTreeMap::new(),
    };
    let mut responses: BTreeMap<u32, (u64, u64)> = BTreeMap::new();
    let mut transit: Vec<Transit> = Vec::new();
    let mut stranded = 0u64;

    for now in 0..scenario.horizon {
        // Deliveries scheduled for this tick, in hand-off order.
        let mut k = 0;
        while k < transit.len() {
            if transit[k].deliver_at == now {
                let t = transit.remove(k);
                nodes[t.node].enqueue(t.job, &jobs[t.job], jobs[t.job].work);
                event(now, EventKind::Deliver, t.job, &nodes[t.node].spec.id, vec![]);
            } else {
                k += 1;
            }
        }

        while next_arrival < arrivals.len() && jobs[arrivals[next_arrival]].arrival == now {
            let j = arrivals[next_arrival];
            next_arrival += 1;
            let job = &jobs[j];
            let origin = node_index(&job.origin_node);
            let origin_id = nodes[origin].spec.id.clone();
            event(now, EventKind::Arrive, j, &origin_id, vec![("label", job.priority_label.to_string()), ("work", job.work.to_string())]);
            let projected = nodes[origin].projected_finish(job, now);
            match local_admission(&nodes[origin], job, scenario.admission_policy, now, scenario.horizon) {
                Decision::Admit => {
                    nodes[origin].enqueue(j, job, job.work);
                    event(now, EventKind::Admit, j, &origin_id, vec![("projected", projected.to_string())]);
                }
                Decision::Terminate => {
                    metrics.terminated_at_admission += 1;
                    event(now, EventKind::Terminate, j, &origin_id, vec![("projected", projected.to_string())]);
                }
                Decision::Offload => {
                    metrics.offloaded += 1;
                    event(now, EventKind::Offload, j, &origin_id, vec![("projected", projected.to_string())]);
                    let remote: Vec<usize> = (0..nodes.len()).filter(|&k| k != origin).collect();
                    match assign_among(&nodes, &remote, job, scenario.assignment_policy, now) {
                        Ok(target) => {
                            let deliver_at = now + nodes[target].spec.link_latency;
                            let eta = nodes[target].spec.link_latency + nodes[target].projected_finish(job, now);
                            let target_id = nodes[target].spec.id.clone();
                            event(now, EventKind::Assign, j, &target_id, vec![("deliver", deliver_at.to_string()), ("eta", eta.to_string())]);
                            if deliver_at == now {
                                nodes[target].enqueue(j, job, job.work);
                                event(now, EventKind::Deliver, j, &target_id, vec![]);
                            } else {
                                transit.push(Transit { job: j, node: target, deliver_at });
                            }
                        }
                        Err(_) => {
                            if job.hard_deadline().is_some() {
                                metrics.failed_deadline += 1;
                                event(now, EventKind::Fail, j, &origin_id, vec![("reason", "no_remote_node".into())]);
                            } else {
                                stranded += 1;
                                event(now, EventKind::Strand, j, &origin_id, vec![("reason", "no_remote_node".into())]);
                            }
                        }
                    }
                }
            }
        }

        for node in nodes.iter_mut() {
            let mut capacity = node.spec.rate;
            let mut served = false;
            let mut first = true;
            while capacity > 0 {
                let Some(top) = node.top() else { break };
                let job = node.queue[top].job;
                if first {
                    if let Some(prev) = node.last_served.filter(|&p| p != job) {
                        if let Some(waiting) = node.queue.iter().find(|q| q.job == prev) {
                            let detail = vec![("by", jobs[job].id.clone()), ("remaining", waiting.remaining.to_string())];
                            event(now, EventKind::Preempt, prev, &node.spec.id, detail);
                        }
                    }
                    first = false;
                }
                let take = node.queue[top].remaining.min(capacity);
                node.queue[top].remaining -= take;
                capacity -= take;
                served = true;
                if node.queue[top].remaining == 0 {
                    node.queue.remove(top);
                    node.last_served = None;
                    let finish = now + 1;
                    metrics.completed += 1;
                    let entry = responses.entry(jobs[job].priority_label).or_default();
                    entry.0 += finish - jobs[job].arrival;
                    entry.1 += 1;
                    event(now, EventKind::Complete, job, &node.spec.id, vec![("finish", finish.to_string())]);
                } else {
                    node.last_served = Some(job);
                }
            }
            if served {
                node.busy_ticks += 1;
            }
        }

        // Hard jobs that cannot finish by their deadline any more are dropped.
        let end = now + 1;
        for node in nodes.iter_mut() {
            let mut k = 0;
            while k < node.queue.len() {
                let job = node.queue[k].job;
                if jobs[job].hard_deadline().is_some_and(|d| d <= end) {
                    let left = node.queue.remove(k).remaining;
                    if node.last_served == Some(job) {
                        node.last_served = None;
                    }
                    metrics.failed_deadline += 1;
                    event(now, EventKind::Fail, job, &node.spec.id, vec![("reason", "deadline".into()), ("remaining", left.to_string())]);
                } else {
                    k += 1;
                }
            }
        }
        let mut k = 0;
        while k < transit.len() {
            let job = transit[k].job;
            if jobs[job].hard_deadline().is_some_and(|d| d <= end) {
                let t = transit.remove(k);
                metrics.failed_deadline += 1;
                event(now, EventKind::Fail, job, &nodes[t.node].spec.id, vec![("reason", "deadline_in_transit".into())]);
            } else {
                k += 1;
            }
        }
    }

    metrics.in_flight_at_horizon =
        nodes.iter().map(|n| n.queue.len() as u64).sum::<u64>() + transit.len() as u64 + stranded;
    for node in &nodes {
        metrics.utilization.insert(node.spec.id.clone(), node.busy_ticks as f64 / scenario.horizon as f64);
    }
    metrics.mean_response = responses.into_iter().map(|(label, (sum, count))| (label, sum as f64 / count as f64)).collect();
    Ok((metrics, log))
}

/// Frames arriving once per tick at a slow camera node, each needing two units
/// within two ticks. With `remote`, a fast rear node one tick away is added.
pub fn camera_frames(frames: u64, remote: bool, admission_policy: AdmissionPolicy) -> SimScenario {
    let mut nodes = vec![NodeSpec { id: "camera".into(), rate: 1, link_latency: 0, zone: Zone::Hostile }];
    if remote {
        nodes.push(NodeSpec { id: "hpc".into(), rate: 4, link_latency: 1, zone: Zone::Rear });
    }
    let jobs = (0..frames)
        .map(|t| JobSpec {
            id: format!("frame{t:03}"),
            arrival: t,
            work: 2,
            deadline_class: DeadlineClass::Hard { deadline: t + 2 },
            priority_label: 1,
            origin_node: "camera".into(),
        })
        .collect();
    SimScenario { nodes, jobs, horizon: frames + 2, admission_policy, assignment_policy: AssignmentPolicy::EarliestFinish }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(id: &str, rate: u32, latency: u64, zone: Zone) -> NodeSpec {
        NodeSpec { id: id.into(), rate, link_latency: latency, zone }
    }

    fn hard(id: &str, arrival: u64, work: u32, deadline: u64) -> JobSpec {
        JobSpec {
            id: id.into(),
            arrival,
            work,
            deadline_class: DeadlineClass::Hard { deadline },
            priority_label: 1,
            origin_node: "n0".into(),
        }
    }

    #[test]
    fn admission_examples() {
        let state = NodeState::new(node("n0", 1, 0, Zone::Hostile));
        let tight = hard("j", 5, 3, 7);
        assert_eq!(local_admission(&state, &tight, AdmissionPolicy::Terminate, 5, 100), Decision::Terminate);
        assert_eq!(local_admission(&state, &tight, AdmissionPolicy::Offload, 5, 100), Decision::Offload);
        let exact = hard("j", 5, 3, 8);
        assert_eq!(local_admission(&state, &exact, AdmissionPolicy::Terminate, 5, 100), Decision::Admit);
    }

    #[test]
    fn flexible_admission() {
        let mut state = NodeState::new(node("n0", 1, 0, Zone::Hostile));
        let filler = hard("f", 0, 9, 20);
        state.enqueue(0, &filler, 9);
        let flex = JobSpec { deadline_class: DeadlineClass::Flexible { weight: 1.0 }, ..hard("x", 0, 2, 1) };
        assert_eq!(local_admission(&state, &flex, AdmissionPolicy::Terminate, 0, 5), Decision::Admit);
        assert_eq!(local_admission(&state, &flex, AdmissionPolicy::Offload, 0, 5), Decision::Offload);
        assert_eq!(local_admission(&state, &flex, AdmissionPolicy::Offload, 0, 11), Decision::Admit);
    }

    #[test]
    fn work_ahead_respects_labels() {
        let mut state = NodeState::new(node("n0", 2, 0, Zone::Hostile));
        let low = hard("low", 0, 4, 10);
        let high = JobSpec { priority_label: 3, ..hard("high", 0, 2, 10) };
        state.enqueue(0, &low, 4);
        state.enqueue(1, &high, 2);
        let urgent = JobSpec { priority_label: 2, ..hard("mid", 1, 1, 10) };
        assert_eq!(state.work_ahead(&urgent), 2);
        assert_eq!(state.projected_finish(&urgent, 1), 3);
    }

    #[test]
    fn assignment_examples() {
        let job = hard("j", 0, 4, 10);
        let cluster = vec![NodeState::new(node("a", 1, 0, Zone::Hostile)), NodeState::new(node("b", 1, 5, Zone::Hostile))];
        assert_eq!(global_assign(&cluster, &JobSpec { work: 1, ..job.clone() }, AssignmentPolicy::EarliestFinish, 0).unwrap(), "a");

        let mut busy = NodeState::new(node("fast", 4, 0, Zone::Hostile));
        busy.enqueue(9, &hard("q", 0, 8, 20), 8);
        let cluster = vec![NodeState::new(node("slow", 1, 0, Zone::Hostile)), busy];
        // slow: 0 + ceil(4/1) = 4; fast: 0 + ceil(12/4) = 3.
        assert_eq!(global_assign(&cluster, &job, AssignmentPolicy::EarliestFinish, 0).unwrap(), "fast");

        let flex = JobSpec { deadline_class: DeadlineClass::Flexible { weight: 1.0 }, ..job.clone() };
        let cluster = vec![NodeState::new(node("near", 8, 0, Zone::Hostile)), NodeState::new(node("far", 1, 9, Zone::Rear))];
        assert_eq!(global_assign(&cluster, &flex, AssignmentPolicy::PriorityFirst, 0).unwrap(), "far");
        assert_eq!(global_assign(&cluster, &job, AssignmentPolicy::PriorityFirst, 0).unwrap(), "near");

        assert_eq!(global_assign(&[], &job, AssignmentPolicy::EarliestFinish, 0), Err(SimError::NoRemoteNode("j".into())));
    }

    #[test]
    fn ties_go_to_smaller_id() {
        let job = hard("j", 0, 2, 10);
        let cluster = vec![NodeState::new(node("b", 1, 0, Zone::Rear)), NodeState::new(node("a", 1, 0, Zone::Rear))];
        assert_eq!(global_assign(&cluster, &job, AssignmentPolicy::EarliestFinish, 0).unwrap(), "a");
    }

    fn scenario(nodes: Vec<NodeSpec>, jobs: Vec<JobSpec>, horizon: u64) -> SimScenario {
        SimScenario {
            nodes,
            jobs,
            horizon,
            admission_policy: AdmissionPolicy::Offload,
            assignment_policy: AssignmentPolicy::EarliestFinish,
        }
    }

    #[test]
    fn no_jobs() {
        let (m, log) = run_simulation(&scenario(vec![node("n0", 1, 0, Zone::Hostile)], vec![], 5), 0).unwrap();
        assert_eq!(m.dispositions(), 0);
        assert_eq!(m.utilization["n0"], 0.0);
        assert!(log.is_empty());
    }

    #[test]
    fn two_unit_jobs() {
        let jobs = vec![hard("a", 0, 1, 10), hard("b", 3, 1, 10)];
        let (m, _) = run_simulation(&scenario(vec![node("n0", 1, 0, Zone::Hostile)], jobs, 10), 0).unwrap();
        assert_eq!(m.completed, 2);
        assert_eq!(m.failed_deadline, 0);
        assert_eq!(m.utilization["n0"], 0.2);
        assert_eq!(m.mean_response[&1], 1.0);
    }

    #[test]
    fn preemption_keeps_work() {
        let low = JobSpec { deadline_class: DeadlineClass::Flexible { weight: 1.0 }, ..hard("low", 0, 4, 1) };
        let high = JobSpec { priority_label: 5, ..hard("high", 1, 2, 10) };
        let (m, log) = run_simulation(&scenario(vec![node("n0", 1, 0, Zone::Hostile)], vec![low, high], 10), 0).unwrap();
        assert_eq!(m.completed, 2);
        let text = format_log(&log);
        assert!(text.contains("tick 1 preempt job=low node=n0 detail=by=high,remaining=3\n"), "{text}");
        assert!(text.contains("tick 2 complete job=high node=n0 detail=finish=3\n"));
        // low: 1 unit before preemption, 3 after high finishes; done at tick 6.
        assert!(text.contains("tick 5 complete job=low node=n0 detail=finish=6\n"));
    }

    #[test]
    fn hard_jobs_fail_at_deadline() {
        let jobs = vec![hard("big", 0, 5, 20), JobSpec { priority_label: 9, ..hard("urgent", 1, 3, 3) }];
        let mut s = scenario(vec![node("n0", 1, 0, Zone::Hostile)], jobs, 10);
        s.admission_policy = AdmissionPolicy::Terminate;
        let (m, log) = run_simulation(&s, 0).unwrap();
        // urgent: projected 1 + 3 = 4 > 3, terminated at admission.
        assert_eq!(m.terminated_at_admission, 1);
        assert_eq!(m.completed, 1);
        assert_eq!(log.iter().filter(|e| e.kind == EventKind::Terminate).count(), 1);
    }

    #[test]
    fn camera_frames_offload_helps() {
        let (terminate, _) = run_simulation(&camera_frames(10, false, AdmissionPolicy::Terminate), 0).unwrap();
        assert_eq!(terminate.completed, 5);
        assert_eq!(terminate.terminated_at_admission, 5);
        let (offload, _) = run_simulation(&camera_frames(10, true, AdmissionPolicy::Offload), 0).unwrap();
        assert_eq!(offload.completed, 10);
        assert_eq!(offload.offloaded, 5);
        assert!(offload.completed > terminate.completed);
    }

    #[test]
    fn offload_without_remote() {
        let (m, log) = run_simulation(&camera_frames(4, false, AdmissionPolicy::Offload), 0).unwrap();
        assert_eq!(m.offloaded, 2);
        assert_eq!(m.failed_deadline, 2);
        assert!(log.iter().any(|e| e.kind == EventKind::Fail && e.detail[0].1 == "no_remote_node"));
        assert_eq!(m.dispositions(), m.total_jobs);
    }

    #[test]
    fn validation_locators() {
        let mut bad = camera_frames(2, false, AdmissionPolicy::Terminate);
        bad.horizon = 0;
        bad.jobs[1].origin_node = "ghost".into();
        bad.jobs[0].deadline_class = DeadlineClass::Hard { deadline: 0 };
        let paths: Vec<String> = bad.issues().into_iter().map(|i| i.path).collect();
        assert!(paths.contains(&"horizon".to_string()));
        assert!(paths.contains(&"jobs[1].origin_node".to_string()));
        assert!(paths.contains(&"jobs[0].deadline_class.deadline".to_string()));
        assert!(run_simulation(&bad, 0).is_err());
    }
}
