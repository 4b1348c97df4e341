use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Result, ScenarioError, SCHEMA_VERSION};
use crate::model::{Issue, MissionSpec, ModelError, ProblemInstance};
use crate::sim::{AdmissionPolicy, AssignmentPolicy, DeadlineClass, JobSpec, NodeSpec, SimScenario, Zone};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    Optimize,
    Simulate,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioDocument {
    Optimize(ProblemInstance),
    Simulate(SimScenario),
}

impl ScenarioDocument {
    pub fn kind(&self) -> ScenarioKind {
        match self {
            ScenarioDocument::Optimize(_) => ScenarioKind::Optimize,
            ScenarioDocument::Simulate(_) => ScenarioKind::Simulate,
        }
    }

    /// Accepted but noteworthy values: a fraction of exactly 1 leaves no room
    /// for approximation.
    pub fn warnings(&self) -> Vec<Issue> {
        match self {
            ScenarioDocument::Optimize(instance) => instance
                .missions()
                .iter()
                .enumerate()
                .filter(|(_, m)| m.fraction == 1.0)
                .map(|(i, _)| Issue::new(format!("missions[{i}].fraction"), "fraction 1 requires the full work"))
                .collect(),
            ScenarioDocument::Simulate(_) => Vec::new(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OptimizeFile {
    schema_version: i64,
    kind: String,
    grid: GridFile,
    platform: PlatformFile,
    missions: Vec<MissionFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    interaction: Option<InteractionFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridFile {
    slots: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlatformFile {
    capacity: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MissionFile {
    id: String,
    release: i64,
    deadline: i64,
    total_work: i64,
    fraction: f64,
    rate_cap: i64,
    rating: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InteractionFile {
    gamma: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimulateFile {
    schema_version: i64,
    kind: String,
    horizon: i64,
    policies: PoliciesFile,
    nodes: Vec<NodeFile>,
    jobs: Vec<JobFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PoliciesFile {
    admission: AdmissionPolicy,
    assignment: AssignmentPolicy,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeFile {
    id: String,
    rate: i64,
    link_latency: i64,
    zone: Zone,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JobFile {
    id: String,
    arrival: i64,
    work: i64,
    deadline_class: DeadlineFile,
    priority_label: i64,
    origin_node: String,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum DeadlineFile {
    Hard { deadline: i64 },
    Flexible { weight: f64 },
}

/// Collects integer range problems while converting file fields.
struct Ints(Vec<Issue>);

impl Ints {
    fn get<T: TryFrom<i64> + Default>(&mut self, path: impl FnOnce() -> String, value: i64) -> T {
        match T::try_from(value) {
            Ok(v) if value >= 0 => v,
            _ => {
                self.0.push(Issue::new(path(), format!("{value} is not a valid nonnegative integer here")));
                T::default()
            }
        }
    }
}

/// Parses and fully validates a scenario document.
pub fn load_scenario(text: &str) -> Result<ScenarioDocument> {
    let value: Value = serde_json::from_str(text).map_err(|e| ScenarioError::Syntax(e.to_string()))?;
    let version = value
        .get("schema_version")
        .and_then(Value::as_i64)
        .ok_or_else(|| ScenarioError::Invalid(vec![Issue::new("schema_version", "missing or not an integer")]))?;
    if version != SCHEMA_VERSION {
        return Err(ScenarioError::UnsupportedVersion(version));
    }
    match value.get("kind").and_then(Value::as_str) {
        Some("optimize") => {
            let file: OptimizeFile = serde_json::from_value(value).map_err(|e| ScenarioError::Syntax(e.to_string()))?;
            optimize_from_file(file).map(ScenarioDocument::Optimize)
        }
        Some("simulate") => {
            let file: SimulateFile = serde_json::from_value(value).map_err(|e| ScenarioError::Syntax(e.to_string()))?;
            simulate_from_file(file).map(ScenarioDocument::Simulate)
        }
        Some(other) => Err(ScenarioError::UnknownKind(other.to_string())),
        None => Err(ScenarioError::Invalid(vec![Issue::new("kind", "missing (expected optimize or simulate)")])),
    }
}

fn optimize_from_file(file: OptimizeFile) -> Result<ProblemInstance> {
    let mut ints = Ints(Vec::new());
    let slots: usize = ints.get(|| "grid.slots".into(), file.grid.slots);
    let missions: Vec<MissionSpec> = file
        .missions
        .into_iter()
        .enumerate()
        .map(|(i, m)| MissionSpec {
            release: ints.get(|| format!("missions[{i}].release"), m.release),
            deadline: ints.get(|| format!("missions[{i}].deadline"), m.deadline),
            total_work: ints.get(|| format!("missions[{i}].total_work"), m.total_work),
            rate_cap: ints.get(|| format!("missions[{i}].rate_cap"), m.rate_cap),
            id: m.id,
            fraction: m.fraction,
            rating: m.rating,
        })
        .collect();
    let gamma = file.interaction.map(|g| g.gamma);
    let mut issues = ints.0;
    issues.extend(ProblemInstance::issues(slots, &file.platform.capacity, &missions, gamma.as_deref()));
    if !issues.is_empty() {
        return Err(ScenarioError::Invalid(issues));
    }
    ProblemInstance::new(slots, file.platform.capacity, missions, gamma).map_err(|e| match e {
        ModelError::Invalid(issues) => ScenarioError::Invalid(issues),
        other => ScenarioError::Domain(other.to_string()),
    })
}

fn simulate_from_file(file: SimulateFile) -> Result<SimScenario> {
    let mut ints = Ints(Vec::new());
    let horizon = ints.get(|| "horizon".into(), file.horizon);
    let nodes = file
        .nodes
        .into_iter()
        .enumerate()
        .map(|(k, n)| NodeSpec {
            rate: ints.get(|| format!("nodes[{k}].rate"), n.rate),
            link_latency: ints.get(|| format!("nodes[{k}].link_latency"), n.link_latency),
            id: n.id,
            zone: n.zone,
        })
        .collect();
    let jobs = file
        .jobs
        .into_iter()
        .enumerate()
        .map(|(k, j)| JobSpec {
            arrival: ints.get(|| format!("jobs[{k}].arrival"), j.arrival),
            work: ints.get(|| format!("jobs[{k}].work"), j.work),
            deadline_class: match j.deadline_class {
                DeadlineFile::Hard { deadline } => {
                    DeadlineClass::Hard { deadline: ints.get(|| format!("jobs[{k}].deadline_class.deadline"), deadline) }
                }
                DeadlineFile::Flexible { weight } => DeadlineClass::Flexible { weight },
            },
            priority_label: ints.get(|| format!("jobs[{k}].priority_label"), j.priority_label),
            id: j.id,
            origin_node: j.origin_node,
        })
        .collect();
    let scenario = SimScenario {
        nodes,
        jobs,
        horizon,
        admission_policy: file.policies.admission,
        assignment_policy: file.policies.assignment,
    };
    let mut issues = ints.0;
    issues.extend(scenario.issues());
    if issues.is_empty() {
        Ok(scenario)
    } else {
        Err(ScenarioError::Invalid(issues))
    }
}

/// Pretty-printed JSON; exact inverse of [`load_scenario`].
pub fn save_scenario(document: &ScenarioDocument) -> String {
    let text = match document {
        ScenarioDocument::Optimize(instance) => serde_json::to_string_pretty(&OptimizeFile {
            schema_version: SCHEMA_VERSION,
            kind: "optimize".into(),
            grid: GridFile { slots: instance.slots() as i64 },
            platform: PlatformFile { capacity: instance.platform().capacity().to_vec() },
            missions: instance
                .missions()
                .iter()
                .map(|m| MissionFile {
                    id: m.id.clone(),
                    release: m.release as i64,
                    deadline: m.deadline as i64,
                    total_work: i64::from(m.total_work),
                    fraction: m.fraction,
                    rate_cap: i64::from(m.rate_cap),
                    rating: m.rating,
                })
                .collect(),
            interaction: Some(InteractionFile { gamma: instance.interaction().matrix().to_vec() }),
        }),
        ScenarioDocument::Simulate(s) => serde_json::to_string_pretty(&SimulateFile {
            schema_version: SCHEMA_VERSION,
            kind: "simulate".into(),
            horizon: s.horizon as i64,
            policies: PoliciesFile { admission: s.admission_policy, assignment: s.assignment_policy },
            nodes: s
                .nodes
                .iter()
                .map(|n| NodeFile { id: n.id.clone(), rate: i64::from(n.rate), link_latency: n.link_latency as i64, zone: n.zone })
                .collect(),
            jobs: s
                .jobs
                .iter()
                .map(|j| JobFile {
                    id: j.id.clone(),
                    arrival: j.arrival as i64,
                    work: i64::from(j.work),
                    deadline_class: match j.deadline_class {
                        DeadlineClass::Hard { deadline } => DeadlineFile::Hard { deadline: deadline as i64 },
                        DeadlineClass::Flexible { weight } => DeadlineFile::Flexible { weight },
                    },
                    priority_label: i64::from(j.priority_label),
                    origin_node: j.origin_node.clone(),
                })
                .collect(),
        }),
    };
    let mut text = text.expect("scenario documents always serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "schema_version": 1,
        "kind": "optimize",
        "grid": {"slots": 2},
        "platform": {"capacity": [1.0, 2]},
        "missions": [
            {"id": "m0", "release": 0, "deadline": 2, "total_work": 2, "fraction": 0.5, "rate_cap": 1, "rating": 3}
        ]
    }"#;

    fn paths(err: ScenarioError) -> Vec<String> {
        err.issues().iter().map(|i| i.path.clone()).collect()
    }

    #[test]
    fn minimal_document() {
        let ScenarioDocument::Optimize(instance) = load_scenario(MINIMAL).unwrap() else { panic!("wrong kind") };
        assert_eq!(instance.len(), 1);
        assert_eq!(instance.platform().capacity(), &[1.0, 2.0]);
        assert!(instance.interaction().is_zero());
    }

    #[test]
    fn zero_fraction_is_located() {
        let text = MINIMAL.replace("\"fraction\": 0.5", "\"fraction\": 0");
        assert_eq!(paths(load_scenario(&text).unwrap_err()), vec!["missions[0].fraction"]);
    }

    #[test]
    fn asymmetric_gamma_names_both_indices() {
        let text = r#"{"schema_version": 1, "kind": "optimize", "grid": {"slots": 1}, "platform": {"capacity": [4]},
            "missions": [
                {"id": "a", "release": 0, "deadline": 1, "total_work": 1, "fraction": 1, "rate_cap": 1, "rating": 1},
                {"id": "b", "release": 0, "deadline": 1, "total_work": 1, "fraction": 1, "rate_cap": 1, "rating": 1}],
            "interaction": {"gamma": [[0, 1], [2, 0]]}}"#;
        let err = load_scenario(text).unwrap_err();
        let issue = &err.issues()[0];
        assert_eq!(issue.path, "interaction.gamma[0][1]");
        assert!(issue.message.contains("gamma[0][1]") && issue.message.contains("gamma[1][0]"));
    }

    #[test]
    fn negative_integers_are_located() {
        let text = MINIMAL.replace("\"release\": 0", "\"release\": -1");
        assert!(paths(load_scenario(&text).unwrap_err()).contains(&"missions[0].release".to_string()));
    }

    #[test]
    fn header_errors() {
        assert!(matches!(load_scenario("{"), Err(ScenarioError::Syntax(_))));
        let v2 = MINIMAL.replace("\"schema_version\": 1", "\"schema_version\": 2");
        assert_eq!(load_scenario(&v2).unwrap_err(), ScenarioError::UnsupportedVersion(2));
        let kind = MINIMAL.replace("optimize", "juggle");
        assert_eq!(load_scenario(&kind).unwrap_err(), ScenarioError::UnknownKind("juggle".into()));
        let extra = MINIMAL.replace("\"grid\"", "\"bogus\": 1, \"grid\"");
        assert!(matches!(load_scenario(&extra), Err(ScenarioError::Syntax(_))));
    }

    #[test]
    fn fraction_one_warns() {
        let text = MINIMAL.replace("\"fraction\": 0.5", "\"fraction\": 1.0");
        let doc = load_scenario(&text).unwrap();
        assert_eq!(doc.warnings().len(), 1);
        assert_eq!(doc.warnings()[0].path, "missions[0].fraction");
    }

    #[test]
    fn simulate_round_trip() {
        let doc = ScenarioDocument::Simulate(crate::sim::camera_frames(3, true, AdmissionPolicy::Offload));
        let text = save_scenario(&doc);
        assert!(text.contains("\"kind\": \"hard\""));
        assert_eq!(load_scenario(&text).unwrap(), doc);
    }

    #[test]
    fn simulate_validation() {
        let mut scenario = crate::sim::camera_frames(2, false, AdmissionPolicy::Terminate);
        scenario.horizon = 0;
        let text = save_scenario(&ScenarioDocument::Simulate(scenario));
        assert!(paths(load_scenario(&text).unwrap_err()).contains(&"horizon".to_string()));
    }
}
