//! Mission model for a power-budgeted platform.
//!
//! A [`ProblemInstance`] describes the platform capacity `P[τ]` on a grid of unit
//! slots, the missions competing for it, their priority ratings, and the pairwise
//! concurrency penalty. A [`Schedule`] grants integer compute units to each mission
//! per slot. Everything else in the crate is judged by the evaluation kernel here:
//!
//! ```text
//! usage(τ) = P[τ] - Σ_i w_i · a[i][τ] - Σ_{i<j} γ[i][j] · [a[i][τ] > 0] · [a[j][τ] > 0]
//! ```
//!
//! with `w_i = 1` in [`Mode::Raw`] and `w_i = R_i / N` in [`Mode::Rated`], where `N`
//! is the largest rating. A mission succeeds once it has received
//! `ceil(p_i · C_i)` units inside its window.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Slack allowed when deciding whether a slot's usage is negative.
///
/// Rated weights are arbitrary reals, so the same load summed in two orders can
/// disagree in the last ulp. Every feasibility decision in the crate uses this.
pub const CAPACITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("slot {slot} out of range for a grid of {slots} slots")]
    SlotOutOfRange { slot: usize, slots: usize },
    #[error("mission index {index} out of range ({len} missions)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{0}")]
    Domain(String),
    #[error("invalid instance: {}", .0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Issue>),
}

pub type Result<T, E = ModelError> = std::result::Result<T, E>;

/// A single invariant violation, located by a path such as `missions[2].fraction`.
#[derive(Debug, Clone, PartialEq)]
pub struct Issue {
    pub path: String,
    pub message: String,
}

impl Issue {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self { path: path.into(), message: message.into() }
    }
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// Weighting applied to allocated units when computing usage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every unit costs one unit of capacity.
    Raw,
    /// A unit of mission `i` costs `R_i / N`.
    Rated,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Raw => "raw",
            Mode::Rated => "rated",
        })
    }
}

impl FromStr for Mode {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(Mode::Raw),
            "rated" => Ok(Mode::Rated),
            other => Err(ModelError::Domain(format!("unknown mode `{other}` (expected raw or rated)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimeGrid {
    slots: usize,
}

impl TimeGrid {
    pub fn new(slots: usize) -> Result<Self> {
        if slots == 0 {
            return Err(ModelError::Domain("time grid needs at least one slot".into()));
        }
        Ok(Self { slots })
    }

    pub fn slots(&self) -> usize {
        self.slots
    }
}

/// One mission competing for platform capacity.
#[derive(Debug, Clone, PartialEq)]
pub struct MissionSpec {
    pub id: String,
    /// First slot in which the mission may run.
    pub release: usize,
    /// Work must be granted strictly before this slot.
    pub deadline: usize,
    /// Full amount of work `C_i`; allocations never exceed it.
    pub total_work: u32,
    /// Fraction `p_i` of the full work that counts as mission success.
    pub fraction: f64,
    /// Maximum units the mission can consume in one slot.
    pub rate_cap: u32,
    pub rating: f64,
}

impl MissionSpec {
    /// Units needed for success: `ceil(p_i · C_i)`, clamped to `[1, C_i]`.
    pub fn required_work(&self) -> u32 {
        // 0.3 * 10.0 evaluates to 3.0000000000000004; don't round that up to 4.
        let raw = (self.fraction * f64::from(self.total_work) - 1e-9).ceil();
        (raw.max(1.0) as u32).min(self.total_work.max(1))
    }

    pub fn window(&self) -> Range<usize> {
        self.release..self.deadline
    }

    fn issues(&self, index: usize, slots: usize) -> Vec<Issue> {
        let at = |field: &str| format!("missions[{index}].{field}");
        let mut out = Vec::new();
        if self.deadline <= self.release {
            out.push(Issue::new(at("deadline"), format!("deadline {} must exceed release {}", self.deadline, self.release)));
        }
        if self.deadline > slots {
            out.push(Issue::new(at("deadline"), format!("deadline {} is past the last slot boundary {slots}", self.deadline)));
        }
        if self.total_work == 0 {
            out.push(Issue::new(at("total_work"), "total work must be at least 1"));
        }
        if !(self.fraction > 0.0 && self.fraction <= 1.0) {
            out.push(Issue::new(at("fraction"), format!("fraction {} must lie in (0, 1]", self.fraction)));
        }
        if self.rate_cap == 0 {
            out.push(Issue::new(at("rate_cap"), "rate cap must be at least 1"));
        }
        if !(self.rating.is_finite() && self.rating > 0.0) {
            out.push(Issue::new(at("rating"), format!("rating {} must be a positive finite number", self.rating)));
        }
        out
    }
}

/// Pairwise concurrency penalty: `γ[i][j]` is charged in every slot where both
/// missions are active.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionModel {
    gamma: Vec<Vec<f64>>,
}

impl InteractionModel {
    pub fn zero(n: usize) -> Self {
        Self { gamma: vec![vec![0.0; n]; n] }
    }

    pub fn new(gamma: Vec<Vec<f64>>) -> Result<Self> {
        let issues = gamma_issues(&gamma, gamma.len());
        if issues.is_empty() {
            Ok(Self { gamma })
        } else {
            Err(ModelError::Invalid(issues))
        }
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.gamma[i][j]
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.gamma
    }

    /// Total penalty mission `i` shares with all others.
    pub fn degree(&self, i: usize) -> f64 {
        self.gamma[i].iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.iter().flatten().all(|&g| g == 0.0)
    }
}

fn gamma_issues(gamma: &[Vec<f64>], n: usize) -> Vec<Issue> {
    let mut out = Vec::new();
    if gamma.len() != n {
        out.push(Issue::new("interaction.gamma", format!("expected {n} rows, found {}", gamma.len())));
        return out;
    }
    for (i, row) in gamma.iter().enumerate() {
        if row.len() != n {
            out.push(Issue::new(format!("interaction.gamma[{i}]"), format!("expected {n} columns, found {}", row.len())));
        }
    }
    if !out.is_empty() {
        return out;
    }
    for i in 0..n {
        for j in 0..n {
            let g = gamma[i][j];
            if !(g.is_finite() && g >= 0.0) {
                out.push(Issue::new(format!("interaction.gamma[{i}][{j}]"), format!("coefficient {g} must be finite and nonnegative")));
            } else if i == j && g != 0.0 {
                out.push(Issue::new(format!("interaction.gamma[{i}][{i}]"), "diagonal must be zero"));
            } else if i < j && g != gamma[j][i] {
                out.push(Issue::new(
                    format!("interaction.gamma[{i}][{j}]"),
                    format!("gamma[{i}][{j}] = {g} differs from gamma[{j}][{i}] = {}", gamma[j][i]),
                ));
            }
        }
    }
    out
}

/// `w_i = R_i / N` with `N = max_i R_i`.
pub fn normalized_weights(ratings: &[f64]) -> Result<Vec<f64>> {
    if ratings.is_empty() {
        return Err(ModelError::Domain("no ratings to normalize".into()));
    }
    if let Some(bad) = ratings.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
        return Err(ModelError::Domain(format!("rating {bad} must be positive and finite")));
    }
    let max = ratings.iter().copied().fold(f64::MIN, f64::max);
    Ok(ratings.iter().map(|r| r / max).collect())
}

/// Per-mission priority ratings with their maximum and descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct RatingTable {
    ratings: Vec<f64>,
    max: f64,
    order: Vec<usize>,
}

impl RatingTable {
    pub fn new(ratings: Vec<f64>) -> Result<Self> {
        if let Some(bad) = ratings.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
            return Err(ModelError::Domain(format!("rating {bad} must be positive and finite")));
        }
        let max = ratings.iter().copied().fold(0.0, f64::max);
        let mut order: Vec<usize> = (0..ratings.len()).collect();
        // Stable sort keeps index order among equal ratings.
        order.sort_by(|&a, &b| ratings[b].total_cmp(&ratings[a]));
        Ok(Self { ratings, max, order })
    }

    pub fn ratings(&self) -> &[f64] {
        &self.ratings
    }

    pub fn rating(&self, i: usize) -> f64 {
        self.ratings[i]
    }

    /// `N`, the largest rating; zero for an empty table.
    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.ratings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ratings.is_empty()
    }

    pub fn weights(&self) -> Vec<f64> {
        self.ratings.iter().map(|r| r / self.max).collect()
    }

    pub fn total(&self) -> f64 {
        self.ratings.iter().sum()
    }

    /// Exchanges the ratings of missions `i` and `j`, returning a new table.
    pub fn swap(&self, i: usize, j: usize) -> Result<Self> {
        let len = self.ratings.len();
        for index in [i, j] {
            if index >= len {
                return Err(ModelError::IndexOutOfRange { index, len });
            }
        }
        let mut ratings = self.ratings.clone();
        ratings.swap(i, j);
        Self::new(ratings)
    }
}

pub fn swap_ratings(table: &RatingTable, i: usize, j: usize) -> Result<RatingTable> {
    table.swap(i, j)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlatformProfile {
    capacity: Vec<f64>,
}

impl PlatformProfile {
    pub fn new(capacity: Vec<f64>) -> Result<Self> {
        if let Some((slot, c)) = capacity.iter().enumerate().find(|(_, c)| !(c.is_finite() && **c >= 0.0)) {
            return Err(ModelError::Invalid(vec![Issue::new(
                format!("platform.capacity[{slot}]"),
                format!("capacity {c} must be finite and nonnegative"),
            )]));
        }
        Ok(Self { capacity })
    }

    pub fn capacity(&self) -> &[f64] {
        &self.capacity
    }

    pub fn at(&self, slot: usize) -> f64 {
        self.capacity[slot]
    }

    pub fn total(&self) -> f64 {
        self.capacity.iter().sum()
    }
}

/// A complete, validated optimization instance.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    grid: TimeGrid,
    missions: Vec<MissionSpec>,
    platform: PlatformProfile,
    interaction: InteractionModel,
    ratings: RatingTable,
}

impl ProblemInstance {
    /// Builds an instance, reporting every invariant violation at once.
    pub fn new(
        slots: usize,
        capacity: Vec<f64>,
        missions: Vec<MissionSpec>,
        gamma: Option<Vec<Vec<f64>>>,
    ) -> Result<Self> {
        let issues = Self::issues(slots, &capacity, &missions, gamma.as_deref());
        if !issues.is_empty() {
            return Err(ModelError::Invalid(issues));
        }
        let n = missions.len();
        let ratings = RatingTable::new(missions.iter().map(|m| m.rating).collect())?;
        Ok(Self {
            grid: TimeGrid::new(slots)?,
            platform: PlatformProfile::new(capacity)?,
            interaction: gamma.map(|g| InteractionModel { gamma: g }).unwrap_or_else(|| InteractionModel::zero(n)),
            ratings,
            missions,
        })
    }

    /// All invariant violations of the raw parts, each with a locator.
    pub fn issues(slots: usize, capacity: &[f64], missions: &[MissionSpec], gamma: Option<&[Vec<f64>]>) -> Vec<Issue> {
        let mut out = Vec::new();
        if slots == 0 {
            out.push(Issue::new("grid.slots", "must be at least 1"));
        }
        if capacity.len() != slots {
            out.push(Issue::new("platform.capacity", format!("expected {slots} entries, found {}", capacity.len())));
        }
        for (slot, c) in capacity.iter().enumerate() {
            if !(c.is_finite() && *c >= 0.0) {
                out.push(Issue::new(format!("platform.capacity[{slot}]"), format!("capacity {c} must be finite and nonnegative")));
            }
        }
        for (i, m) in missions.iter().enumerate() {
            out.extend(m.issues(i, slots));
        }
        for (i, m) in missions.iter().enumerate() {
            if let Some(j) = missions[..i].iter().position(|other| other.id == m.id) {
                out.push(Issue::new(format!("missions[{i}].id"), format!("duplicate id `{}` (also missions[{j}])", m.id)));
            }
        }
        if let Some(g) = gamma {
            out.extend(gamma_issues(g, missions.len()));
        }
        out
    }

    pub fn slots(&self) -> usize {
        self.grid.slots()
    }

    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    pub fn len(&self) -> usize {
        self.missions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.missions.is_empty()
    }

    pub fn missions(&self) -> &[MissionSpec] {
        &self.missions
    }

    pub fn mission(&self, i: usize) -> &MissionSpec {
        &self.missions[i]
    }

    pub fn platform(&self) -> &PlatformProfile {
        &self.platform
    }

    pub fn interaction(&self) -> &InteractionModel {
        &self.interaction
    }

    pub fn ratings(&self) -> &RatingTable {
        &self.ratings
    }

    /// Per-mission weight applied to allocated units under `mode`.
    pub fn weights(&self, mode: Mode) -> Vec<f64> {
        match mode {
            Mode::Raw => vec![1.0; self.len()],
            Mode::Rated => self.ratings.weights(),
        }
    }

    /// Replaces the rating table (e.g. after a swap). Mission specs follow the table.
    pub fn with_ratings(&self, table: RatingTable) -> Result<Self> {
        if table.len() != self.len() {
            return Err(ModelError::Shape(format!("rating table has {} entries for {} missions", table.len(), self.len())));
        }
        let mut next = self.clone();
        for (m, r) in next.missions.iter_mut().zip(table.ratings()) {
            m.rating = *r;
        }
        next.ratings = table;
        Ok(next)
    }

    pub fn swap_ratings(&self, i: usize, j: usize) -> Result<Self> {
        self.with_ratings(self.ratings.swap(i, j)?)
    }

    /// Multiplies every rating by `factor`.
    pub fn scale_ratings(&self, factor: f64) -> Result<Self> {
        self.with_ratings(RatingTable::new(self.ratings.ratings().iter().map(|r| r * factor).collect())?)
    }

    pub fn with_capacity(&self, capacity: Vec<f64>) -> Result<Self> {
        let gamma = self.interaction.gamma.clone();
        Self::new(self.slots(), capacity, self.missions.clone(), Some(gamma))
    }

    pub fn with_mission(&self, i: usize, mission: MissionSpec) -> Result<Self> {
        if i >= self.len() {
            return Err(ModelError::IndexOutOfRange { index: i, len: self.len() });
        }
        let mut missions = self.missions.clone();
        missions[i] = mission;
        Self::new(self.slots(), self.platform.capacity.clone(), missions, Some(self.interaction.gamma.clone()))
    }
}

/// Integer compute units granted to each mission in each slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Schedule {
    alloc: Vec<Vec<u32>>,
}

impl Schedule {
    pub fn zeros(missions: usize, slots: usize) -> Self {
        Self { alloc: vec![vec![0; slots]; missions] }
    }

    pub fn for_instance(instance: &ProblemInstance) -> Self {
        Self::zeros(instance.len(), instance.slots())
    }

    pub fn from_rows(alloc: Vec<Vec<u32>>) -> Self {
        Self { alloc }
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.alloc
    }

    pub fn get(&self, mission: usize, slot: usize) -> u32 {
        self.alloc[mission][slot]
    }

    pub fn set(&mut self, mission: usize, slot: usize, units: u32) {
        self.alloc[mission][slot] = units;
    }

    pub fn clear_mission(&mut self, mission: usize) {
        self.alloc[mission].iter_mut().for_each(|a| *a = 0);
    }

    pub fn mission_total(&self, mission: usize) -> u32 {
        self.alloc[mission].iter().sum()
    }

    fn check_shape(&self, instance: &ProblemInstance) -> Result<()> {
        if self.alloc.len() != instance.len() {
            return Err(ModelError::Shape(format!("schedule has {} rows for {} missions", self.alloc.len(), instance.len())));
        }
        if let Some((i, row)) = self.alloc.iter().enumerate().find(|(_, r)| r.len() != instance.slots()) {
            return Err(ModelError::Shape(format!("schedule row {i} has {} slots, grid has {}", row.len(), instance.slots())));
        }
        Ok(())
    }
}

fn check_slot(instance: &ProblemInstance, slot: usize) -> Result<()> {
    if slot >= instance.slots() {
        return Err(ModelError::SlotOutOfRange { slot, slots: instance.slots() });
    }
    Ok(())
}

/// Concurrency penalty charged in `slot`: the sum of `γ[i][j]` over active pairs.
pub fn interaction_cost(instance: &ProblemInstance, schedule: &Schedule, slot: usize) -> Result<f64> {
    schedule.check_shape(instance)?;
    check_slot(instance, slot)?;
    Ok(interaction_in_slot(instance, schedule, slot))
}

fn interaction_in_slot(instance: &ProblemInstance, schedule: &Schedule, slot: usize) -> f64 {
    let active: Vec<usize> = (0..instance.len()).filter(|&i| schedule.get(i, slot) > 0).collect();
    let gamma = instance.interaction();
    let mut cost = 0.0;
    for (k, &i) in active.iter().enumerate() {
        for &j in &active[k + 1..] {
            cost += gamma.get(i, j);
        }
    }
    cost
}

/// Net capacity left in `slot`. Negative values are capacity violations.
pub fn evaluate_usage(instance: &ProblemInstance, schedule: &Schedule, mode: Mode, slot: usize) -> Result<f64> {
    schedule.check_shape(instance)?;
    check_slot(instance, slot)?;
    Ok(usage_in_slot(instance, schedule, &instance.weights(mode), slot))
}

fn usage_in_slot(instance: &ProblemInstance, schedule: &Schedule, weights: &[f64], slot: usize) -> f64 {
    let load: f64 = weights.iter().enumerate().map(|(i, w)| w * f64::from(schedule.get(i, slot))).sum();
    instance.platform().at(slot) - load - interaction_in_slot(instance, schedule, slot)
}

/// Usage for every slot of the grid.
pub fn usage_profile(instance: &ProblemInstance, schedule: &Schedule, mode: Mode) -> Result<Vec<f64>> {
    schedule.check_shape(instance)?;
    let weights = instance.weights(mode);
    Ok((0..instance.slots()).map(|t| usage_in_slot(instance, schedule, &weights, t)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Units granted outside `[release, deadline)`.
    Window,
    RateCap,
    TotalWork,
    /// Usage below zero in a slot.
    Capacity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub mission: Option<usize>,
    pub slot: Option<usize>,
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityVerdict {
    pub feasible: bool,
    pub violations: Vec<Violation>,
}

pub fn check_feasibility(instance: &ProblemInstance, schedule: &Schedule, mode: Mode) -> Result<FeasibilityVerdict> {
    schedule.check_shape(instance)?;
    let mut violations = Vec::new();
    for (i, m) in instance.missions().iter().enumerate() {
        for slot in 0..instance.slots() {
            let a = schedule.get(i, slot);
            if a > 0 && !m.window().contains(&slot) {
                violations.push(Violation { kind: ViolationKind::Window, mission: Some(i), slot: Some(slot), magnitude: f64::from(a) });
            }
            if a > m.rate_cap {
                violations.push(Violation {
                    kind: ViolationKind::RateCap,
                    mission: Some(i),
                    slot: Some(slot),
                    magnitude: f64::from(a - m.rate_cap),
                });
            }
        }
        let total = schedule.mission_total(i);
        if total > m.total_work {
            violations.push(Violation {
                kind: ViolationKind::TotalWork,
                mission: Some(i),
                slot: None,
                magnitude: f64::from(total - m.total_work),
            });
        }
    }
    let weights = instance.weights(mode);
    for slot in 0..instance.slots() {
        let usage = usage_in_slot(instance, schedule, &weights, slot);
        if usage < -CAPACITY_TOLERANCE {
            violations.push(Violation { kind: ViolationKind::Capacity, mission: None, slot: Some(slot), magnitude: -usage });
        }
    }
    Ok(FeasibilityVerdict { feasible: violations.is_empty(), violations })
}

/// Whether each mission received its required work before its deadline.
pub fn mission_success(instance: &ProblemInstance, schedule: &Schedule) -> Result<Vec<bool>> {
    schedule.check_shape(instance)?;
    Ok(instance
        .missions()
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let done: u32 = schedule.rows()[i][..m.deadline.min(instance.slots())].iter().sum();
            done >= m.required_work()
        })
        .collect())
}

/// Objective value with its tie-break.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Objective {
    /// Σ R_i over successful missions.
    pub value: f64,
    /// Σ_τ rated usage; more is better.
    pub headroom: f64,
}

impl Objective {
    pub const HEADROOM_EPS: f64 = 1e-9;

    /// Strict improvement on (value, headroom).
    pub fn improves_on(&self, other: &Objective) -> bool {
        self.value > other.value || (self.value == other.value && self.headroom > other.headroom + Self::HEADROOM_EPS)
    }
}

pub fn objective(instance: &ProblemInstance, schedule: &Schedule) -> Result<Objective> {
    let success = mission_success(instance, schedule)?;
    let value = success.iter().zip(instance.ratings().ratings()).filter(|(s, _)| **s).map(|(_, r)| r).sum();
    let headroom = usage_profile(instance, schedule, Mode::Rated)?.iter().sum();
    Ok(Objective { value, headroom })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn mission(id: &str, release: usize, deadline: usize, total_work: u32, fraction: f64, rate_cap: u32, rating: f64) -> MissionSpec {
        MissionSpec { id: id.into(), release, deadline, total_work, fraction, rate_cap, rating }
    }

    /// Two missions over three slots of capacity 2, ratings (2, 1); each needs 3 units.
    pub fn instance_a() -> ProblemInstance {
        ProblemInstance::new(
            3,
            vec![2.0; 3],
            vec![mission("a", 0, 3, 3, 1.0, 2, 2.0), mission("b", 0, 3, 4, 0.75, 2, 1.0)],
            None,
        )
        .unwrap()
    }
}
