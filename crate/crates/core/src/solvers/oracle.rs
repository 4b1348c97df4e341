//! Exhaustive reference solver for tiny instances.
//!
//! Deliberately shares nothing with the solvers or the model's evaluation
//! kernel beyond reading instance fields: usage, interaction, success and the
//! objective are recomputed inline.

use super::{Result, SolveError};
use crate::model::{Mode, ProblemInstance, Schedule, CAPACITY_TOLERANCE};

/// Maximum number of candidate matrices the oracle will enumerate.
pub const ORACLE_STATE_CAP: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub value: f64,
    pub headroom: f64,
    pub schedule: Schedule,
}

/// Best (value, headroom) over every integer allocation matrix, with the
/// lexicographically smallest matrix among ties.
///
/// Each cell ranges over `0..=min(m_i, C_i, floor(P[τ] / w_i))` inside the
/// mission window; rows whose total exceeds `C_i` are skipped.
pub fn brute_force_oracle(instance: &ProblemInstance, mode: Mode) -> Result<OracleResult> {
    let n = instance.len();
    let slots = instance.slots();
    let capacity = instance.platform().capacity();
    let ratings = instance.ratings().ratings();
    let top = ratings.iter().copied().fold(0.0, f64::max);
    let weight = |i: usize| match mode {
        Mode::Raw => 1.0,
        Mode::Rated => ratings[i] / top,
    };
    let rated = |i: usize| ratings[i] / top;

    let mut rows: Vec<Vec<Vec<u32>>> = Vec::with_capacity(n);
    let mut states: u64 = 1;
    for (i, m) in instance.missions().iter().enumerate() {
        let bounds: Vec<u32> = (0..slots)
            .map(|t| {
                if t < m.release || t >= m.deadline {
                    0
                } else {
                    let fit = ((capacity[t] + CAPACITY_TOLERANCE) / weight(i)).floor().max(0.0);
                    (m.rate_cap.min(m.total_work) as f64).min(fit) as u32
                }
            })
            .collect();
        let candidates = all_rows(&bounds, m.total_work);
        states = states.saturating_mul(candidates.len() as u64);
        if states > ORACLE_STATE_CAP {
            return Err(SolveError::LimitExceeded { what: "oracle states", value: states, limit: ORACLE_STATE_CAP });
        }
        rows.push(candidates);
    }

    let mut pick = vec![0usize; n];
    let mut best: Option<(f64, f64, Vec<usize>)> = None;
    loop {
        let mut feasible = true;
        let mut headroom = 0.0;
        for t in 0..slots {
            let mut used = 0.0;
            let mut used_rated = 0.0;
            let mut penalty = 0.0;
            for i in 0..n {
                let a = rows[i][pick[i]][t];
                used += weight(i) * f64::from(a);
                used_rated += rated(i) * f64::from(a);
                for j in i + 1..n {
                    if a > 0 && rows[j][pick[j]][t] > 0 {
                        penalty += instance.interaction().get(i, j);
                    }
                }
            }
            if capacity[t] - used - penalty < -CAPACITY_TOLERANCE {
                feasible = false;
                break;
            }
            headroom += capacity[t] - used_rated - penalty;
        }
        if feasible {
            let value: f64 = (0..n)
                .filter(|&i| {
                    let m = instance.mission(i);
                    let done: u32 = rows[i][pick[i]].iter().sum();
                    f64::from(done) >= (m.fraction * f64::from(m.total_work) - 1e-9).ceil()
                })
                .map(|i| ratings[i])
                .sum();
            let better = match &best {
                None => true,
                Some((v, h, _)) => value > *v || (value == *v && headroom > *h + 1e-9),
            };
            if better {
                best = Some((value, headroom, pick.clone()));
            }
        }
        // Odometer with the last mission fastest keeps matrices in lexicographic order.
        let mut k = n;
        loop {
            if k == 0 {
                let (value, headroom, pick) = best.expect("the zero matrix is always feasible");
                let schedule = Schedule::from_rows((0..n).map(|i| rows[i][pick[i]].clone()).collect());
                return Ok(OracleResult { value, headroom, schedule });
            }
            k -= 1;
            pick[k] += 1;
            if pick[k] < rows[k].len() {
                break;
            }
            pick[k] = 0;
        }
    }
}

/// Every vector `v` with `v[t] <= bounds[t]` and `Σ v <= total`, in lexicographic order.
fn all_rows(bounds: &[u32], total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; bounds.len()];
    fn walk(t: usize, left: u32, bounds: &[u32], current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if t == bounds.len() {
            out.push(current.clone());
            return;
        }
        for a in 0..=bounds[t].min(left) {
            current[t] = a;
            walk(t + 1, left - a, bounds, current, out);
        }
        current[t] = 0;
    }
    walk(0, total, bounds, &mut current, &mut out);
    out
}
