//! Logistic priority advisor.
//!
//! Learns, from exact-solver optima, which missions tend to end up in the
//! optimal success set. Its scores produce a priority order that seeds the
//! greedy decoder and the genetic search.

use serde::{Deserialize, Serialize};

use super::exact::{solve_exact, ExactLimits};
use super::{Result, SolveError};
use crate::model::{Mode, ProblemInstance};

pub const FEATURES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AdvisorWeights {
    pub coefficients: [f64; FEATURES],
    pub bias: f64,
}

impl AdvisorWeights {
    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = self.coefficients.to_vec();
        v.push(self.bias);
        v
    }

    pub fn from_slice(values: &[f64]) -> Self {
        let mut coefficients = [0.0; FEATURES];
        coefficients.copy_from_slice(&values[..FEATURES]);
        Self { coefficients, bias: values[FEATURES] }
    }

    fn logit(&self, features: &[f64; FEATURES]) -> f64 {
        self.coefficients.iter().zip(features).map(|(c, x)| c * x).sum::<f64>() + self.bias
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Example {
    pub features: [f64; FEATURES],
    pub label: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainedAdvisor {
    pub weights: AdvisorWeights,
    /// Loss at initialization and after each epoch.
    pub losses: Vec<f64>,
}

/// (normalized rating, required work / total capacity, window reach / required
/// work, interaction degree).
pub fn extract_features(instance: &ProblemInstance, mission: usize) -> Result<[f64; FEATURES]> {
    if mission >= instance.len() {
        return Err(SolveError::Domain(format!("mission index {mission} out of range ({} missions)", instance.len())));
    }
    let total_capacity = instance.platform().total();
    if total_capacity <= 0.0 {
        return Err(SolveError::Degenerate("platform has zero total capacity".into()));
    }
    let m = instance.mission(mission);
    let required = f64::from(m.required_work());
    Ok([
        m.rating / instance.ratings().max(),
        required / total_capacity,
        ((m.deadline - m.release) as f64 * f64::from(m.rate_cap)) / required,
        instance.interaction().degree(mission),
    ])
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

pub fn score(weights: &AdvisorWeights, features: &[f64; FEATURES]) -> f64 {
    sigmoid(weights.logit(features))
}

/// Mean binary cross-entropy.
pub fn loss(weights: &AdvisorWeights, dataset: &[Example]) -> f64 {
    let total: f64 = dataset
        .iter()
        .map(|ex| {
            let z = weights.logit(&ex.features);
            let y = if ex.label { 1.0 } else { 0.0 };
            // log(1 + e^z) - y z, without overflow.
            z.max(0.0) + (-z.abs()).exp().ln_1p() - y * z
        })
        .sum();
    total / dataset.len() as f64
}

/// Analytic gradient of [`loss`].
pub fn gradient(weights: &AdvisorWeights, dataset: &[Example]) -> AdvisorWeights {
    let mut grad = AdvisorWeights::default();
    for ex in dataset {
        let y = if ex.label { 1.0 } else { 0.0 };
        let err = score(weights, &ex.features) - y;
        for (g, x) in grad.coefficients.iter_mut().zip(&ex.features) {
            *g += err * x;
        }
        grad.bias += err;
    }
    let n = dataset.len() as f64;
    grad.coefficients.iter_mut().for_each(|g| *g /= n);
    grad.bias /= n;
    grad
}

/// Full-batch gradient descent from zero weights.
pub fn train_advisor(dataset: &[Example], rate: f64, epochs: usize) -> Result<TrainedAdvisor> {
    if dataset.is_empty() {
        return Err(SolveError::Domain("training set is empty".into()));
    }
    if let Some((k, _)) = dataset.iter().enumerate().find(|(_, ex)| ex.features.iter().any(|x| !x.is_finite())) {
        return Err(SolveError::Domain(format!("example {k} has a non-finite feature")));
    }
    if !(rate.is_finite() && rate > 0.0) {
        return Err(SolveError::InvalidParams(format!("learning rate must be positive, got {rate}")));
    }
    let mut weights = AdvisorWeights::default();
    let mut losses = Vec::with_capacity(epochs + 1);
    losses.push(loss(&weights, dataset));
    for _ in 0..epochs {
        let grad = gradient(&weights, dataset);
        for (w, g) in weights.coefficients.iter_mut().zip(grad.coefficients) {
            *w -= rate * g;
        }
        weights.bias -= rate * grad.bias;
        losses.push(loss(&weights, dataset));
    }
    Ok(TrainedAdvisor { weights, losses })
}

/// Labels each mission of each instance by membership in the exact optimum.
pub fn advisor_dataset(instances: &[ProblemInstance], mode: Mode, limits: ExactLimits) -> Result<Vec<Example>> {
    let mut out = Vec::new();
    for instance in instances {
        let report = solve_exact(instance, mode, limits)?;
        for (i, &label) in report.success.iter().enumerate() {
            out.push(Example { features: extract_features(instance, i)?, label });
        }
    }
    Ok(out)
}

/// Missions by descending advisor score, then rating, then id.
pub fn advise_order(instance: &ProblemInstance, weights: &AdvisorWeights) -> Result<Vec<usize>> {
    let scores = (0..instance.len())
        .map(|i| extract_features(instance, i).map(|f| score(weights, &f)))
        .collect::<Result<Vec<_>>>()?;
    let mut order: Vec<usize> = (0..instance.len()).collect();
    order.sort_by(|&a, &b| {
        let (ma, mb) = (instance.mission(a), instance.mission(b));
        scores[b].total_cmp(&scores[a]).then(mb.rating.total_cmp(&ma.rating)).then_with(|| ma.id.cmp(&mb.id))
    });
    Ok(order)
}
