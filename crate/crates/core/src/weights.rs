//! Attribute weighting: subjective expert envelopes, deviation-maximizing
//! and entropy objective weights, their interval envelope, and the final
//! multiplicative composite interval weights.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grey::{distance, IntervalGreyNumber};
use crate::matrix::NormalizedMatrix;

/// `1 - E_j` at or below this is treated as zero discrimination.
pub const ENTROPY_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightBundle {
    /// Subjective interval weights.
    pub alpha: Vec<IntervalGreyNumber>,
    /// Unit-sphere maximizer of the total deviation, before normalization.
    pub beta_sphere: Vec<f64>,
    pub beta_opt: Vec<f64>,
    /// One entropy weight vector per tuple component.
    pub beta_ent: [Vec<f64>; 4],
    pub beta_interval: Vec<IntervalGreyNumber>,
    pub w_final: Vec<IntervalGreyNumber>,
}

impl WeightBundle {
    /// Runs every weighting step on `x`. Returns the bundle together with
    /// notes about degenerate fallbacks that were applied.
    pub fn compute(x: &NormalizedMatrix, alpha: Vec<IntervalGreyNumber>) -> Result<(Self, Vec<String>)> {
        let m = x.attributes();
        if alpha.len() != m {
            return Err(Error::Dimension(format!(
                "{} subjective weights for {m} attributes",
                alpha.len()
            )));
        }
        let mut notes = Vec::new();
        let (beta_sphere, beta_opt) = match (sphere_weights(x), optimization_weights(x)) {
            (Ok(s), Ok(o)) => (s, o),
            (Err(Error::Degenerate(msg)), _) | (_, Err(Error::Degenerate(msg))) => {
                notes.push(format!("optimization weights: {msg}; using uniform 1/{m}"));
                (vec![1.0 / (m as f64).sqrt(); m], vec![1.0 / m as f64; m])
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        let mut beta_ent: [Vec<f64>; 4] = Default::default();
        for (k, slot) in beta_ent.iter_mut().enumerate() {
            let component = entropy_component(x, k + 1)?;
            if component.uniform_fallback {
                notes.push(format!(
                    "entropy weights for component {}: no attribute discriminates; using uniform 1/{m}",
                    k + 1
                ));
            }
            *slot = component.weights;
        }
        let beta_interval = comprehensive_objective(&beta_opt, &beta_ent)?;
        let w_final = final_weights(&alpha, &beta_interval)?;
        Ok((
            WeightBundle { alpha, beta_sphere, beta_opt, beta_ent, beta_interval, w_final },
            notes,
        ))
    }
}

/// Coordinatewise `[min, max]` over the expert weight vectors.
pub fn subjective_interval_weights(experts: &[Vec<f64>]) -> Result<Vec<IntervalGreyNumber>> {
    let first = experts
        .first()
        .ok_or_else(|| Error::Domain("at least one expert weight vector is required".into()))?;
    let m = first.len();
    for (l, v) in experts.iter().enumerate() {
        if v.len() != m {
            return Err(Error::Dimension(format!(
                "expert {} gives {} weights, expert 1 gives {m}",
                l + 1,
                v.len()
            )));
        }
        if let Some(w) = v.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidValue(format!("expert {} has invalid weight {w}", l + 1)));
        }
    }
    (0..m)
        .map(|j| {
            let (lo, hi) = experts
                .iter()
                .map(|v| v[j])
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), w| (lo.min(w), hi.max(w)));
            IntervalGreyNumber::new(lo, hi)
        })
        .collect()
}

/// Total pairwise deviation `sum_i sum_k d(x_ij, x_kj)` of every column.
pub fn column_deviations(x: &NormalizedMatrix) -> Vec<f64> {
    (0..x.attributes())
        .map(|j| {
            let column: Vec<_> = x.column(j).collect();
            column
                .iter()
                .map(|a| column.iter().map(|b| distance(a, b)).sum::<f64>())
                .sum()
        })
        .collect()
}

/// Maximizer of the total weighted deviation over `{sum b^2 = 1, b >= 0}`.
pub fn sphere_weights(x: &NormalizedMatrix) -> Result<Vec<f64>> {
    let dev = column_deviations(x);
    let norm = dev.iter().map(|d| d * d).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::Degenerate("all plans coincide on every attribute".into()));
    }
    Ok(dev.into_iter().map(|d| d / norm).collect())
}

/// Deviation-maximizing weights rescaled to sum to one.
pub fn optimization_weights(x: &NormalizedMatrix) -> Result<Vec<f64>> {
    let dev = column_deviations(x);
    let total: f64 = dev.iter().sum();
    if total == 0.0 {
        return Err(Error::Degenerate("all plans coincide on every attribute".into()));
    }
    Ok(dev.into_iter().map(|d| d / total).collect())
}

/// Entropy analysis of one tuple component.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyComponent {
    pub entropies: Vec<f64>,
    pub weights: Vec<f64>,
    /// Set when every attribute has (numerically) maximal entropy.
    pub uniform_fallback: bool,
}

pub fn entropy_component(x: &NormalizedMatrix, component: usize) -> Result<EntropyComponent> {
    if !(1..=4).contains(&component) {
        return Err(Error::InvalidValue(format!("tuple component {component} outside 1..=4")));
    }
    let k = component - 1;
    let n = x.plans();
    let m = x.attributes();
    let mut entropies = Vec::with_capacity(m);
    for j in 0..m {
        let values: Vec<f64> = x.column(j).map(|v| v.components()[k]).collect();
        if values.iter().any(|v| *v < 0.0) {
            return Err(Error::Domain(format!("attribute {}: negative normalized value", j + 1)));
        }
        let sum: f64 = values.iter().sum();
        if sum <= 0.0 {
            return Err(Error::Domain(format!(
                "attribute {}: component {component} sums to zero",
                j + 1
            )));
        }
        let e = if n == 1 {
            // a single plan carries no contrast
            1.0
        } else {
            let h: f64 = values
                .iter()
                .map(|v| v / sum)
                .filter(|p| *p > 0.0)
                .map(|p| p * p.ln())
                .sum();
            -h / (n as f64).ln()
        };
        entropies.push(e);
    }
    let eta: Vec<f64> = entropies
        .iter()
        .map(|e| {
            let d = 1.0 - e;
            if d <= ENTROPY_FLOOR {
                0.0
            } else {
                d
            }
        })
        .collect();
    let total: f64 = eta.iter().sum();
    let (weights, uniform_fallback) = if total == 0.0 {
        (vec![1.0 / m as f64; m], true)
    } else {
        (eta.iter().map(|d| d / total).collect(), false)
    };
    Ok(EntropyComponent { entropies, weights, uniform_fallback })
}

/// Entropy weights computed on tuple component `component` (1..=4).
pub fn entropy_weights(x: &NormalizedMatrix, component: usize) -> Result<Vec<f64>> {
    entropy_component(x, component).map(|c| c.weights)
}

/// Interval envelope of the optimization weights and the four entropy
/// weight vectors.
pub fn comprehensive_objective(beta_opt: &[f64], beta_ent: &[Vec<f64>]) -> Result<Vec<IntervalGreyNumber>> {
    let m = beta_opt.len();
    if let Some(v) = beta_ent.iter().find(|v| v.len() != m) {
        return Err(Error::Dimension(format!(
            "entropy weight vector has length {}, expected {m}",
            v.len()
        )));
    }
    (0..m)
        .map(|j| {
            let candidates = std::iter::once(beta_opt[j]).chain(beta_ent.iter().map(|v| v[j]));
            let (lo, hi) = candidates.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), w| (lo.min(w), hi.max(w)));
            IntervalGreyNumber::new(lo, hi)
        })
        .collect()
}

/// Multiplicative composite of subjective and objective interval weights,
/// normalized with outer-bound interval division.
pub fn final_weights(alpha: &[IntervalGreyNumber], beta: &[IntervalGreyNumber]) -> Result<Vec<IntervalGreyNumber>> {
    if alpha.len() != beta.len() {
        return Err(Error::Dimension(format!(
            "{} subjective and {} objective weights",
            alpha.len(),
            beta.len()
        )));
    }
    let lower: Vec<f64> = alpha.iter().zip(beta).map(|(a, b)| a.lo() * b.lo()).collect();
    let upper: Vec<f64> = alpha.iter().zip(beta).map(|(a, b)| a.hi() * b.hi()).collect();
    let sum_lower: f64 = lower.iter().sum();
    let sum_upper: f64 = upper.iter().sum();
    if sum_upper <= 0.0 || sum_lower <= 0.0 {
        return Err(Error::Degenerate(
            "composite weight products sum to zero; no attribute carries weight".into(),
        ));
    }
    lower
        .iter()
        .zip(&upper)
        .map(|(lo, hi)| IntervalGreyNumber::new(lo / sum_upper, hi / sum_lower))
        .collect()
}
