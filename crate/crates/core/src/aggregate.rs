//! Score-to-rank conversion and weighted Borda fusion of the method rankings.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluate::MethodScores;

/// Borda totals closer than this are considered tied.
pub const BORDA_TIE_TOLERANCE: f64 = 1e-9;

/// Competition ranks: 1 for the largest score, equal scores share the
/// smaller rank.
pub fn scores_to_ranks(scores: &[f64]) -> Vec<usize> {
    scores
        .iter()
        .map(|s| 1 + scores.iter().filter(|t| *t > s).count())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreak {
    /// Sum of the min-max-normalized method scores; plans still equal share a rank.
    #[default]
    NormalizedScoreSum,
    /// Lower plan index wins.
    PlanIndex,
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TieBreak::NormalizedScoreSum => "normalized-score-sum",
            TieBreak::PlanIndex => "plan-index",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BordaConfig {
    pub method_weights: [f64; 4],
    #[serde(default)]
    pub tie_break: TieBreak,
}

impl Default for BordaConfig {
    fn default() -> Self {
        BordaConfig { method_weights: [0.25; 4], tie_break: TieBreak::default() }
    }
}

impl BordaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.method_weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidValue(format!(
                "Borda weights must be nonnegative, got {:?}",
                self.method_weights
            )));
        }
        let sum: f64 = self.method_weights.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidValue(format!("Borda weights must sum to 1, got {sum}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankResult {
    pub final_ranks: Vec<usize>,
    pub borda_scores: Vec<f64>,
    /// Secondary key used to separate equal Borda totals.
    pub tie_break_scores: Vec<f64>,
    /// Plan indices (0-based), best first.
    pub order: Vec<usize>,
    pub per_method: Vec<MethodScores>,
}

fn min_max_normalized(scores: &[f64]) -> Vec<f64> {
    let (lo, hi) = scores
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| (lo.min(*s), hi.max(*s)));
    if hi > lo {
        scores.iter().map(|s| (s - lo) / (hi - lo)).collect()
    } else {
        vec![0.0; scores.len()]
    }
}

/// Fuses per-method ranks: plan `i` collects `sum_m w_m (n - rank_mi)`.
pub fn weighted_borda(per_method: &[MethodScores], config: &BordaConfig) -> Result<RankResult> {
    config.validate()?;
    if per_method.len() != config.method_weights.len() {
        return Err(Error::Dimension(format!(
            "{} method rankings for {} Borda weights",
            per_method.len(),
            config.method_weights.len()
        )));
    }
    let n = per_method[0].ranks.len();
    if let Some(m) = per_method.iter().find(|m| m.ranks.len() != n || m.scores.len() != n) {
        return Err(Error::Dimension(format!(
            "method {} ranks {} plans, expected {n}",
            m.method,
            m.ranks.len()
        )));
    }

    let borda_scores: Vec<f64> = (0..n)
        .map(|i| {
            per_method
                .iter()
                .zip(config.method_weights)
                .map(|(m, w)| w * (n - m.ranks[i]) as f64)
                .sum()
        })
        .collect();
    let tie_break_scores: Vec<f64> = match config.tie_break {
        TieBreak::NormalizedScoreSum => {
            let normalized: Vec<Vec<f64>> = per_method.iter().map(|m| min_max_normalized(&m.scores)).collect();
            (0..n).map(|i| normalized.iter().map(|v| v[i]).sum()).collect()
        }
        TieBreak::PlanIndex => vec![0.0; n],
    };

    // Equal under the configured tie semantics.
    let tied = |a: usize, b: usize| -> bool {
        (borda_scores[a] - borda_scores[b]).abs() <= BORDA_TIE_TOLERANCE
            && match config.tie_break {
                TieBreak::NormalizedScoreSum => tie_break_scores[a] == tie_break_scores[b],
                TieBreak::PlanIndex => a == b,
            }
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let by_borda = if (borda_scores[a] - borda_scores[b]).abs() <= BORDA_TIE_TOLERANCE {
            Ordering::Equal
        } else {
            borda_scores[b].total_cmp(&borda_scores[a])
        };
        by_borda
            .then_with(|| tie_break_scores[b].total_cmp(&tie_break_scores[a]))
            .then(a.cmp(&b))
    });

    let mut final_ranks = vec![0; n];
    for (pos, &plan) in order.iter().enumerate() {
        final_ranks[plan] = if pos > 0 && tied(order[pos - 1], plan) {
            final_ranks[order[pos - 1]]
        } else {
            pos + 1
        };
    }

    Ok(RankResult {
        final_ranks,
        borda_scores,
        tie_break_scores,
        order,
        per_method: per_method.to_vec(),
    })
}
