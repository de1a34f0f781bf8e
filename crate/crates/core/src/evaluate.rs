//! Plan evaluation on the weighted matrix: grey TOPSIS closeness, the grey
//! incidence approach degree with preference coefficients, the relative
//! membership degree, and the maximum-entropy comprehensive incidence.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::aggregate::scores_to_ranks;
use crate::error::{Error, Result};
use crate::grey::{distance, GeneralizedValue, IntervalGreyNumber};
use crate::matrix::{NormalizedMatrix, WeightedMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodKind {
    Topsis,
    GreyApproach,
    Membership,
    MaxEntropy,
}

impl MethodKind {
    pub const ALL: [MethodKind; 4] = [
        MethodKind::Topsis,
        MethodKind::GreyApproach,
        MethodKind::Membership,
        MethodKind::MaxEntropy,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MethodKind::Topsis => "topsis",
            MethodKind::GreyApproach => "grey-approach",
            MethodKind::Membership => "membership",
            MethodKind::MaxEntropy => "max-entropy",
        }
    }
}

impl fmt::Display for MethodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Score vector of one method with its competition ranks (1 = best).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodScores {
    pub method: MethodKind,
    pub scores: Vec<f64>,
    pub ranks: Vec<usize>,
}

impl MethodScores {
    pub fn new(method: MethodKind, scores: Vec<f64>) -> Self {
        let ranks = scores_to_ranks(&scores);
        MethodScores { method, scores, ranks }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MethodParams {
    /// Distinguishing coefficient of the incidence coefficients.
    pub rho: f64,
    pub theta_plus: f64,
    pub theta_minus: f64,
}

impl Default for MethodParams {
    fn default() -> Self {
        MethodParams { rho: 0.5, theta_plus: 0.5, theta_minus: 0.5 }
    }
}

impl MethodParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(Error::InvalidValue(format!("rho must lie in (0, 1), got {}", self.rho)));
        }
        validate_theta(self.theta_plus, self.theta_minus)
    }
}

fn validate_theta(plus: f64, minus: f64) -> Result<()> {
    if plus == 1.0 && minus == 0.0 {
        return Ok(());
    }
    let ok = plus > 0.0 && plus <= 1.0 && minus > 0.0 && minus <= 1.0 && ((plus + minus) - 1.0).abs() <= 1e-9;
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidValue(format!(
            "preference coefficients need 0 < theta+ <= 1, 0 < theta- <= 1 and theta+ + theta- = 1 \
             (or theta+ = 1, theta- = 0); got {plus} and {minus}"
        )))
    }
}

/// Averages every normalized entry with its plan's subjective preference.
pub fn blend_preference(x: &NormalizedMatrix, preferences: &[GeneralizedValue]) -> Result<WeightedMatrix> {
    if preferences.len() != x.plans() {
        return Err(Error::Dimension(format!(
            "{} preference values for {} plans",
            preferences.len(),
            x.plans()
        )));
    }
    Ok(x.map(|i, _, v| {
        let q = preferences[i].components();
        v.map_monotone(|k, a| 0.5 * (q[k] + a))
    }))
}

/// Scales the lower pair of every entry by the lower weight bound and the
/// upper pair by the upper bound.
pub fn apply_weights(z: &WeightedMatrix, weights: &[IntervalGreyNumber]) -> Result<WeightedMatrix> {
    if weights.len() != z.attributes() {
        return Err(Error::Dimension(format!(
            "{} weights for {} attributes",
            weights.len(),
            z.attributes()
        )));
    }
    if !z.is_nonnegative() {
        return Err(Error::Domain("weighted matrix input has negative entries".into()));
    }
    Ok(z.map(|_, j, v| {
        let w = weights[j];
        v.map_monotone(|k, a| if k < 2 { w.lo() * a } else { w.hi() * a })
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdealVectors {
    pub positive: Vec<GeneralizedValue>,
    pub negative: Vec<GeneralizedValue>,
}

pub fn ideal_vectors(y: &WeightedMatrix) -> IdealVectors {
    let extreme = |j: usize, pick: fn(f64, f64) -> f64| {
        let mut acc = y.get(0, j).components();
        for v in y.column(j).skip(1) {
            for (a, b) in acc.iter_mut().zip(v.components()) {
                *a = pick(*a, b);
            }
        }
        // componentwise extrema of ordered tuples are ordered
        GeneralizedValue::try_from(acc).expect("extrema of ordered tuples are ordered")
    };
    let m = y.attributes();
    IdealVectors {
        positive: (0..m).map(|j| extreme(j, f64::max)).collect(),
        negative: (0..m).map(|j| extreme(j, f64::min)).collect(),
    }
}

fn row_distance(row: &[GeneralizedValue], ideal: &[GeneralizedValue]) -> f64 {
    row.iter()
        .zip(ideal)
        .map(|(a, b)| {
            let d = distance(a, b);
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

/// TOPSIS relative closeness `D- / (D+ + D-)`. Plans at distance zero from
/// both ideals (all plans identical) score 0.5.
pub fn topsis_scores(y: &WeightedMatrix, ideals: &IdealVectors) -> MethodScores {
    let scores = y
        .rows()
        .map(|row| {
            let plus = row_distance(row, &ideals.positive);
            let minus = row_distance(row, &ideals.negative);
            if plus + minus == 0.0 {
                0.5
            } else {
                minus / (plus + minus)
            }
        })
        .collect();
    MethodScores::new(MethodKind::Topsis, scores)
}

/// Grey incidence coefficients `(d_min + rho d_max) / (d_ij + rho d_max)`
/// against one ideal vector, with global extrema over the whole matrix.
pub fn incidence_coefficients(y: &WeightedMatrix, ideal: &[GeneralizedValue], rho: f64) -> Result<Vec<Vec<f64>>> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidValue(format!("rho must lie in (0, 1), got {rho}")));
    }
    if ideal.len() != y.attributes() {
        return Err(Error::Dimension(format!(
            "ideal vector has {} entries for {} attributes",
            ideal.len(),
            y.attributes()
        )));
    }
    let d: Vec<Vec<f64>> = y
        .rows()
        .map(|row| row.iter().zip(ideal).map(|(a, b)| distance(a, b)).collect())
        .collect();
    let (d_min, d_max) = d
        .iter()
        .flatten()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(*v), hi.max(*v)));
    if d_max == 0.0 {
        return Ok(vec![vec![1.0; y.attributes()]; y.plans()]);
    }
    Ok(d.into_iter()
        .map(|row| row.into_iter().map(|dij| (d_min + rho * d_max) / (dij + rho * d_max)).collect())
        .collect())
}

/// Row means of an incidence coefficient matrix.
pub fn incidence_degrees(coefficients: &[Vec<f64>]) -> Vec<f64> {
    coefficients
        .iter()
        .map(|row| row.iter().sum::<f64>() / row.len() as f64)
        .collect()
}

pub fn approach_with_preference(
    g_plus: &[f64],
    g_minus: &[f64],
    theta_plus: f64,
    theta_minus: f64,
) -> Result<MethodScores> {
    check_lengths(g_plus, g_minus)?;
    validate_theta(theta_plus, theta_minus)?;
    let scores = if theta_plus == 1.0 && theta_minus == 0.0 {
        g_plus.to_vec()
    } else {
        g_plus
            .iter()
            .zip(g_minus)
            .map(|(p, m)| {
                let num = p * theta_plus;
                let den = num + m * theta_minus;
                if den == 0.0 {
                    0.5
                } else {
                    num / den
                }
            })
            .collect()
    };
    Ok(MethodScores::new(MethodKind::GreyApproach, scores))
}

/// Relative membership `u_i = G+^2 / (G+^2 + G-^2)`.
pub fn membership_degrees(g_plus: &[f64], g_minus: &[f64]) -> Result<MethodScores> {
    check_lengths(g_plus, g_minus)?;
    let scores = g_plus
        .iter()
        .zip(g_minus)
        .enumerate()
        .map(|(i, (p, m))| {
            let den = p * p + m * m;
            if den == 0.0 {
                Err(Error::Domain(format!(
                    "plan {}: both incidence degrees are zero, membership undefined",
                    i + 1
                )))
            } else {
                Ok(p * p / den)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MethodScores::new(MethodKind::Membership, scores))
}

/// Maximum-entropy weights of the two incidence degrees: the softmax of
/// `(sum G+, sum (1 - G-))`.
pub fn max_entropy_weights(g_plus: &[f64], g_minus: &[f64]) -> (f64, f64) {
    let c1: f64 = g_plus.iter().sum();
    let c2: f64 = g_minus.iter().map(|g| 1.0 - g).sum();
    if c1 >= c2 {
        let e = (c2 - c1).exp();
        let beta2 = e / (1.0 + e);
        (1.0 - beta2, beta2)
    } else {
        let e = (c1 - c2).exp();
        let beta1 = e / (1.0 + e);
        (beta1, 1.0 - beta1)
    }
}

pub fn comprehensive_incidence(g_plus: &[f64], g_minus: &[f64], beta1: f64, beta2: f64) -> Result<MethodScores> {
    check_lengths(g_plus, g_minus)?;
    if beta1 < 0.0 || beta2 < 0.0 || ((beta1 + beta2) - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidValue(format!(
            "incidence weights must be nonnegative and sum to one, got {beta1} and {beta2}"
        )));
    }
    let scores = g_plus
        .iter()
        .zip(g_minus)
        .map(|(p, m)| beta1 * p + beta2 * (1.0 - m))
        .collect();
    Ok(MethodScores::new(MethodKind::MaxEntropy, scores))
}

fn check_lengths(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::Dimension(format!("{} positive vs {} negative incidence degrees", a.len(), b.len())));
    }
    Ok(())
}

/// Everything the four methods compute from `Y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub ideals: IdealVectors,
    pub coefficients_plus: Vec<Vec<f64>>,
    pub coefficients_minus: Vec<Vec<f64>>,
    pub g_plus: Vec<f64>,
    pub g_minus: Vec<f64>,
    pub beta1: f64,
    pub beta2: f64,
    pub topsis: MethodScores,
    pub grey_approach: MethodScores,
    pub membership: MethodScores,
    pub max_entropy: MethodScores,
}

impl Evaluation {
    pub fn run(y: &WeightedMatrix, params: &MethodParams) -> Result<Self> {
        params.validate()?;
        let ideals = ideal_vectors(y);
        let topsis = topsis_scores(y, &ideals);
        let coefficients_plus = incidence_coefficients(y, &ideals.positive, params.rho)?;
        let coefficients_minus = incidence_coefficients(y, &ideals.negative, params.rho)?;
        let g_plus = incidence_degrees(&coefficients_plus);
        let g_minus = incidence_degrees(&coefficients_minus);
        let grey_approach = approach_with_preference(&g_plus, &g_minus, params.theta_plus, params.theta_minus)?;
        let membership = membership_degrees(&g_plus, &g_minus)?;
        let (beta1, beta2) = max_entropy_weights(&g_plus, &g_minus);
        let max_entropy = comprehensive_incidence(&g_plus, &g_minus, beta1, beta2)?;
        Ok(Evaluation {
            ideals,
            coefficients_plus,
            coefficients_minus,
            g_plus,
            g_minus,
            beta1,
            beta2,
            topsis,
            grey_approach,
            membership,
            max_entropy,
        })
    }

    pub fn methods(&self) -> [&MethodScores; 4] {
        [&self.topsis, &self.grey_approach, &self.membership, &self.max_entropy]
    }
}
