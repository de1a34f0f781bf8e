//! Test-only oracles and generators. The oracles re-derive every quantity
//! from raw tuples and search numerically; they never call the closed forms
//! they check.

#![allow(dead_code)]

use grey_hybrid::aggregate::TieBreak;
use grey_hybrid::grey::{AttributeKind, LinguisticTerm, RawCell};
use grey_hybrid::problem::{AttributeEntry, Params, ProblemFile, SubjectiveWeights};
use grey_hybrid::{Direction, GeneralizedValue, NormalizedMatrix};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;
use serde_json::{json, Value};

fn oracle_distance(a: [f64; 4], b: [f64; 4]) -> f64 {
    let mut s = 0.0;
    for k in 0..4 {
        s += (a[k] - b[k]).powi(2);
    }
    s.sqrt()
}

/// Per-attribute total pairwise deviation, recomputed from raw components.
pub fn oracle_deviations(x: &NormalizedMatrix) -> Vec<f64> {
    let mut out = vec![0.0; x.attributes()];
    for (j, slot) in out.iter_mut().enumerate() {
        for i in 0..x.plans() {
            for k in 0..x.plans() {
                *slot += oracle_distance(x.get(i, j).components(), x.get(k, j).components());
            }
        }
    }
    out
}

pub fn deviation_objective(dev: &[f64], beta: &[f64]) -> f64 {
    dev.iter().zip(beta).map(|(d, b)| d * b).sum()
}

fn project_to_sphere(beta: &mut [f64]) {
    for b in beta.iter_mut() {
        *b = b.max(0.0);
    }
    let norm = beta.iter().map(|b| b * b).sum::<f64>().sqrt();
    if norm == 0.0 {
        let v = 1.0 / (beta.len() as f64).sqrt();
        beta.iter_mut().for_each(|b| *b = v);
    } else {
        beta.iter_mut().for_each(|b| *b /= norm);
    }
}

/// Derivative-free pattern search for max `sum dev_j b_j` over
/// `{sum b^2 = 1, b >= 0}`, started from the best of a coarse sample of
/// feasible points. Returns the best point and its objective.
pub fn sphere_pattern_search(dev: &[f64], rng: &mut StdRng) -> (Vec<f64>, f64) {
    let m = dev.len();
    let mut best = vec![1.0 / (m as f64).sqrt(); m];
    let mut best_val = deviation_objective(dev, &best);
    for _ in 0..2000 {
        let mut cand: Vec<f64> = (0..m).map(|_| rng.gen::<f64>()).collect();
        project_to_sphere(&mut cand);
        let v = deviation_objective(dev, &cand);
        if v > best_val {
            best = cand;
            best_val = v;
        }
    }
    let mut step = 0.25;
    while step > 1e-12 {
        let mut improved = false;
        for j in 0..m {
            for sign in [1.0, -1.0] {
                let mut cand = best.clone();
                cand[j] += sign * step;
                project_to_sphere(&mut cand);
                let v = deviation_objective(dev, &cand);
                if v > best_val + 1e-15 {
                    best = cand;
                    best_val = v;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (best, best_val)
}

/// Minimizes a one-dimensional function on `[lo, hi]` by a dense grid
/// followed by repeated zoomed grids around the incumbent.
pub fn grid_minimize(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let (mut a, mut b) = (lo, hi);
    let mut best = lo;
    for _ in 0..12 {
        let steps = 1000;
        let h = (b - a) / steps as f64;
        let mut best_val = f64::INFINITY;
        for s in 0..=steps {
            let t = a + h * s as f64;
            let v = f(t);
            if v < best_val {
                best_val = v;
                best = t;
            }
        }
        a = (best - 2.0 * h).max(lo);
        b = (best + 2.0 * h).min(hi);
        if h < 1e-13 {
            break;
        }
    }
    best
}

/// Relative-membership objective of one plan: squared weighted distances
/// to the two ideals, `((1 - u) G+)^2 + (u G-)^2`.
pub fn membership_objective(g_plus: f64, g_minus: f64, u: f64) -> f64 {
    ((1.0 - u) * g_plus).powi(2) + (u * g_minus).powi(2)
}

pub fn membership_oracle(g_plus: &[f64], g_minus: &[f64]) -> Vec<f64> {
    g_plus
        .iter()
        .zip(g_minus)
        .map(|(p, m)| grid_minimize(|u| membership_objective(*p, *m, u), 0.0, 1.0))
        .collect()
}

/// Entropy-regularized objective of the two incidence weights.
pub fn incidence_entropy_objective(g_plus: &[f64], g_minus: &[f64], beta1: f64) -> f64 {
    let beta2 = 1.0 - beta1;
    let linear: f64 = g_plus
        .iter()
        .zip(g_minus)
        .map(|(p, m)| beta1 * p + beta2 * (1.0 - m))
        .sum();
    let xlnx = |x: f64| if x > 0.0 { x * x.ln() } else { 0.0 };
    linear - xlnx(beta1) - xlnx(beta2)
}

pub fn incidence_weight_oracle(g_plus: &[f64], g_minus: &[f64]) -> f64 {
    grid_minimize(|b| -incidence_entropy_objective(g_plus, g_minus, b), 0.0, 1.0)
}

pub fn random_normalized(rng: &mut StdRng, n: usize, m: usize) -> NormalizedMatrix {
    let rows = (0..n)
        .map(|_| {
            (0..m)
                .map(|_| {
                    let mut parts = [0.0; 4];
                    for p in parts.iter_mut() {
                        *p = rng.gen::<f64>();
                    }
                    GeneralizedValue::from_unsorted(parts).unwrap()
                })
                .collect()
        })
        .collect();
    NormalizedMatrix::from_rows(rows).unwrap()
}

/// Incidence degrees as they occur in practice: in `(0, 1]`, bounded
/// below by `rho / (1 + rho)` for rho = 0.5.
pub fn random_degrees(rng: &mut StdRng, n: usize) -> (Vec<f64>, Vec<f64>) {
    let g = |rng: &mut StdRng| 1.0 / 3.0 + rng.gen::<f64>() * (2.0 / 3.0);
    ((0..n).map(|_| g(rng)).collect(), (0..n).map(|_| g(rng)).collect())
}

// ---- proptest generators -------------------------------------------------

pub fn kind_strategy() -> impl Strategy<Value = AttributeKind> {
    prop_oneof![
        Just(AttributeKind::Real),
        Just(AttributeKind::Interval),
        Just(AttributeKind::Linguistic),
        Just(AttributeKind::UncertainLinguistic),
    ]
}

pub fn direction_strategy() -> impl Strategy<Value = Direction> {
    prop_oneof![Just(Direction::Cost), Just(Direction::Benefit)]
}

/// Cells of one kind. Linguistic terms stay within -3..=3 so every tuple
/// component is positive, before and after complementing.
pub fn cell_strategy(kind: AttributeKind) -> BoxedStrategy<RawCell> {
    match kind {
        AttributeKind::Real => (0.5f64..1000.0).prop_map(RawCell::Real).boxed(),
        AttributeKind::Interval => (0.5f64..1000.0, 0.0f64..200.0)
            .prop_map(|(lo, w)| RawCell::Interval(lo, lo + w))
            .boxed(),
        AttributeKind::Linguistic => (-3i32..=3)
            .prop_map(|i| RawCell::Linguistic(LinguisticTerm::from_index(i).unwrap()))
            .boxed(),
        AttributeKind::UncertainLinguistic => (-3i32..=3, 0i32..=3)
            .prop_map(|(lo, w)| {
                let hi = (lo + w).min(3);
                RawCell::UncertainLinguistic(
                    LinguisticTerm::from_index(lo).unwrap(),
                    LinguisticTerm::from_index(hi).unwrap(),
                )
            })
            .boxed(),
    }
}

pub fn column_strategy(n: usize) -> impl Strategy<Value = (AttributeKind, Direction, Vec<RawCell>)> {
    (kind_strategy(), direction_strategy())
        .prop_flat_map(move |(k, d)| (Just(k), Just(d), prop::collection::vec(cell_strategy(k), n)))
}

pub fn preference_strategy() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(0.0f64..1.0).prop_map(|mut q| {
        q.sort_by(f64::total_cmp);
        q
    })
}

pub fn encode_cell(cell: &RawCell) -> Value {
    match cell {
        RawCell::Real(v) => json!({ "real": v }),
        RawCell::Interval(lo, hi) => json!({ "interval": [lo, hi] }),
        RawCell::Linguistic(t) => json!({ "ling": t.label() }),
        RawCell::UncertainLinguistic(l, u) => json!({ "uling": [l.label(), u.label()] }),
    }
}

/// Builds a problem file from generated columns.
pub fn problem_file(
    columns: &[(AttributeKind, Direction, Vec<RawCell>)],
    preferences: Vec<[f64; 4]>,
    alpha: Vec<[f64; 2]>,
) -> ProblemFile {
    let n = preferences.len();
    ProblemFile {
        schema: 1,
        notes: vec![],
        plans: (1..=n).map(|i| format!("P{i}")).collect(),
        attributes: columns
            .iter()
            .enumerate()
            .map(|(j, (k, d, _))| AttributeEntry { id: format!("A{}", j + 1), kind: *k, direction: *d, note: None })
            .collect(),
        matrix: (0..n)
            .map(|i| columns.iter().map(|(_, _, cells)| encode_cell(&cells[i])).collect())
            .collect(),
        subjective_weights: SubjectiveWeights::Interval(alpha),
        preferences,
        params: Params { tie_break: TieBreak::NormalizedScoreSum, ..Params::default() },
        linguistic_aliases: Default::default(),
    }
}

/// A whole random problem with `n` plans and `m` attributes.
pub fn problem_strategy(max_plans: usize, max_attributes: usize) -> impl Strategy<Value = ProblemFile> {
    (1..=max_plans, 1..=max_attributes).prop_flat_map(|(n, m)| {
        (
            prop::collection::vec(column_strategy(n), m),
            prop::collection::vec(preference_strategy(), n),
            prop::collection::vec((0.05f64..0.5, 0.0f64..0.2).prop_map(|(lo, w)| [lo, lo + w]), m),
        )
            .prop_map(|(cols, prefs, alpha)| problem_file(&cols, prefs, alpha))
    })
}
