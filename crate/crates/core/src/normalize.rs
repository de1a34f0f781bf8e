//! Kind- and direction-dispatched normalization of a raw decision matrix.
//!
//! Real and interval columns use sum normalization on the interval bounds
//! (reals are degenerate intervals). Cost columns use reciprocals with the
//! bounds swapped, so the lower normalized bound comes from `1/hi` and
//! `lo <= hi` survives. Linguistic columns divide `(L, M, U)` by the column
//! sum of `M`; uncertain linguistic columns divide the lower pair by the sum
//! of lower midpoints and the upper pair by the sum of upper midpoints.
//! Linguistic columns marked cost are mirrored on the scale first and then
//! treated as benefit columns.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Location, Result};
use crate::grey::{term_to_triangle, AttributeKind, GeneralizedValue, LinguisticTerm, RawCell};
use crate::matrix::NormalizedMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Cost,
    Benefit,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Cost => "cost",
            Direction::Benefit => "benefit",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttributeSpec {
    pub id: String,
    pub kind: AttributeKind,
    pub direction: Direction,
}

impl AttributeSpec {
    pub fn new(id: impl Into<String>, kind: AttributeKind, direction: Direction) -> Self {
        AttributeSpec { id: id.into(), kind, direction }
    }
}

/// Normalizes one attribute column.
pub fn normalize_column(cells: &[RawCell], spec: &AttributeSpec) -> Result<Vec<GeneralizedValue>> {
    if cells.is_empty() {
        return Err(Error::Domain(format!("attribute {:?} has an empty column", spec.id)));
    }
    for (i, cell) in cells.iter().enumerate() {
        cell.validate()?;
        if cell.kind() != spec.kind {
            return Err(Error::Domain(format!(
                "attribute {:?} is declared {} but plan {} holds a {} value",
                spec.id,
                spec.kind,
                i + 1,
                cell.kind()
            )));
        }
    }
    match spec.kind {
        AttributeKind::Real | AttributeKind::Interval => {
            let bounds: Vec<(f64, f64)> = cells
                .iter()
                .map(|c| match *c {
                    RawCell::Real(v) => (v, v),
                    RawCell::Interval(lo, hi) => (lo, hi),
                    _ => unreachable!("kind checked above"),
                })
                .collect();
            normalize_bounds(&bounds, spec)
        }
        AttributeKind::Linguistic => {
            let terms: Vec<LinguisticTerm> = cells
                .iter()
                .map(|c| match *c {
                    RawCell::Linguistic(t) => oriented(t, spec.direction),
                    _ => unreachable!("kind checked above"),
                })
                .collect();
            normalize_triangles(&terms, spec)
        }
        AttributeKind::UncertainLinguistic => {
            let pairs: Vec<(LinguisticTerm, LinguisticTerm)> = cells
                .iter()
                .map(|c| match (*c, spec.direction) {
                    (RawCell::UncertainLinguistic(l, u), Direction::Benefit) => (l, u),
                    (RawCell::UncertainLinguistic(l, u), Direction::Cost) => (u.complement(), l.complement()),
                    _ => unreachable!("kind checked above"),
                })
                .collect();
            normalize_trapezoids(&pairs, spec)
        }
    }
}

fn oriented(term: LinguisticTerm, direction: Direction) -> LinguisticTerm {
    match direction {
        Direction::Benefit => term,
        Direction::Cost => term.complement(),
    }
}

fn normalize_bounds(bounds: &[(f64, f64)], spec: &AttributeSpec) -> Result<Vec<GeneralizedValue>> {
    if let Some(i) = bounds.iter().position(|&(lo, _)| lo < 0.0) {
        return Err(Error::Domain(format!(
            "attribute {:?}: plan {} has a negative value",
            spec.id,
            i + 1
        )));
    }
    let (lower, upper): (Vec<f64>, Vec<f64>) = match spec.direction {
        Direction::Benefit => {
            let sum_lo: f64 = bounds.iter().map(|b| b.0).sum();
            let sum_hi: f64 = bounds.iter().map(|b| b.1).sum();
            if sum_lo <= 0.0 {
                return Err(Error::Domain(format!(
                    "attribute {:?}: lower bounds sum to zero",
                    spec.id
                )));
            }
            bounds.iter().map(|&(lo, hi)| (lo / sum_hi, hi / sum_lo)).unzip()
        }
        Direction::Cost => {
            if let Some(i) = bounds.iter().position(|&(lo, _)| lo <= 0.0) {
                return Err(Error::Domain(format!(
                    "attribute {:?} is cost-type but plan {} has a zero value",
                    spec.id,
                    i + 1
                )));
            }
            let sum_inv_lo: f64 = bounds.iter().map(|b| 1.0 / b.0).sum();
            let sum_inv_hi: f64 = bounds.iter().map(|b| 1.0 / b.1).sum();
            bounds
                .iter()
                .map(|&(lo, hi)| ((1.0 / hi) / sum_inv_lo, (1.0 / lo) / sum_inv_hi))
                .unzip()
        }
    };
    lower
        .into_iter()
        .zip(upper)
        .map(|(l, u)| GeneralizedValue::from_unsorted([l, l, u, u]))
        .collect()
}

fn normalize_triangles(terms: &[LinguisticTerm], spec: &AttributeSpec) -> Result<Vec<GeneralizedValue>> {
    let sum_mid: f64 = terms.iter().map(|t| term_to_triangle(*t).mid).sum();
    if sum_mid <= 0.0 {
        return Err(Error::Domain(format!(
            "attribute {:?}: linguistic midpoints sum to zero",
            spec.id
        )));
    }
    terms
        .iter()
        .map(|t| {
            let tri = term_to_triangle(*t);
            GeneralizedValue::from_unsorted([
                tri.low / sum_mid,
                tri.mid / sum_mid,
                tri.mid / sum_mid,
                tri.high / sum_mid,
            ])
        })
        .collect()
}

fn normalize_trapezoids(
    pairs: &[(LinguisticTerm, LinguisticTerm)],
    spec: &AttributeSpec,
) -> Result<Vec<GeneralizedValue>> {
    let sum_lower_mid: f64 = pairs.iter().map(|(l, _)| term_to_triangle(*l).mid).sum();
    let sum_upper_mid: f64 = pairs.iter().map(|(_, u)| term_to_triangle(*u).mid).sum();
    if sum_lower_mid <= 0.0 || sum_upper_mid <= 0.0 {
        return Err(Error::Domain(format!(
            "attribute {:?}: uncertain linguistic midpoints sum to zero",
            spec.id
        )));
    }
    pairs
        .iter()
        .map(|(l, u)| {
            let a = term_to_triangle(*l);
            let b = term_to_triangle(*u);
            // the two inner components use different sums and may cross
            GeneralizedValue::from_unsorted([
                a.low / sum_lower_mid,
                a.mid / sum_lower_mid,
                b.mid / sum_upper_mid,
                b.high / sum_upper_mid,
            ])
        })
        .collect()
}

/// Normalizes a full `plans x attributes` raw matrix column by column.
pub fn normalize_matrix(raw: &[Vec<RawCell>], specs: &[AttributeSpec]) -> Result<NormalizedMatrix> {
    if specs.is_empty() {
        return Err(Error::Domain("problem has no attributes".into()));
    }
    if let Some(i) = raw.iter().position(|r| r.len() != specs.len()) {
        return Err(Error::Dimension(format!(
            "row {} has {} cells, expected {}",
            i + 1,
            raw[i].len(),
            specs.len()
        )));
    }
    let columns = specs
        .iter()
        .enumerate()
        .map(|(j, spec)| {
            let cells: Vec<RawCell> = raw.iter().map(|r| r[j]).collect();
            normalize_column(&cells, spec).map_err(|e| match e {
                Error::Domain(msg) => Error::at(Location::Attribute { id: spec.id.clone(), index: j }, msg),
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    NormalizedMatrix::from_columns(columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::collections::BTreeMap;

    fn spec(kind: AttributeKind, direction: Direction) -> AttributeSpec {
        AttributeSpec::new("A", kind, direction)
    }

    fn term(label: &str) -> LinguisticTerm {
        LinguisticTerm::parse(label, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn benefit_intervals() {
        let cells = [RawCell::Interval(1.0, 2.0), RawCell::Interval(3.0, 4.0)];
        let out = normalize_column(&cells, &spec(AttributeKind::Interval, Direction::Benefit)).unwrap();
        let c = out[0].components();
        assert_relative_eq!(c[0], 1.0 / 6.0);
        assert_relative_eq!(c[1], 1.0 / 6.0);
        assert_relative_eq!(c[2], 0.5);
        assert_relative_eq!(c[3], 0.5);
    }

    #[test]
    fn cost_intervals_swap_reciprocal_bounds() {
        let cells = [RawCell::Interval(1.0, 2.0), RawCell::Interval(2.0, 4.0)];
        let out = normalize_column(&cells, &spec(AttributeKind::Interval, Direction::Cost)).unwrap();
        let c = out[0].components();
        assert_relative_eq!(c[0], 1.0 / 3.0);
        assert_relative_eq!(c[3], 4.0 / 3.0);
        for v in &out {
            assert!(v.a1() <= v.a4());
        }
    }

    #[test]
    fn single_plan_self_normalizes() {
        let out = normalize_column(
            &[RawCell::Interval(5.0, 5.0)],
            &spec(AttributeKind::Interval, Direction::Benefit),
        )
        .unwrap();
        assert_eq!(out[0].components(), [1.0; 4]);
        let out = normalize_column(&[RawCell::Real(7.0)], &spec(AttributeKind::Real, Direction::Cost)).unwrap();
        assert_eq!(out[0].components(), [1.0; 4]);
    }

    #[test]
    fn reals_are_degenerate_intervals() {
        let reals = [RawCell::Real(3.0), RawCell::Real(5.0)];
        let ints = [RawCell::Interval(3.0, 3.0), RawCell::Interval(5.0, 5.0)];
        for dir in [Direction::Cost, Direction::Benefit] {
            let a = normalize_column(&reals, &spec(AttributeKind::Real, dir)).unwrap();
            let b = normalize_column(&ints, &spec(AttributeKind::Interval, dir)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn triangles_divide_by_midpoint_sum() {
        let cells = [RawCell::Linguistic(term("high")), RawCell::Linguistic(term("low"))];
        let out = normalize_column(&cells, &spec(AttributeKind::Linguistic, Direction::Benefit)).unwrap();
        let c = out[0].components();
        assert_relative_eq!(c[0], 0.7);
        assert_relative_eq!(c[1], 0.8);
        assert_relative_eq!(c[2], 0.8);
        assert_relative_eq!(c[3], 0.9);
    }

    #[test]
    fn cost_linguistic_is_mirrored() {
        let cells = [RawCell::Linguistic(term("high")), RawCell::Linguistic(term("low"))];
        let cost = normalize_column(&cells, &spec(AttributeKind::Linguistic, Direction::Cost)).unwrap();
        let mirrored = [RawCell::Linguistic(term("low")), RawCell::Linguistic(term("high"))];
        let benefit = normalize_column(&mirrored, &spec(AttributeKind::Linguistic, Direction::Benefit)).unwrap();
        assert_eq!(cost, benefit);

        let cells = [RawCell::UncertainLinguistic(term("low"), term("a little low"))];
        let cost = normalize_column(&cells, &spec(AttributeKind::UncertainLinguistic, Direction::Cost)).unwrap();
        let mirrored = [RawCell::UncertainLinguistic(term("a little high"), term("high"))];
        let benefit =
            normalize_column(&mirrored, &spec(AttributeKind::UncertainLinguistic, Direction::Benefit)).unwrap();
        assert_eq!(cost, benefit);
    }

    #[test]
    fn trapezoids_stay_ordered_when_inner_pair_crosses() {
        let cells = [
            RawCell::UncertainLinguistic(term("low"), term("high")),
            RawCell::UncertainLinguistic(term("high"), term("high")),
        ];
        let out = normalize_column(&cells, &spec(AttributeKind::UncertainLinguistic, Direction::Benefit)).unwrap();
        // lower sum 1.0, upper sum 1.6: raw second entry would be (0.7, 0.8, 0.5, 0.5625)
        let c = out[1].components();
        assert_relative_eq!(c[0], 0.5);
        assert_relative_eq!(c[1], 0.5625);
        assert_relative_eq!(c[2], 0.7);
        assert_relative_eq!(c[3], 0.8);
    }

    #[test]
    fn errors() {
        let s = spec(AttributeKind::Interval, Direction::Cost);
        assert!(matches!(normalize_column(&[], &s), Err(Error::Domain(_))));
        assert!(matches!(
            normalize_column(&[RawCell::Interval(0.0, 1.0)], &s),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            normalize_column(&[RawCell::Real(1.0)], &s),
            Err(Error::Domain(_))
        ));
        let b = spec(AttributeKind::Real, Direction::Benefit);
        assert!(matches!(normalize_column(&[RawCell::Real(-1.0), RawCell::Real(2.0)], &b), Err(Error::Domain(_))));
        assert!(matches!(normalize_column(&[RawCell::Real(0.0), RawCell::Real(0.0)], &b), Err(Error::Domain(_))));
        let l = spec(AttributeKind::Linguistic, Direction::Benefit);
        assert!(matches!(
            normalize_column(&[RawCell::Linguistic(term("extremely low"))], &l),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn matrix_errors_name_the_attribute() {
        let raw = vec![vec![RawCell::Real(1.0), RawCell::Real(0.0)]];
        let specs = [
            AttributeSpec::new("A1", AttributeKind::Real, Direction::Benefit),
            AttributeSpec::new("A2", AttributeKind::Real, Direction::Cost),
        ];
        let err = normalize_matrix(&raw, &specs).unwrap_err();
        assert!(err.to_string().contains("A2"), "{err}");
    }
}
