use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grey::GeneralizedValue;

/// Row-major `plans x attributes` matrix of generalized values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueMatrix {
    plans: usize,
    attributes: usize,
    rows: Vec<Vec<GeneralizedValue>>,
}

/// Output of normalization (`X`).
pub type NormalizedMatrix = ValueMatrix;

/// Preference-blended (`Z`) or weight-scaled (`Y`) matrix.
pub type WeightedMatrix = ValueMatrix;

impl ValueMatrix {
    pub fn from_rows(rows: Vec<Vec<GeneralizedValue>>) -> Result<Self> {
        let plans = rows.len();
        if plans == 0 {
            return Err(Error::Dimension("matrix has no plans".into()));
        }
        let attributes = rows[0].len();
        if attributes == 0 {
            return Err(Error::Dimension("matrix has no attributes".into()));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != attributes) {
            return Err(Error::Dimension(format!(
                "row {} has {} entries, expected {attributes}",
                i + 1,
                r.len()
            )));
        }
        Ok(ValueMatrix { plans, attributes, rows })
    }

    /// Assembles a matrix from per-attribute columns.
    pub fn from_columns(columns: Vec<Vec<GeneralizedValue>>) -> Result<Self> {
        let attributes = columns.len();
        if attributes == 0 {
            return Err(Error::Dimension("matrix has no attributes".into()));
        }
        let plans = columns[0].len();
        if columns.iter().any(|c| c.len() != plans) {
            return Err(Error::Dimension("columns differ in length".into()));
        }
        let rows = (0..plans).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
        Self::from_rows(rows)
    }

    pub fn plans(&self) -> usize {
        self.plans
    }

    pub fn attributes(&self) -> usize {
        self.attributes
    }

    pub fn get(&self, plan: usize, attribute: usize) -> &GeneralizedValue {
        &self.rows[plan][attribute]
    }

    pub fn row(&self, plan: usize) -> &[GeneralizedValue] {
        &self.rows[plan]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[GeneralizedValue]> {
        self.rows.iter().map(Vec::as_slice)
    }

    pub fn column(&self, attribute: usize) -> impl Iterator<Item = &GeneralizedValue> + '_ {
        self.rows.iter().map(move |r| &r[attribute])
    }

    pub fn is_nonnegative(&self) -> bool {
        self.rows.iter().flatten().all(GeneralizedValue::is_nonnegative)
    }

    pub(crate) fn map(&self, f: impl Fn(usize, usize, &GeneralizedValue) -> GeneralizedValue) -> Self {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().enumerate().map(|(j, v)| f(i, j, v)).collect())
            .collect();
        ValueMatrix { plans: self.plans, attributes: self.attributes, rows }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_checked() {
        let v = GeneralizedValue::zero();
        assert!(ValueMatrix::from_rows(vec![]).is_err());
        assert!(ValueMatrix::from_rows(vec![vec![]]).is_err());
        assert!(ValueMatrix::from_rows(vec![vec![v, v], vec![v]]).is_err());
        let m = ValueMatrix::from_columns(vec![vec![v, v, v], vec![v, v, v]]).unwrap();
        assert_eq!((m.plans(), m.attributes()), (3, 2));
        assert_eq!(m.column(1).count(), 3);
    }
}
