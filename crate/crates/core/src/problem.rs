//! Problem files: a JSON document describing plans, typed attributes, the
//! raw matrix, subjective weights, plan preferences and method parameters.
//!
//! Cells are single-key objects: `{"real": 3610}`, `{"interval": [465, 485]}`,
//! `{"ling": "high"}` or `{"uling": ["low", "a little low"]}`.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::aggregate::{BordaConfig, TieBreak};
use crate::error::{Error, Location, Result};
use crate::evaluate::MethodParams;
use crate::grey::{AttributeKind, GeneralizedValue, IntervalGreyNumber, LinguisticTerm, RawCell};
use crate::normalize::{AttributeSpec, Direction};
use crate::weights::subjective_interval_weights;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema: u32,
    /// Free-form remarks; ignored by the solver.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub plans: Vec<String>,
    pub attributes: Vec<AttributeEntry>,
    pub matrix: Vec<Vec<Value>>,
    pub subjective_weights: SubjectiveWeights,
    pub preferences: Vec<[f64; 4]>,
    #[serde(default)]
    pub params: Params,
    /// Extra label aliases, alias -> canonical scale label.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub linguistic_aliases: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttributeEntry {
    pub id: String,
    pub kind: AttributeKind,
    pub direction: Direction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum SubjectiveWeights {
    /// One weight vector per expert.
    Experts(Vec<Vec<f64>>),
    /// The interval envelope given directly.
    Interval(Vec<[f64; 2]>),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default = "default_half")]
    pub rho: f64,
    #[serde(default = "default_half")]
    pub theta_plus: f64,
    #[serde(default = "default_half")]
    pub theta_minus: f64,
    #[serde(default = "default_borda")]
    pub borda_weights: [f64; 4],
    #[serde(default)]
    pub tie_break: TieBreak,
}

fn default_half() -> f64 {
    0.5
}

fn default_borda() -> [f64; 4] {
    [0.25; 4]
}

impl Default for Params {
    fn default() -> Self {
        Params {
            rho: 0.5,
            theta_plus: 0.5,
            theta_minus: 0.5,
            borda_weights: default_borda(),
            tie_break: TieBreak::default(),
        }
    }
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// A fully validated problem ready for the pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionProblem {
    pub plans: Vec<String>,
    pub attributes: Vec<AttributeSpec>,
    /// `plans x attributes` raw cells.
    pub cells: Vec<Vec<RawCell>>,
    pub alpha: Vec<IntervalGreyNumber>,
    pub preferences: Vec<GeneralizedValue>,
    pub params: MethodParams,
    pub borda: BordaConfig,
    pub source: ProblemFile,
}

pub fn parse_problem(path: impl AsRef<Path>) -> Result<DecisionProblem> {
    let text = std::fs::read_to_string(path)?;
    parse_problem_str(&text)
}

pub fn parse_problem_str(text: &str) -> Result<DecisionProblem> {
    DecisionProblem::from_file(ProblemFile::from_json(text)?)
}

impl DecisionProblem {
    pub fn from_file(file: ProblemFile) -> Result<Self> {
        if file.schema != SCHEMA_VERSION {
            return Err(Error::at(
                Location::Field("schema".into()),
                format!("unsupported schema version {}, expected {SCHEMA_VERSION}", file.schema),
            ));
        }
        let n = file.plans.len();
        let m = file.attributes.len();
        if n == 0 {
            return Err(Error::at(Location::Field("plans".into()), "at least one plan is required"));
        }
        if m == 0 {
            return Err(Error::at(Location::Field("attributes".into()), "at least one attribute is required"));
        }
        let mut seen = HashSet::new();
        for (index, name) in file.plans.iter().enumerate() {
            if !seen.insert(name.as_str()) {
                return Err(Error::at(Location::Plan { name: name.clone(), index }, "duplicate plan name"));
            }
        }
        let mut seen = HashSet::new();
        for (index, a) in file.attributes.iter().enumerate() {
            if !seen.insert(a.id.as_str()) {
                return Err(Error::at(Location::Attribute { id: a.id.clone(), index }, "duplicate attribute id"));
            }
        }
        for (alias, target) in &file.linguistic_aliases {
            LinguisticTerm::parse(target, &BTreeMap::new()).map_err(|_| {
                Error::at(
                    Location::Field("linguistic_aliases".into()),
                    format!("alias {alias:?} points at {target:?}, which is not a scale term"),
                )
            })?;
        }

        if file.matrix.len() != n {
            return Err(Error::at(
                Location::Field("matrix".into()),
                format!("{} rows for {n} plans", file.matrix.len()),
            ));
        }
        let mut cells = Vec::with_capacity(n);
        for (i, row) in file.matrix.iter().enumerate() {
            if row.len() != m {
                return Err(Error::at(
                    Location::Plan { name: file.plans[i].clone(), index: i },
                    format!("row has {} cells for {m} attributes", row.len()),
                ));
            }
            let parsed = row
                .iter()
                .enumerate()
                .map(|(j, value)| {
                    let location = Location::Cell {
                        plan: file.plans[i].clone(),
                        attribute: file.attributes[j].id.clone(),
                        row: i,
                        col: j,
                    };
                    let cell = decode_cell(value, &file.linguistic_aliases)
                        .map_err(|e| Error::at(location.clone(), e.to_string()))?;
                    let expected = file.attributes[j].kind;
                    if cell.kind() != expected {
                        return Err(Error::at(
                            location,
                            format!("attribute is declared {expected} but the cell holds a {} value", cell.kind()),
                        ));
                    }
                    Ok(cell)
                })
                .collect::<Result<Vec<_>>>()?;
            cells.push(parsed);
        }

        let alpha = match &file.subjective_weights {
            SubjectiveWeights::Experts(vectors) => {
                if let Some((l, v)) = vectors.iter().enumerate().find(|(_, v)| v.len() != m) {
                    return Err(Error::at(
                        Location::Field("subjective_weights".into()),
                        format!("expert {} gives {} weights for {m} attributes", l + 1, v.len()),
                    ));
                }
                subjective_interval_weights(vectors)
                    .map_err(|e| Error::at(Location::Field("subjective_weights".into()), e.to_string()))?
            }
            SubjectiveWeights::Interval(bounds) => {
                if bounds.len() != m {
                    return Err(Error::at(
                        Location::Field("subjective_weights".into()),
                        format!("{} intervals for {m} attributes", bounds.len()),
                    ));
                }
                bounds
                    .iter()
                    .enumerate()
                    .map(|(j, b)| {
                        IntervalGreyNumber::new(b[0], b[1]).map_err(|e| {
                            Error::at(
                                Location::Attribute { id: file.attributes[j].id.clone(), index: j },
                                format!("subjective weight: {e}"),
                            )
                        })
                    })
                    .collect::<Result<Vec<_>>>()?
            }
        };

        if file.preferences.len() != n {
            return Err(Error::at(
                Location::Field("preferences".into()),
                format!("{} preference values for {n} plans", file.preferences.len()),
            ));
        }
        let preferences = file
            .preferences
            .iter()
            .enumerate()
            .map(|(i, q)| {
                let location = Location::Plan { name: file.plans[i].clone(), index: i };
                let v = GeneralizedValue::try_from(*q)
                    .map_err(|e| Error::at(location.clone(), format!("preference: {e}")))?;
                if !v.is_nonnegative() {
                    return Err(Error::at(location, "preference values must be nonnegative"));
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;

        let params = MethodParams {
            rho: file.params.rho,
            theta_plus: file.params.theta_plus,
            theta_minus: file.params.theta_minus,
        };
        params
            .validate()
            .map_err(|e| Error::at(Location::Field("params".into()), e.to_string()))?;
        let borda = BordaConfig { method_weights: file.params.borda_weights, tie_break: file.params.tie_break };
        borda
            .validate()
            .map_err(|e| Error::at(Location::Field("params.borda_weights".into()), e.to_string()))?;

        let attributes = file
            .attributes
            .iter()
            .map(|a| AttributeSpec::new(a.id.clone(), a.kind, a.direction))
            .collect();

        Ok(DecisionProblem {
            plans: file.plans.clone(),
            attributes,
            cells,
            alpha,
            preferences,
            params,
            borda,
            source: file,
        })
    }
}

/// Decodes one tagged cell encoding.
pub fn decode_cell(value: &Value, aliases: &BTreeMap<String, String>) -> Result<RawCell> {
    let malformed = || {
        Error::InvalidValue(format!(
            "malformed cell {value}; expected one of {{\"real\": x}}, {{\"interval\": [lo, hi]}}, \
             {{\"ling\": \"term\"}}, {{\"uling\": [\"lower\", \"upper\"]}}"
        ))
    };
    let obj = value.as_object().filter(|o| o.len() == 1).ok_or_else(malformed)?;
    let (tag, body) = obj.iter().next().expect("one entry");
    let number = |v: &Value| v.as_f64().filter(|x| x.is_finite()).ok_or_else(malformed);
    let pair = |v: &Value| -> Result<(Value, Value)> {
        match v.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok((a.clone(), b.clone())),
            _ => Err(malformed()),
        }
    };
    let term = |v: &Value| -> Result<LinguisticTerm> {
        let label = v.as_str().ok_or_else(malformed)?;
        LinguisticTerm::parse(label, aliases)
    };
    let cell = match tag.as_str() {
        "real" => RawCell::Real(number(body)?),
        "interval" => {
            let (lo, hi) = pair(body)?;
            RawCell::Interval(number(&lo)?, number(&hi)?)
        }
        "ling" => RawCell::Linguistic(term(body)?),
        "uling" => {
            let (lo, hi) = pair(body)?;
            RawCell::UncertainLinguistic(term(&lo)?, term(&hi)?)
        }
        _ => return Err(malformed()),
    };
    cell.validate()?;
    Ok(cell)
}
