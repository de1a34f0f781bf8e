//! Value types shared by every stage: generalized 4-tuples, interval grey
//! numbers, the eleven-term linguistic scale and raw mixed-type cells.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered 4-tuple `a1 <= a2 <= a3 <= a4` that represents a real number,
/// an interval, a triangular or a trapezoidal fuzzy number uniformly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct GeneralizedValue([f64; 4]);

impl GeneralizedValue {
    pub fn new(a1: f64, a2: f64, a3: f64, a4: f64) -> Result<Self> {
        Self::try_from([a1, a2, a3, a4])
    }

    /// Builds a value from components that may be out of order by rounding
    /// noise; the components are sorted ascending.
    pub fn from_unsorted(mut parts: [f64; 4]) -> Result<Self> {
        if parts.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidValue(format!("non-finite component in {parts:?}")));
        }
        parts.sort_by(f64::total_cmp);
        Ok(GeneralizedValue(parts))
    }

    pub fn real(v: f64) -> Result<Self> {
        Self::new(v, v, v, v)
    }

    pub const fn zero() -> Self {
        GeneralizedValue([0.0; 4])
    }

    pub fn components(&self) -> [f64; 4] {
        self.0
    }

    pub fn a1(&self) -> f64 {
        self.0[0]
    }
    pub fn a2(&self) -> f64 {
        self.0[1]
    }
    pub fn a3(&self) -> f64 {
        self.0[2]
    }
    pub fn a4(&self) -> f64 {
        self.0[3]
    }

    /// Componentwise map that must keep the ordering (monotone maps do).
    pub(crate) fn map_monotone(&self, f: impl Fn(usize, f64) -> f64) -> Self {
        let mut out = [0.0; 4];
        for (k, v) in self.0.iter().enumerate() {
            out[k] = f(k, *v);
        }
        debug_assert!(out.windows(2).all(|w| w[0] <= w[1]), "ordering broken: {out:?}");
        GeneralizedValue(out)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0[0] >= 0.0
    }
}

impl TryFrom<[f64; 4]> for GeneralizedValue {
    type Error = Error;

    fn try_from(parts: [f64; 4]) -> Result<Self> {
        if parts.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidValue(format!("non-finite component in {parts:?}")));
        }
        if !parts.windows(2).all(|w| w[0] <= w[1]) {
            return Err(Error::InvalidValue(format!(
                "components must be ascending, got {parts:?}"
            )));
        }
        Ok(GeneralizedValue(parts))
    }
}

impl From<GeneralizedValue> for [f64; 4] {
    fn from(v: GeneralizedValue) -> Self {
        v.0
    }
}

impl fmt::Display for GeneralizedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = f.precision().unwrap_or(4);
        write!(
            f,
            "({:.p$}, {:.p$}, {:.p$}, {:.p$})",
            self.0[0], self.0[1], self.0[2], self.0[3]
        )
    }
}

/// Four-dimensional Euclidean distance between two generalized values.
pub fn distance(a: &GeneralizedValue, b: &GeneralizedValue) -> f64 {
    a.0.iter()
        .zip(b.0.iter())
        .map(|(x, y)| (y - x) * (y - x))
        .sum::<f64>()
        .sqrt()
}

/// Closed interval `[lo, hi]` with `0 <= lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct IntervalGreyNumber {
    lo: f64,
    hi: f64,
}

impl IntervalGreyNumber {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidValue(format!("non-finite interval [{lo}, {hi}]")));
        }
        if lo < 0.0 || lo > hi {
            return Err(Error::InvalidValue(format!(
                "interval grey number needs 0 <= lo <= hi, got [{lo}, {hi}]"
            )));
        }
        Ok(IntervalGreyNumber { lo, hi })
    }

    pub fn crisp(v: f64) -> Result<Self> {
        Self::new(v, v)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

impl TryFrom<[f64; 2]> for IntervalGreyNumber {
    type Error = Error;
    fn try_from(v: [f64; 2]) -> Result<Self> {
        Self::new(v[0], v[1])
    }
}

impl From<IntervalGreyNumber> for [f64; 2] {
    fn from(v: IntervalGreyNumber) -> Self {
        [v.lo, v.hi]
    }
}

impl fmt::Display for IntervalGreyNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = f.precision().unwrap_or(4);
        write!(f, "[{:.p$}, {:.p$}]", self.lo, self.hi)
    }
}

/// Canonical labels of the scale, index -5 first.
pub const SCALE_LABELS: [&str; 11] = [
    "extremely low",
    "very low",
    "low",
    "comparatively low",
    "a little low",
    "general",
    "a little high",
    "comparatively high",
    "high",
    "very high",
    "extremely high",
];

/// Built-in alternate spellings found in practice. `rather` is read as
/// `comparatively`; `ordinary` is the same term as `general`.
pub const BUILTIN_ALIASES: [(&str, &str); 3] = [
    ("ordinary", "general"),
    ("rather low", "comparatively low"),
    ("rather high", "comparatively high"),
];

// (L, M, U) per scale index, -5 first.
const TRIANGLES: [(f64, f64, f64); 11] = [
    (0.0, 0.0, 0.1),
    (0.0, 0.1, 0.2),
    (0.1, 0.2, 0.3),
    (0.2, 0.3, 0.4),
    (0.3, 0.4, 0.5),
    (0.4, 0.5, 0.6),
    (0.5, 0.6, 0.7),
    (0.6, 0.7, 0.8),
    (0.7, 0.8, 0.9),
    (0.8, 0.9, 1.0),
    (0.9, 1.0, 1.0),
];

/// One term of the eleven-point linguistic scale, identified by its index
/// in `-5..=5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinguisticTerm(i8);

impl LinguisticTerm {
    pub fn from_index(index: i32) -> Result<Self> {
        if (-5..=5).contains(&index) {
            Ok(LinguisticTerm(index as i8))
        } else {
            Err(Error::InvalidIndex(index))
        }
    }

    /// Looks a label up among the canonical labels, the built-in aliases and
    /// `extra` (alias -> canonical label). Matching ignores case and repeated
    /// whitespace. `extra` wins over the built-ins.
    pub fn parse(label: &str, extra: &BTreeMap<String, String>) -> Result<Self> {
        let key = canonical_key(label);
        let resolved = extra
            .iter()
            .find(|(alias, _)| canonical_key(alias) == key)
            .map(|(_, target)| canonical_key(target))
            .or_else(|| {
                BUILTIN_ALIASES
                    .iter()
                    .find(|(alias, _)| *alias == key)
                    .map(|(_, target)| target.to_string())
            })
            .unwrap_or(key);
        SCALE_LABELS
            .iter()
            .position(|l| *l == resolved)
            .map(|pos| LinguisticTerm(pos as i8 - 5))
            .ok_or_else(|| Error::InvalidTerm { label: label.to_string(), valid: valid_terms(extra) })
    }

    pub fn index(self) -> i32 {
        self.0 as i32
    }

    pub fn label(self) -> &'static str {
        SCALE_LABELS[(self.0 + 5) as usize]
    }

    /// The term mirrored around `general` (index -> -index).
    pub fn complement(self) -> Self {
        LinguisticTerm(-self.0)
    }
}

impl fmt::Display for LinguisticTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn canonical_key(label: &str) -> String {
    label.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

fn valid_terms(extra: &BTreeMap<String, String>) -> String {
    let mut out = SCALE_LABELS.join(", ");
    let aliases: Vec<String> = BUILTIN_ALIASES
        .iter()
        .map(|(a, t)| format!("{a} (= {t})"))
        .chain(extra.iter().map(|(a, t)| format!("{a} (= {t})")))
        .collect();
    out.push_str("; aliases: ");
    out.push_str(&aliases.join(", "));
    out
}

/// Triangular fuzzy number `(L, M, U)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    pub low: f64,
    pub mid: f64,
    pub high: f64,
}

pub fn term_to_triangle(term: LinguisticTerm) -> Triangle {
    let (low, mid, high) = TRIANGLES[(term.0 + 5) as usize];
    Triangle { low, mid, high }
}

/// A raw decision-matrix entry before lifting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RawCell {
    Real(f64),
    Interval(f64, f64),
    Linguistic(LinguisticTerm),
    UncertainLinguistic(LinguisticTerm, LinguisticTerm),
}

impl RawCell {
    /// Checked constructor for intervals.
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        let cell = RawCell::Interval(lo, hi);
        cell.validate()?;
        Ok(cell)
    }

    /// Checked constructor for uncertain linguistic values.
    pub fn uncertain(lower: LinguisticTerm, upper: LinguisticTerm) -> Result<Self> {
        let cell = RawCell::UncertainLinguistic(lower, upper);
        cell.validate()?;
        Ok(cell)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            RawCell::Real(v) if !v.is_finite() => {
                Err(Error::InvalidValue(format!("non-finite real {v}")))
            }
            RawCell::Interval(lo, hi) if !lo.is_finite() || !hi.is_finite() => {
                Err(Error::InvalidValue(format!("non-finite interval [{lo}, {hi}]")))
            }
            RawCell::Interval(lo, hi) if lo > hi => Err(Error::InvalidValue(format!(
                "interval lower bound {lo} exceeds upper bound {hi}"
            ))),
            RawCell::UncertainLinguistic(l, u) if l > u => Err(Error::InvalidValue(format!(
                "uncertain linguistic lower term {l:?} ranks above upper term {u:?}",
                l = l.label(),
                u = u.label()
            ))),
            _ => Ok(()),
        }
    }

    pub fn kind(&self) -> AttributeKind {
        match self {
            RawCell::Real(_) => AttributeKind::Real,
            RawCell::Interval(..) => AttributeKind::Interval,
            RawCell::Linguistic(_) => AttributeKind::Linguistic,
            RawCell::UncertainLinguistic(..) => AttributeKind::UncertainLinguistic,
        }
    }
}

impl fmt::Display for RawCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RawCell::Real(v) => write!(f, "{v}"),
            RawCell::Interval(lo, hi) => write!(f, "[{lo}, {hi}]"),
            RawCell::Linguistic(t) => write!(f, "{t}"),
            RawCell::UncertainLinguistic(l, u) => write!(f, "[{l}, {u}]"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AttributeKind {
    Real,
    Interval,
    Linguistic,
    UncertainLinguistic,
}

impl fmt::Display for AttributeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AttributeKind::Real => "real",
            AttributeKind::Interval => "interval",
            AttributeKind::Linguistic => "linguistic",
            AttributeKind::UncertainLinguistic => "uncertain-linguistic",
        })
    }
}

/// Lifts a raw cell to its generalized 4-tuple.
pub fn lift(cell: &RawCell) -> Result<GeneralizedValue> {
    cell.validate()?;
    match *cell {
        RawCell::Real(v) => GeneralizedValue::real(v),
        RawCell::Interval(lo, hi) => GeneralizedValue::new(lo, lo, hi, hi),
        RawCell::Linguistic(term) => {
            let t = term_to_triangle(term);
            GeneralizedValue::new(t.low, t.mid, t.mid, t.high)
        }
        RawCell::UncertainLinguistic(lower, upper) => {
            let a = term_to_triangle(lower);
            let b = term_to_triangle(upper);
            GeneralizedValue::new(a.low, a.mid, b.mid, b.high)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn term(label: &str) -> LinguisticTerm {
        LinguisticTerm::parse(label, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn triangle_table() {
        assert_eq!(term_to_triangle(term("low")), Triangle { low: 0.1, mid: 0.2, high: 0.3 });
        assert_eq!(term_to_triangle(term("extremely low")), Triangle { low: 0.0, mid: 0.0, high: 0.1 });
        assert_eq!(term_to_triangle(term("very high")), Triangle { low: 0.8, mid: 0.9, high: 1.0 });
        assert_eq!(term_to_triangle(term("extremely high")), Triangle { low: 0.9, mid: 1.0, high: 1.0 });
    }

    #[test]
    fn labels_round_trip_through_indices() {
        for idx in -5..=5 {
            let t = LinguisticTerm::from_index(idx).unwrap();
            assert_eq!(term(t.label()), t);
            assert_eq!(t.index(), idx);
        }
        assert!(matches!(LinguisticTerm::from_index(6), Err(Error::InvalidIndex(6))));
    }

    #[test]
    fn aliases_and_spelling() {
        assert_eq!(term("rather high").index(), 2);
        assert_eq!(term("Rather  LOW").index(), -2);
        assert_eq!(term("ordinary").index(), 0);
        assert_eq!(term("Low").index(), -3);

        let mut extra = BTreeMap::new();
        extra.insert("rather high".to_string(), "a little high".to_string());
        assert_eq!(LinguisticTerm::parse("rather high", &extra).unwrap().index(), 1);
    }

    #[test]
    fn unknown_term_lists_the_scale() {
        let err = LinguisticTerm::parse("sort of high", &BTreeMap::new()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("sort of high"));
        for label in SCALE_LABELS {
            assert!(msg.contains(label), "{msg}");
        }
        assert!(msg.contains("rather high"));
    }

    #[test]
    fn triangle_is_monotone_in_index() {
        for idx in -5..5 {
            let a = term_to_triangle(LinguisticTerm::from_index(idx).unwrap());
            let b = term_to_triangle(LinguisticTerm::from_index(idx + 1).unwrap());
            assert!(a.low <= b.low && a.mid <= b.mid && a.high <= b.high);
            assert!(a.low <= a.mid && a.mid <= a.high);
        }
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift(&RawCell::Real(3610.0)).unwrap().components(), [3610.0; 4]);
        assert_eq!(
            lift(&RawCell::Interval(465.0, 485.0)).unwrap().components(),
            [465.0, 465.0, 485.0, 485.0]
        );
        assert_eq!(
            lift(&RawCell::Linguistic(term("high"))).unwrap().components(),
            [0.7, 0.8, 0.8, 0.9]
        );
        let u = lift(&RawCell::UncertainLinguistic(term("a little high"), term("rather high"))).unwrap();
        assert_eq!(u.components(), [0.5, 0.6, 0.7, 0.8]);
    }

    #[test]
    fn invalid_cells_rejected() {
        assert!(RawCell::interval(485.0, 465.0).is_err());
        assert!(RawCell::uncertain(term("high"), term("a little high")).is_err());
        assert!(lift(&RawCell::Real(f64::NAN)).is_err());
    }

    #[test]
    fn distance_examples() {
        let a = GeneralizedValue::new(0.1, 0.2, 0.3, 0.4).unwrap();
        assert_eq!(distance(&a, &a), 0.0);
        let zero = GeneralizedValue::zero();
        assert_relative_eq!(distance(&zero, &GeneralizedValue::real(1.0).unwrap()), 2.0);
        assert_relative_eq!(distance(&zero, &GeneralizedValue::new(0.0, 0.0, 3.0, 4.0).unwrap()), 5.0);
    }

    #[test]
    fn interval_grey_invariants() {
        assert!(IntervalGreyNumber::new(-0.1, 0.2).is_err());
        assert!(IntervalGreyNumber::new(0.3, 0.2).is_err());
        let w = IntervalGreyNumber::new(0.2, 0.3).unwrap();
        assert!(w.contains(0.25) && !w.contains(0.31));
    }

    #[test]
    fn generalized_value_rejects_disorder() {
        assert!(GeneralizedValue::new(0.2, 0.1, 0.3, 0.4).is_err());
        let v = GeneralizedValue::from_unsorted([0.2, 0.1, 0.4, 0.3]).unwrap();
        assert_eq!(v.components(), [0.1, 0.2, 0.3, 0.4]);
        let parsed: GeneralizedValue = serde_json::from_str("[0.1,0.2,0.3,0.4]").unwrap();
        assert_eq!(parsed.a4(), 0.4);
        assert!(serde_json::from_str::<GeneralizedValue>("[0.4,0.2,0.3,0.4]").is_err());
    }
}
