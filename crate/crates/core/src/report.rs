//! The pipeline report and its text, CSV and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::aggregate::{RankResult, TieBreak};
use crate::error::{Error, Result};
use crate::evaluate::{Evaluation, MethodScores};
use crate::grey::BUILTIN_ALIASES;
use crate::matrix::{NormalizedMatrix, WeightedMatrix};
use crate::normalize::AttributeSpec;
use crate::problem::{DecisionProblem, ProblemFile};
use crate::weights::WeightBundle;

pub const REPORT_SCHEMA: u32 = 1;

/// Fixed computational conventions, echoed in every report.
pub const CONVENTIONS: [&str; 9] = [
    "real cells are degenerate intervals",
    "cost real/interval columns: reciprocal sum normalization with swapped bounds, lower = (1/hi)/sum(1/lo)",
    "cost linguistic columns: terms mirrored on the scale (index -> -index), then normalized as benefit",
    "normalized tuples are re-sorted ascending",
    "entropy: 0 ln 0 = 0; uniform weights when no attribute discriminates",
    "final weights: outer-bound interval quotient, lo = a_lo b_lo / sum(a_hi b_hi), hi = a_hi b_hi / sum(a_lo b_lo)",
    "incidence coefficients: (d_min + rho d_max) / (d + rho d_max) with global extrema",
    "max-entropy incidence weights: softmax of (sum G+, sum (1 - G-))",
    "method ranks: competition ranking (ties share the smaller rank)",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub rho: f64,
    pub theta_plus: f64,
    pub theta_minus: f64,
    pub borda_weights: [f64; 4],
    pub tie_break: TieBreak,
    /// Every alias in force, built-in and file-supplied.
    pub linguistic_aliases: BTreeMap<String, String>,
    pub attributes: Vec<AttributeSpec>,
    pub conventions: Vec<String>,
}

impl Settings {
    pub fn from_problem(problem: &DecisionProblem) -> Self {
        let mut linguistic_aliases: BTreeMap<String, String> = BUILTIN_ALIASES
            .iter()
            .map(|(a, t)| (a.to_string(), t.to_string()))
            .collect();
        linguistic_aliases.extend(problem.source.linguistic_aliases.clone());
        Settings {
            rho: problem.params.rho,
            theta_plus: problem.params.theta_plus,
            theta_minus: problem.params.theta_minus,
            borda_weights: problem.borda.method_weights,
            tie_break: problem.borda.tie_break,
            linguistic_aliases,
            attributes: problem.attributes.clone(),
            conventions: CONVENTIONS.iter().map(|c| c.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub report_schema: u32,
    pub settings: Settings,
    /// The problem file the report was computed from.
    pub problem: ProblemFile,
    pub normalized: NormalizedMatrix,
    pub weights: WeightBundle,
    pub weighted: WeightedMatrix,
    pub evaluation: Evaluation,
    pub ranking: RankResult,
    /// Degenerate-case fallbacks that were applied.
    pub notes: Vec<String>,
}

impl Report {
    pub fn from_json(text: &str) -> Result<Self> {
        let report: Report = serde_json::from_str(text)?;
        if report.report_schema != REPORT_SCHEMA {
            return Err(Error::Schema(format!("unsupported report schema {}", report.report_schema)));
        }
        Ok(report)
    }

    pub fn plans(&self) -> &[String] {
        &self.problem.plans
    }

    /// Plan names from best to worst.
    pub fn final_order(&self) -> Vec<&str> {
        self.ranking.order.iter().map(|&i| self.problem.plans[i].as_str()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "csv" => Ok(ReportFormat::Csv),
            "json-report" | "json" => Ok(ReportFormat::Json),
            other => Err(Error::InvalidValue(format!(
                "unknown report format {other:?}; expected text, csv or json-report"
            ))),
        }
    }
}

pub fn emit_report(report: &Report, format: ReportFormat) -> Result<Vec<u8>> {
    match format {
        ReportFormat::Text => Ok(render_text(report).into_bytes()),
        ReportFormat::Csv => render_csv(report),
        ReportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(report)?;
            out.push(b'\n');
            Ok(out)
        }
    }
}

/// Renders the report and writes it to `path`.
pub fn write_report(report: &Report, format: ReportFormat, path: &Path) -> Result<()> {
    let bytes = emit_report(report, format)?;
    std::fs::write(path, bytes)?;
    Ok(())
}

fn ordering_line(plans: &[String], ranks: &[usize]) -> String {
    let mut idx: Vec<usize> = (0..plans.len()).collect();
    idx.sort_by_key(|&i| (ranks[i], i));
    let mut out = String::new();
    for (pos, &i) in idx.iter().enumerate() {
        if pos > 0 {
            out.push_str(if ranks[idx[pos - 1]] == ranks[i] { " = " } else { " > " });
        }
        out.push_str(&plans[i]);
    }
    out
}

fn render_text(r: &Report) -> String {
    let plans = r.plans();
    let s = &r.settings;
    let width = plans.iter().map(String::len).max().unwrap_or(4).max(4);
    let awidth = s.attributes.iter().map(|a| a.id.len()).max().unwrap_or(9).max(9);
    let mut o = String::new();

    let _ = writeln!(o, "Grey hybrid decision report");
    let _ = writeln!(o, "===========================");
    let _ = writeln!(o, "plans: {}   attributes: {}", plans.len(), s.attributes.len());
    let _ = writeln!(o, "rho = {}   theta+ = {}   theta- = {}", s.rho, s.theta_plus, s.theta_minus);
    let _ = writeln!(
        o,
        "borda weights (topsis, grey-approach, membership, max-entropy) = {:?}   tie-break = {}",
        s.borda_weights, s.tie_break
    );
    let _ = writeln!(o, "attribute directions:");
    for a in &s.attributes {
        let _ = writeln!(o, "  {:<awidth$}  {:<20}  {}", a.id, a.kind.to_string(), a.direction);
    }
    let _ = writeln!(o, "linguistic aliases:");
    for (alias, target) in &s.linguistic_aliases {
        let _ = writeln!(o, "  {alias} = {target}");
    }
    let _ = writeln!(o, "conventions:");
    for c in &s.conventions {
        let _ = writeln!(o, "  - {c}");
    }
    if !r.notes.is_empty() {
        let _ = writeln!(o, "notes:");
        for n in &r.notes {
            let _ = writeln!(o, "  ! {n}");
        }
    }

    let _ = writeln!(o, "\nNormalized matrix X");
    for (i, row) in r.normalized.rows().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let _ = writeln!(o, "  {:<width$}  {:<awidth$}  {v:.4}", plans[i], s.attributes[j].id);
        }
    }

    let w = &r.weights;
    let _ = writeln!(o, "\nWeights");
    let _ = writeln!(
        o,
        "  {:<awidth$}  {:>16}  {:>7}  {:>7}  {:>7}  {:>7}  {:>7}  {:>16}  {:>16}",
        "attribute", "alpha", "opt", "ent1", "ent2", "ent3", "ent4", "beta", "w"
    );
    for (j, a) in s.attributes.iter().enumerate() {
        let _ = writeln!(
            o,
            "  {:<awidth$}  {:>16}  {:>7.4}  {:>7.4}  {:>7.4}  {:>7.4}  {:>7.4}  {:>16}  {:>16}",
            a.id,
            format!("{:.4}", w.alpha[j]),
            w.beta_opt[j],
            w.beta_ent[0][j],
            w.beta_ent[1][j],
            w.beta_ent[2][j],
            w.beta_ent[3][j],
            format!("{:.4}", w.beta_interval[j]),
            format!("{:.4}", w.w_final[j]),
        );
    }

    let _ = writeln!(o, "\nWeighted matrix Y");
    for (i, row) in r.weighted.rows().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let _ = writeln!(o, "  {:<width$}  {:<awidth$}  {v:.5}", plans[i], s.attributes[j].id);
        }
    }

    let e = &r.evaluation;
    let _ = writeln!(o, "\nIdeal vectors");
    for (j, a) in s.attributes.iter().enumerate() {
        let _ = writeln!(
            o,
            "  {:<awidth$}  +{:.5}  -{:.5}",
            a.id, e.ideals.positive[j], e.ideals.negative[j]
        );
    }

    let _ = writeln!(o, "\nGrey incidence degrees");
    let _ = writeln!(o, "  {:<width$}  {:>8}  {:>8}", "plan", "G+", "G-");
    for (i, p) in plans.iter().enumerate() {
        let _ = writeln!(o, "  {p:<width$}  {:>8.4}  {:>8.4}", e.g_plus[i], e.g_minus[i]);
    }
    let _ = writeln!(o, "  max-entropy weights: beta1 = {:.4}, beta2 = {:.4}", e.beta1, e.beta2);

    for m in e.methods() {
        let _ = writeln!(o, "\nMethod {}", m.method);
        let _ = writeln!(o, "  {:<width$}  {:>8}  {:>4}", "plan", "score", "rank");
        for (i, p) in plans.iter().enumerate() {
            let _ = writeln!(o, "  {p:<width$}  {:>8.4}  {:>4}", m.scores[i], m.ranks[i]);
        }
    }

    let _ = writeln!(o, "\nRankings");
    for m in e.methods() {
        let _ = writeln!(o, "  {:<14} {}", format!("{}:", m.method), ordering_line(plans, &m.ranks));
    }

    let rk = &r.ranking;
    let _ = writeln!(o, "\nWeighted Borda");
    let _ = writeln!(o, "  {:<width$}  {:>8}  {:>9}  {:>5}", "plan", "borda", "tie-break", "final");
    for (i, p) in plans.iter().enumerate() {
        let _ = writeln!(
            o,
            "  {p:<width$}  {:>8.4}  {:>9.4}  {:>5}",
            rk.borda_scores[i], rk.tie_break_scores[i], rk.final_ranks[i]
        );
    }
    let _ = writeln!(o, "\nFinal ranking: {}", ordering_line(plans, &rk.final_ranks));
    o
}

fn csv_section<F>(out: &mut Vec<u8>, name: &str, header: &[&str], fill: F) -> Result<()>
where
    F: FnOnce(&mut csv::Writer<&mut Vec<u8>>) -> Result<()>,
{
    if !out.is_empty() {
        out.push(b'\n');
    }
    out.extend_from_slice(format!("# section: {name}\n").as_bytes());
    let mut w = csv::Writer::from_writer(&mut *out);
    w.write_record(header)?;
    fill(&mut w)?;
    w.flush()?;
    Ok(())
}

fn method_section(out: &mut Vec<u8>, plans: &[String], m: &MethodScores) -> Result<()> {
    csv_section(out, m.method.as_str(), &["plan", "score", "rank"], |w| {
        for (i, p) in plans.iter().enumerate() {
            w.write_record([p.clone(), m.scores[i].to_string(), m.ranks[i].to_string()])?;
        }
        Ok(())
    })
}

fn render_csv(r: &Report) -> Result<Vec<u8>> {
    let plans = r.plans();
    let s = &r.settings;
    let mut out = Vec::new();

    csv_section(&mut out, "settings", &["key", "value"], |w| {
        w.write_record(["rho".to_string(), s.rho.to_string()])?;
        w.write_record(["theta_plus".to_string(), s.theta_plus.to_string()])?;
        w.write_record(["theta_minus".to_string(), s.theta_minus.to_string()])?;
        let bw: Vec<String> = s.borda_weights.iter().map(f64::to_string).collect();
        w.write_record(["borda_weights".to_string(), bw.join(";")])?;
        w.write_record(["tie_break".to_string(), s.tie_break.to_string()])?;
        for (alias, target) in &s.linguistic_aliases {
            w.write_record([format!("alias:{alias}"), target.clone()])?;
        }
        for a in &s.attributes {
            w.write_record([format!("attribute:{}", a.id), format!("{} {}", a.kind, a.direction)])?;
        }
        for c in &s.conventions {
            w.write_record(["convention".to_string(), c.clone()])?;
        }
        for n in &r.notes {
            w.write_record(["note".to_string(), n.clone()])?;
        }
        Ok(())
    })?;

    for (name, matrix, prefix) in [("normalized", &r.normalized, "x"), ("weighted", &r.weighted, "y")] {
        let header: Vec<String> = ["plan".to_string(), "attribute".to_string()]
            .into_iter()
            .chain((1..=4).map(|k| format!("{prefix}{k}")))
            .collect();
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        csv_section(&mut out, name, &header, |w| {
            for (i, row) in matrix.rows().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let mut rec = vec![plans[i].clone(), s.attributes[j].id.clone()];
                    rec.extend(v.components().iter().map(f64::to_string));
                    w.write_record(&rec)?;
                }
            }
            Ok(())
        })?;
    }

    let wb = &r.weights;
    csv_section(
        &mut out,
        "weights",
        &[
            "attribute", "alpha_lo", "alpha_hi", "beta_opt", "beta_ent1", "beta_ent2", "beta_ent3", "beta_ent4",
            "beta_lo", "beta_hi", "w_lo", "w_hi",
        ],
        |w| {
            for (j, a) in s.attributes.iter().enumerate() {
                let vals = [
                    wb.alpha[j].lo(),
                    wb.alpha[j].hi(),
                    wb.beta_opt[j],
                    wb.beta_ent[0][j],
                    wb.beta_ent[1][j],
                    wb.beta_ent[2][j],
                    wb.beta_ent[3][j],
                    wb.beta_interval[j].lo(),
                    wb.beta_interval[j].hi(),
                    wb.w_final[j].lo(),
                    wb.w_final[j].hi(),
                ];
                let mut rec = vec![a.id.clone()];
                rec.extend(vals.iter().map(f64::to_string));
                w.write_record(&rec)?;
            }
            Ok(())
        },
    )?;

    let e = &r.evaluation;
    csv_section(
        &mut out,
        "ideals",
        &["attribute", "pos1", "pos2", "pos3", "pos4", "neg1", "neg2", "neg3", "neg4"],
        |w| {
            for (j, a) in s.attributes.iter().enumerate() {
                let mut rec = vec![a.id.clone()];
                rec.extend(e.ideals.positive[j].components().iter().map(f64::to_string));
                rec.extend(e.ideals.negative[j].components().iter().map(f64::to_string));
                w.write_record(&rec)?;
            }
            Ok(())
        },
    )?;

    csv_section(&mut out, "incidence", &["plan", "g_plus", "g_minus"], |w| {
        for (i, p) in plans.iter().enumerate() {
            w.write_record([p.clone(), e.g_plus[i].to_string(), e.g_minus[i].to_string()])?;
        }
        Ok(())
    })?;

    for m in e.methods() {
        method_section(&mut out, plans, m)?;
    }

    let rk = &r.ranking;
    csv_section(&mut out, "borda", &["plan", "borda_score", "tie_break_score", "final_rank"], |w| {
        for (i, p) in plans.iter().enumerate() {
            w.write_record([
                p.clone(),
                rk.borda_scores[i].to_string(),
                rk.tie_break_scores[i].to_string(),
                rk.final_ranks[i].to_string(),
            ])?;
        }
        Ok(())
    })?;
    Ok(out)
}
