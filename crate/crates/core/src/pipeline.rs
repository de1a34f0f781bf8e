use crate::aggregate::weighted_borda;
use crate::error::Result;
use crate::evaluate::{apply_weights, blend_preference, Evaluation};
use crate::normalize::normalize_matrix;
use crate::problem::DecisionProblem;
use crate::report::{Report, Settings, REPORT_SCHEMA};
use crate::weights::WeightBundle;

/// Runs normalization, weighting, the four evaluation methods and the
/// Borda fusion. Errors carry the name of the failing stage.
pub fn run_pipeline(problem: &DecisionProblem) -> Result<Report> {
    let normalized = normalize_matrix(&problem.cells, &problem.attributes).map_err(|e| e.in_stage("normalization"))?;
    let (weights, mut notes) =
        WeightBundle::compute(&normalized, problem.alpha.clone()).map_err(|e| e.in_stage("weighting"))?;
    let blended =
        blend_preference(&normalized, &problem.preferences).map_err(|e| e.in_stage("preference blending"))?;
    let weighted = apply_weights(&blended, &weights.w_final).map_err(|e| e.in_stage("weight application"))?;
    let evaluation = Evaluation::run(&weighted, &problem.params).map_err(|e| e.in_stage("evaluation"))?;
    if evaluation.ideals.positive == evaluation.ideals.negative {
        notes.push("positive and negative ideals coincide; every method reports a full tie".into());
    }
    let per_method: Vec<_> = evaluation.methods().into_iter().cloned().collect();
    let ranking = weighted_borda(&per_method, &problem.borda).map_err(|e| e.in_stage("aggregation"))?;

    Ok(Report {
        report_schema: REPORT_SCHEMA,
        settings: Settings::from_problem(problem),
        problem: problem.source.clone(),
        normalized,
        weights,
        weighted,
        evaluation,
        ranking,
        notes,
    })
}
