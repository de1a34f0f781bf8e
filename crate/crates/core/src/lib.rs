//! Hybrid grey-relation decision making for plans scored on mixed real,
//! interval, linguistic and uncertain linguistic attributes.
//!
//! Raw cells are lifted to ordered 4-tuples and normalized per attribute.
//! Subjective expert weights are combined with objective weights from
//! deviation maximization and entropy. Four evaluation methods then score
//! the plans: grey TOPSIS, the grey incidence approach degree, relative
//! membership and the maximum-entropy comprehensive incidence. A weighted
//! Borda count fuses their rankings.
//!
//! ```
//! use grey_hybrid::{bundled, parse_problem_str, run_pipeline};
//!
//! let problem = parse_problem_str(bundled::FIGHTER_DEVELOPMENT).unwrap();
//! let report = run_pipeline(&problem).unwrap();
//! assert_eq!(report.final_order()[..2], ["G2", "G5"]);
//! ```

pub mod aggregate;
pub mod error;
pub mod evaluate;
pub mod grey;
pub mod matrix;
pub mod normalize;
pub mod pipeline;
pub mod problem;
pub mod report;
pub mod weights;

pub use aggregate::{scores_to_ranks, weighted_borda, BordaConfig, RankResult, TieBreak};
pub use error::{Error, Location, Result};
pub use evaluate::{Evaluation, IdealVectors, MethodKind, MethodParams, MethodScores};
pub use grey::{distance, lift, term_to_triangle, GeneralizedValue, IntervalGreyNumber, LinguisticTerm, RawCell};
pub use matrix::{NormalizedMatrix, ValueMatrix, WeightedMatrix};
pub use normalize::{normalize_column, normalize_matrix, AttributeSpec, Direction};
pub use pipeline::run_pipeline;
pub use problem::{parse_problem, parse_problem_str, DecisionProblem, ProblemFile};
pub use report::{emit_report, write_report, Report, ReportFormat};
pub use weights::WeightBundle;

/// Problem files shipped with the crate.
pub mod bundled {
    /// Five fighter-development programs rated on nine mixed-type attributes.
    pub const FIGHTER_DEVELOPMENT: &str = include_str!("../data/fighter_development.json");
}
