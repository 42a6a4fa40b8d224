//! `ξ` counting, the checkpoint bounds and their verdicts.

mod bounds;
mod checkpoint;
mod runs;
mod xi;

pub use bounds::{
    bound_dense_lower, bound_dense_upper, bound_sbt_lower, bound_sbt_upper, bound_sft_lower, bound_sft_upper,
};
pub use checkpoint::{
    checkpoint_verify, write_pair_reports_csv, write_reports_csv, write_trajectory_csv, CheckpointKind, CheckpointReport, Engine,
    VerifyParams, CSV_HEADER, DEFAULT_BUDGET,
};
pub use runs::{first_disagreement_runs, xi_count_runs, OverBudget, RunsOutcome};
pub use xi::{xi_count, xi_ratio, xi_trajectory, PredicateMode, TrajectoryPoint, XiQuery};
