//! Sampling, necklace assignment, frequency tables and checkpointed runs.

mod config;
mod experiment;
mod sampling;
mod scenarios;
mod table;

pub use config::{ConditionCount, ExperimentConfig, DEFAULT_SAMPLING_RANGE};
pub use experiment::{
    assign_by_necklace, load_checkpoint, run_experiment, run_experiment_with, save_checkpoint,
    sidecar_path, Checkpoint, Experiment, RoundCallback, RoundOutcome, RunControl,
};
pub use sampling::{round_rng, sample_from_pool, sample_points};
pub use scenarios::{
    builtin_scenarios, check_excess_witness, excess_witness, problem_degree, run_scenarios,
    DegreeReport, Scenario, ScenarioReport,
};
pub use table::{FrequencyTable, MonotoneViolation, NecklaceRow, ReportFormat};
