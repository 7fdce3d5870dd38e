//! Configured experiments: source placement, single trials, ensembles and
//! the cross-frame consistency report.

mod config;
mod ensemble;
pub mod presets;
mod report;
mod source;
mod trial;

pub use config::{parse_axis_list, parse_config, schema, KeySpec, ScenarioConfig, SourceSpec};
pub use ensemble::{run_ensemble, ChshEstimate, Correlator, EnsembleStats};
pub use report::{consistency_report, parse_grid, render_scan, standard_policies, ConsistencyReport};
pub use source::{derive_source, lightlike_source, resolve_geometry, ResolvedGeometry};
pub use trial::{
    decision_label, fmt_num, reduction_label, run_trial, run_trial_with, run_trials, sample_outcome, LogRecord, RecordKind,
    TrialLog,
};
