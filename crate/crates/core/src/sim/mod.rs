//! Batch front-end: run configuration, reproducible Monte-Carlo BER sweeps,
//! bound curves, NVS reports and CSV output.

mod bounds;
mod config;
mod nvs_report;
mod sweep;

pub use bounds::{run_bound_eval, write_bound_csv, BOUND_CSV_HEADER};
pub use config::{BoundKind, DesignSpec, PartialConfig, SimConfig, SnrGrid};
pub use nvs_report::{run_nvs_report, NvsReport, NVS_ZERO_TOL};
pub use sweep::{
    bit_errors, run_ber_sweep, trial_seed, write_ber_csv, BerRecord, PointStatus, TrialRunner, BER_CSV_HEADER,
    MAX_BATCH,
};
