//! Parameter sweeps over the threshold models, plot-ready CSV output, and
//! the audit of every analytic bound against quadrature.

mod audit;
mod config;
mod parse;
mod row;
mod sweeps;

pub use audit::{
    default_audit_grid, run_bounds_audit, AsymptoticCase, AuditGrid, AuditOutcome, AuditReport, AuditRow,
    DecadeSummary, FBoundGrid, FTildeBoundGrid, LaplaceCase, WendelGrid, QUAD_SLACK,
};
pub use config::{
    count_from_ln, Caps, GridSpec, SweepConfig, SweepModel, DEFAULT_EPS, DEFAULT_MAX_DIM, DEFAULT_MAX_POINTS,
};
pub use parse::{parse_point_csv, parse_range, MAX_RANGE_LEN};
pub use row::{fmt_f64, read_csv, write_csv, write_json, SweepRow, HEADER, SCHEMA_VERSION, VIOLATION_SIGMAS};
pub use sweeps::{
    default_beta_threshold_config, envelope_grid, row_seed, run_beta_prime_regimes, run_beta_threshold_sweep,
    run_dual_sweep, run_fixed_dim_threshold, run_sweep, BETA_SWEEP_MAX_DIM, DEFAULT_BETA_THRESHOLD_TOML,
    DUAL_BETA_PRIME_MIN_EXCESS,
};
