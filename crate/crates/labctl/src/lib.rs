//! Experiment orchestration for the simulators: TOML sweep configs, seeded
//! parallel sweeps with resumable per-unit output, ensemble statistics, and
//! finite-size crossing and collapse analysis.

pub mod config;
pub mod dataset;
pub mod engines;
pub mod error;
pub mod fss;
pub mod stats;
pub mod sweep;
pub mod tables;
pub mod verify;

pub use config::{Engine, SweepConfig};
pub use dataset::{read_rows, write_rows, Row, COLUMNS};
pub use error::LabError;
pub use fss::{crossing_analysis, AnalysisOptions, CollapseFit};
pub use stats::{ensemble_stats, GroupKey, StatsTable};
pub use sweep::{run_sweep, SweepOptions, SweepReport};
