//! Experiment harness for the pooltest library: matrix/signal file I/O,
//! seeded single trials, and Monte Carlo parameter sweeps with CSV output.
//! The `pooltest` binary in this package exposes all of it on the command
//! line.

pub mod io;
pub mod sweep;
pub mod trial;

pub use io::{format_matrix, format_signal, load_matrix, parse_matrix, parse_signal, save_matrix, GtmatError};
pub use sweep::{
    run_sweep, sweep_to_csv_string, write_csv, CellResult, DesignKind, MGrid, SweepCell,
    SweepChannel, SweepSpec, CSV_HEADER,
};
pub use trial::{design_label, run_trial, TrialRecord};
