//! Convergence sweeps over `(scheme, c, tau)` against a certified fine-step
//! reference, with order fitting and CSV/JSON output.

mod config;
mod data;
mod sweep;
mod table;

pub use config::{
    ErrorVariable, ExponentRange, OutputFormat, SweepConfig, DESK_C_LIST, DESK_MODES, PAPER_C_LIST,
    PAPER_MODES,
};
pub use data::paper_initial_data;
pub use sweep::{
    run_sweep, run_sweep_report, thread_pool, ReferenceRecord, SweepReport, SATURATION_FACTOR,
    THREADS_ENV,
};
pub use table::{emit, fit_order, read_table, ErrorRow, ErrorTable, FittedOrder, CSV_HEADER};
