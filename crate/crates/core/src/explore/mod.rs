//! Sweeps, minimizations, level sets and table reproduction built on the
//! closed forms in [`crate::response`].

pub mod contour;
pub mod search;
pub mod sweep;
pub mod tables;

pub use contour::{bilinear, extract_contour, ContourSet};
pub use search::{
    golden_section, linspace, logspace, minimize_mu_over_frequency, minimize_phase,
    scan_then_refine, Minimum, OMEGA_BAND_TOP, OMEGA_FLOOR,
};
pub use sweep::{
    sweep, sweep_with, Axis, AxisKind, AxisSpec, Execution, Phase, Quantity, SweepGrid, SweepSpec,
};
pub use tables::{reproduce_table, reproduce_tables, Table, TableRow, TableSetup};
