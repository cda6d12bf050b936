//! Quantum-noise model of force sensing on a free particle in a
//! dissipatively coupled optomechanical cavity containing a degenerate
//! parametric amplifier.
//!
//! The core is generic over the scalar type ([`Real`], implemented for `f32`
//! and `f64`). The `*64`/`*32` aliases below fix the scalar.
//!
//! ```
//! use optoforce::{mu, ReducedParams64};
//!
//! let rp = ReducedParams64::lossless(0.5, 0.0).unwrap();
//! assert!((mu(&rp, 1.0).unwrap() - 1.0).abs() < 1e-12);
//! ```

// NaN must fail every bound check, so negated comparisons are deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod explore;
pub mod io;
pub mod oscillator;
pub mod params;
pub mod response;
pub mod scalar;

pub use error::{Error, Result};
pub use explore::{
    extract_contour, minimize_mu_over_frequency, minimize_phase, reproduce_tables, sweep, AxisKind,
    AxisSpec, ContourSet, Phase, Quantity, SweepGrid, SweepSpec, Table, TableRow, TableSetup,
};
pub use oscillator::{oscillator_sensitivity, sensitivity_ratio, OscillatorPoint};
pub use params::{
    check_stability, drive_amplitude, reduce, steady_state_amplitude, thermal_scale, Constants,
    PhysicalParams, ReducedParams,
};
pub use response::{
    kernels, mu, optimal_phase, optimal_tan_phase, output_spectrum, sensitivity, sql_force,
    KernelSet, SensitivityPoint,
};
pub use scalar::Real;

pub type PhysicalParams64 = PhysicalParams<f64>;
pub type PhysicalParams32 = PhysicalParams<f32>;
pub type ReducedParams64 = ReducedParams<f64>;
pub type ReducedParams32 = ReducedParams<f32>;
pub type KernelSet64 = KernelSet<f64>;
pub type KernelSet32 = KernelSet<f32>;
pub type SensitivityPoint64 = SensitivityPoint<f64>;
pub type SensitivityPoint32 = SensitivityPoint<f32>;
pub type OscillatorPoint64 = OscillatorPoint<f64>;
pub type OscillatorPoint32 = OscillatorPoint<f32>;
pub type SweepGrid64 = SweepGrid<f64>;
pub type SweepGrid32 = SweepGrid<f32>;
pub type ContourSet64 = ContourSet<f64>;
pub type ContourSet32 = ContourSet<f32>;
pub type TableRow64 = TableRow<f64>;
pub type TableRow32 = TableRow<f32>;
