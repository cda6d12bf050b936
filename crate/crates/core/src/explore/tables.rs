//! Minimum sensitivity over frequency for the two reference tables.

use crate::error::Result;
use crate::explore::search::{minimize_mu_over_frequency, OMEGA_FLOOR};
use crate::params::{thermal_scale, ReducedParams};
use crate::scalar::Real;

/// Which reference table a row belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Table {
    /// `γ̃ = 1e−5`, `T ∈ {0, 1 K}`, three drive strengths.
    I,
    /// `γ̃ = 1e−3`, `T = 10 mK`, two drive strengths.
    II,
}

impl Table {
    pub fn number(self) -> u8 {
        match self {
            Table::I => 1,
            Table::II => 2,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Table::I),
            2 => Some(Table::II),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow<T> {
    pub table: Table,
    pub j0: T,
    pub temperature_k: T,
    pub g_tilde: T,
    pub omega_tilde_argmin: T,
    pub mu_min: T,
    pub gamma_tilde: T,
    pub power_w: T,
}

/// Fixed inputs of the tables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableSetup<T> {
    /// Bare cavity linewidth in rad/s.
    pub kappa0: T,
    /// Frequency band searched for the minimum.
    pub band: (T, T),
}

impl<T: Real> Default for TableSetup<T> {
    fn default() -> Self {
        Self {
            kappa0: T::lit(2.0 * core::f64::consts::PI * 1e6),
            band: (T::lit(OMEGA_FLOOR), T::lit(1.9)),
        }
    }
}

/// Gains tabulated in every table.
pub const TABLE_GAINS: [f64; 2] = [0.0, 0.46];

struct Block {
    table: Table,
    gamma_tilde: f64,
    temperatures: &'static [f64],
    /// `(J0, power in W)`
    drives: &'static [(f64, f64)],
}

const BLOCKS: [Block; 2] = [
    Block {
        table: Table::I,
        gamma_tilde: 1e-5,
        temperatures: &[0.0, 1.0],
        drives: &[(0.5, 10.0), (0.1, 2.0), (0.02, 0.4)],
    },
    Block {
        table: Table::II,
        gamma_tilde: 1e-3,
        temperatures: &[0.01],
        drives: &[(0.1, 2.0), (0.02, 0.4)],
    },
];

/// Every cell of both tables: 12 rows of Table I, then 4 of Table II,
/// ordered by drive, temperature and gain.
pub fn reproduce_tables<T: Real>(setup: &TableSetup<T>) -> Result<Vec<TableRow<T>>> {
    let mut rows = Vec::with_capacity(16);
    for block in &BLOCKS {
        rows.extend(reproduce_table(setup, block.table)?);
    }
    Ok(rows)
}

/// The cells of a single table.
pub fn reproduce_table<T: Real>(setup: &TableSetup<T>, table: Table) -> Result<Vec<TableRow<T>>> {
    let block = BLOCKS
        .iter()
        .find(|b| b.table == table)
        .expect("every table has a block");
    let gamma_tilde = T::lit(block.gamma_tilde);
    let mut rows = Vec::new();
    for &(j0, power) in block.drives {
        for &temperature in block.temperatures {
            let theta = thermal_scale(T::lit(temperature), setup.kappa0);
            for &g in &TABLE_GAINS {
                let rp = ReducedParams::new(T::lit(j0), T::lit(g), gamma_tilde, theta)?;
                let m = minimize_mu_over_frequency(&rp, setup.band)?;
                rows.push(TableRow {
                    table,
                    j0: T::lit(j0),
                    temperature_k: T::lit(temperature),
                    g_tilde: T::lit(g),
                    omega_tilde_argmin: m.x,
                    mu_min: m.value,
                    gamma_tilde,
                    power_w: T::lit(power),
                });
            }
        }
    }
    Ok(rows)
}
