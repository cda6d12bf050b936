//! Rectangular parameter sweeps over two of `(ω̃, G̃, φ/π)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::explore::search::{linspace, OMEGA_FLOOR};
use crate::params::ReducedParams;
use crate::response::{kernels, mu, optimal_phase, output_spectrum, sensitivity};
use crate::scalar::Real;

/// Largest gain accepted on a sweep axis.
pub const GAIN_CEILING: f64 = 0.499;
/// Largest detection frequency accepted on a sweep axis.
pub const OMEGA_CEILING: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxisKind {
    /// `ω/κ0`
    OmegaTilde,
    /// `G/κ0`
    GTilde,
    /// `φ/π`
    PhiOverPi,
}

impl AxisKind {
    /// Column name used in CSV output.
    pub fn name(self) -> &'static str {
        match self {
            AxisKind::OmegaTilde => "omega_over_kappa0",
            AxisKind::GTilde => "G_over_kappa0",
            AxisKind::PhiOverPi => "phi_over_pi",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [AxisKind::OmegaTilde, AxisKind::GTilde, AxisKind::PhiOverPi]
            .into_iter()
            .find(|k| k.name() == name)
    }

    fn check<T: Real>(self, lo: T, hi: T) -> Result<()> {
        let ok = match self {
            AxisKind::OmegaTilde => lo >= T::lit(OMEGA_FLOOR) && hi <= T::lit(OMEGA_CEILING),
            AxisKind::GTilde => lo >= T::zero() && hi <= T::lit(GAIN_CEILING),
            AxisKind::PhiOverPi => lo > T::lit(-0.5) && hi < T::lit(0.5),
        };
        if ok {
            Ok(())
        } else {
            let allowed = match self {
                AxisKind::OmegaTilde => "[1e-4, 10]",
                AxisKind::GTilde => "[0, 0.499]",
                AxisKind::PhiOverPi => "(-0.5, 0.5)",
            };
            Err(Error::range(
                self.name(),
                format!("[{lo}, {hi}] is not inside {allowed}"),
            ))
        }
    }
}

/// Swept scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    /// Lossless backaction kernel `𝒦`.
    K,
    /// Minimum normalized sensitivity.
    Mu,
    /// `R/F²_SQL` at the sweep's homodyne angle.
    RRel,
    /// Output-quadrature spectrum.
    SZout,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::K => "K",
            Quantity::Mu => "mu",
            Quantity::RRel => "R_rel",
            Quantity::SZout => "S_zout",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [Quantity::K, Quantity::Mu, Quantity::RRel, Quantity::SZout]
            .into_iter()
            .find(|q| q.name() == name)
    }
}

/// Homodyne angle used when `φ/π` is not one of the axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Phase<T> {
    /// Fixed angle in radians.
    Fixed(T),
    /// Optimal angle at each grid point.
    Optimal,
}

/// Requested axis: `points` uniformly spaced values on `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec<T> {
    pub kind: AxisKind,
    pub min: T,
    pub max: T,
    pub points: usize,
}

impl<T: Real> AxisSpec<T> {
    pub fn new(kind: AxisKind, min: T, max: T, points: usize) -> Self {
        Self {
            kind,
            min,
            max,
            points,
        }
    }

    fn build(&self) -> Result<Axis<T>> {
        let name = self.kind.name();
        if self.points == 0 {
            return Err(Error::range(name, "needs at least one point"));
        }
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(Error::range(name, "bounds must be finite"));
        }
        if self.points == 1 && self.min != self.max {
            return Err(Error::range(name, "a single-point axis needs min == max"));
        }
        if self.points > 1 && !(self.min < self.max) {
            return Err(Error::range(
                name,
                format!("need min < max, got [{}, {}]", self.min, self.max),
            ));
        }
        self.kind.check(self.min, self.max)?;
        Ok(Axis {
            kind: self.kind,
            values: linspace(self.min, self.max, self.points),
        })
    }
}

/// Materialized axis: strictly increasing values.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis<T> {
    pub kind: AxisKind,
    pub values: Vec<T>,
}

/// Everything needed to fill a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec<T> {
    /// Template parameters; `G̃` is replaced when it is an axis.
    pub params: ReducedParams<T>,
    pub quantity: Quantity,
    pub x: AxisSpec<T>,
    pub y: AxisSpec<T>,
    /// Detection frequency when `ω̃` is not an axis.
    pub omega_tilde: T,
    /// Homodyne angle when `φ/π` is not an axis.
    pub phase: Phase<T>,
    /// External-force spectral density for `S_zout`, in units of `F²_SQL`.
    pub s_ex_rel: T,
}

impl<T: Real> SweepSpec<T> {
    pub fn new(
        params: ReducedParams<T>,
        quantity: Quantity,
        x: AxisSpec<T>,
        y: AxisSpec<T>,
    ) -> Self {
        Self {
            params,
            quantity,
            x,
            y,
            omega_tilde: T::one(),
            phase: Phase::Optimal,
            s_ex_rel: T::zero(),
        }
    }
}

/// Row-major grid: `values[j * x.len() + i]` sits at `(x[i], y[j])`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid<T> {
    pub quantity: Quantity,
    pub params: ReducedParams<T>,
    pub x: Axis<T>,
    pub y: Axis<T>,
    pub values: Vec<T>,
}

impl<T: Real> SweepGrid<T> {
    pub fn nx(&self) -> usize {
        self.x.values.len()
    }

    pub fn ny(&self) -> usize {
        self.y.values.len()
    }

    pub fn at(&self, i: usize, j: usize) -> T {
        self.values[j * self.nx() + i]
    }

    pub fn row(&self, j: usize) -> &[T] {
        let nx = self.nx();
        &self.values[j * nx..(j + 1) * nx]
    }

    pub fn min(&self) -> T {
        self.values.iter().copied().fold(T::infinity(), T::min)
    }

    pub fn max(&self) -> T {
        self.values.iter().copied().fold(T::neg_infinity(), T::max)
    }

    /// Position and value of the smallest entry.
    pub fn argmin(&self) -> (T, T, T) {
        let mut best = 0;
        for (k, v) in self.values.iter().enumerate() {
            if *v < self.values[best] {
                best = k;
            }
        }
        let (i, j) = (best % self.nx(), best / self.nx());
        (self.x.values[i], self.y.values[j], self.values[best])
    }
}

/// How grid rows are scheduled. Both produce bit-identical grids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Serial,
    Parallel,
}

/// Evaluates `spec.quantity` over the grid, rows in parallel.
pub fn sweep<T: Real>(spec: &SweepSpec<T>) -> Result<SweepGrid<T>> {
    sweep_with(spec, Execution::Parallel)
}

pub fn sweep_with<T: Real>(spec: &SweepSpec<T>, execution: Execution) -> Result<SweepGrid<T>> {
    if spec.x.kind == spec.y.kind {
        return Err(Error::range(
            spec.x.kind.name(),
            "x and y must be different axes",
        ));
    }
    let x = spec.x.build()?;
    let y = spec.y.build()?;
    let on_axis = |k: AxisKind| spec.x.kind == k || spec.y.kind == k;
    if !on_axis(AxisKind::OmegaTilde) {
        AxisKind::OmegaTilde.check(spec.omega_tilde, spec.omega_tilde)?;
    }
    if let Phase::Fixed(phi) = spec.phase {
        if !on_axis(AxisKind::PhiOverPi) {
            let p = phi / T::PI();
            AxisKind::PhiOverPi.check(p, p)?;
        }
    }

    let row = |&yv: &T| -> Result<Vec<T>> {
        x.values
            .iter()
            .map(|&xv| evaluate(spec, (x.kind, xv), (y.kind, yv)))
            .collect()
    };
    let rows: Vec<Vec<T>> = match execution {
        Execution::Serial => y.values.iter().map(row).collect::<Result<_>>()?,
        Execution::Parallel => y.values.par_iter().map(row).collect::<Result<_>>()?,
    };
    Ok(SweepGrid {
        quantity: spec.quantity,
        params: spec.params,
        x,
        y,
        values: rows.into_iter().flatten().collect(),
    })
}

fn evaluate<T: Real>(spec: &SweepSpec<T>, a: (AxisKind, T), b: (AxisKind, T)) -> Result<T> {
    let mut omega = spec.omega_tilde;
    let mut gain = None;
    let mut phi = None;
    for (kind, v) in [a, b] {
        match kind {
            AxisKind::OmegaTilde => omega = v,
            AxisKind::GTilde => gain = Some(v),
            AxisKind::PhiOverPi => phi = Some(v * T::PI()),
        }
    }
    let rp = match gain {
        Some(g) => spec.params.with_gain(g)?,
        None => spec.params,
    };
    let phi = match (phi, spec.phase) {
        (Some(p), _) | (None, Phase::Fixed(p)) => p,
        (None, Phase::Optimal) => optimal_phase(&rp, omega)?,
    };
    let value = match spec.quantity {
        Quantity::K => kernels(&rp, omega)?.k,
        Quantity::Mu => mu(&rp, omega)?,
        Quantity::RRel => sensitivity(&rp, omega, phi)?.r_rel,
        Quantity::SZout => output_spectrum(&rp, omega, phi, spec.s_ex_rel)?,
    };
    if !value.is_finite() {
        return Err(Error::invalid(
            "J0",
            format!(
                "{} is not finite at {}={}, {}={}",
                spec.quantity.name(),
                a.0.name(),
                a.1,
                b.0.name(),
                b.1
            ),
        ));
    }
    Ok(value)
}
