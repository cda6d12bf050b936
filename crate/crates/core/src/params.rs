//! Laboratory parameters, physical constants and the reduction to the four
//! dimensionless numbers consumed by the spectral formulas.
//!
//! Every frequency downstream is measured in units of the bare cavity decay
//! rate `kappa0`; laboratory units only appear here and at the I/O boundary.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{sq, Real};

/// CODATA 2018 exact/recommended values, fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constants;

impl Constants {
    /// Reduced Planck constant, J·s.
    pub const HBAR: f64 = 1.054_571_817e-34;
    /// Boltzmann constant, J/K.
    pub const K_B: f64 = 1.380_649e-23;
    /// Speed of light in vacuum, m/s.
    pub const C_LIGHT: f64 = 2.997_924_58e8;

    pub fn hbar<T: Real>() -> T {
        T::lit(Self::HBAR)
    }

    pub fn k_b<T: Real>() -> T {
        T::lit(Self::K_B)
    }

    pub fn c_light<T: Real>() -> T {
        T::lit(Self::C_LIGHT)
    }
}

/// System parameters in SI units.
///
/// Serializes to a flat JSON object; `gamma_m_rad_s`, `temperature_K` and
/// `omega_m_rad_s` default to zero when absent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalParams<T> {
    /// Bare cavity decay rate, rad/s.
    #[serde(rename = "kappa0_rad_s")]
    pub kappa0: T,
    /// Parametric gain of the amplifier, rad/s.
    #[serde(rename = "G_rad_s")]
    pub gain: T,
    /// Dissipative coupling per unit displacement, 1/m.
    #[serde(rename = "eta_per_m")]
    pub eta: T,
    /// Particle mass, kg.
    #[serde(rename = "mass_kg")]
    pub mass: T,
    /// Momentum damping rate, rad/s.
    #[serde(rename = "gamma_m_rad_s", default)]
    pub gamma_m: T,
    /// Bath temperature, K.
    #[serde(rename = "temperature_K", default)]
    pub temperature: T,
    /// Drive laser power, W.
    #[serde(rename = "power_W")]
    pub power: T,
    /// Drive laser wavelength, m.
    #[serde(rename = "wavelength_m")]
    pub wavelength: T,
    /// Mechanical resonance, rad/s. Zero for the free particle; only the
    /// oscillator model reads it.
    #[serde(rename = "omega_m_rad_s", default)]
    pub omega_m: T,
}

impl<T: Real> PhysicalParams<T> {
    /// Reference setup: η = 4.182e8 1/m, m = 100 ng, κ0 = 2π·1 MHz,
    /// λ = 1064 nm, 10 W, no gain, no damping, T = 0.
    pub fn reference() -> Self {
        Self {
            kappa0: T::lit(2.0 * core::f64::consts::PI * 1.0e6),
            gain: T::zero(),
            eta: T::lit(4.182e8),
            mass: T::lit(100e-12),
            gamma_m: T::zero(),
            temperature: T::zero(),
            power: T::lit(10.0),
            wavelength: T::lit(1064e-9),
            omega_m: T::zero(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &'static str, v: T| {
            if v > T::zero() && v.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid(
                    name,
                    format!("must be finite and > 0, got {v}"),
                ))
            }
        };
        let non_negative = |name: &'static str, v: T| {
            if v >= T::zero() && v.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid(
                    name,
                    format!("must be finite and >= 0, got {v}"),
                ))
            }
        };
        positive("kappa0_rad_s", self.kappa0)?;
        positive("mass_kg", self.mass)?;
        positive("eta_per_m", self.eta)?;
        positive("wavelength_m", self.wavelength)?;
        non_negative("gamma_m_rad_s", self.gamma_m)?;
        non_negative("temperature_K", self.temperature)?;
        non_negative("power_W", self.power)?;
        non_negative("omega_m_rad_s", self.omega_m)?;
        if !check_stability(self.kappa0, self.gain) {
            return Err(Error::Unstable {
                g_tilde: (self.gain / self.kappa0).as_f64(),
            });
        }
        Ok(())
    }
}

/// Dimensionless description of the system.
///
/// `j` is always `j0 / (1 - 2 g_tilde)^2`; the fields are private so that it
/// cannot drift from the other three.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedParams<T> {
    j0: T,
    j: T,
    g_tilde: T,
    gamma_tilde: T,
    theta: T,
}

impl<T: Real> ReducedParams<T> {
    /// `j0`: drive strength without gain; `g_tilde = G/κ0`;
    /// `gamma_tilde = γ_m/κ0`; `theta = k_B·T/(ħ·κ0)`.
    pub fn new(j0: T, g_tilde: T, gamma_tilde: T, theta: T) -> Result<Self> {
        let non_negative = |name: &'static str, v: T| {
            if v >= T::zero() && v.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid(
                    name,
                    format!("must be finite and >= 0, got {v}"),
                ))
            }
        };
        non_negative("J0", j0)?;
        non_negative("gamma_tilde", gamma_tilde)?;
        non_negative("theta", theta)?;
        if !(g_tilde >= T::zero() && g_tilde < T::lit(0.5)) {
            return Err(Error::Unstable {
                g_tilde: g_tilde.as_f64(),
            });
        }
        let j = j0 / sq(T::one() - T::lit(2.0) * g_tilde);
        Ok(Self {
            j0,
            j,
            g_tilde,
            gamma_tilde,
            theta,
        })
    }

    /// No damping, zero temperature.
    pub fn lossless(j0: T, g_tilde: T) -> Result<Self> {
        Self::new(j0, g_tilde, T::zero(), T::zero())
    }

    pub fn with_gain(&self, g_tilde: T) -> Result<Self> {
        Self::new(self.j0, g_tilde, self.gamma_tilde, self.theta)
    }

    pub fn with_drive(&self, j0: T) -> Result<Self> {
        Self::new(j0, self.g_tilde, self.gamma_tilde, self.theta)
    }

    pub fn with_damping(&self, gamma_tilde: T, theta: T) -> Result<Self> {
        Self::new(self.j0, self.g_tilde, gamma_tilde, theta)
    }

    pub fn j0(&self) -> T {
        self.j0
    }

    /// Gain-enhanced drive strength.
    pub fn j(&self) -> T {
        self.j
    }

    pub fn g_tilde(&self) -> T {
        self.g_tilde
    }

    pub fn gamma_tilde(&self) -> T {
        self.gamma_tilde
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn is_lossless(&self) -> bool {
        self.gamma_tilde == T::zero() && self.theta == T::zero()
    }
}

/// `θ = k_B·T/(ħ·κ0)`.
pub fn thermal_scale<T: Real>(temperature: T, kappa0: T) -> T {
    Constants::k_b::<T>() * temperature / (Constants::hbar::<T>() * kappa0)
}

/// Drive amplitude `ε_l = √(℘/(ħ·ω_l))` in √(photons/s), with
/// `ω_l = 2π·c/λ`.
pub fn drive_amplitude<T: Real>(power: T, wavelength: T) -> Result<T> {
    if !(wavelength > T::zero()) || !wavelength.is_finite() {
        return Err(Error::invalid(
            "wavelength_m",
            format!("must be finite and > 0, got {wavelength}"),
        ));
    }
    if !(power >= T::zero()) || !power.is_finite() {
        return Err(Error::invalid(
            "power_W",
            format!("must be finite and >= 0, got {power}"),
        ));
    }
    let omega_l = T::TAU() * Constants::c_light::<T>() / wavelength;
    Ok((power / (Constants::hbar::<T>() * omega_l)).sqrt())
}

/// Intracavity steady-state amplitude `c_s = √(2κ0)·ε_l/(κ0 − 2G)`.
pub fn steady_state_amplitude<T: Real>(eps_l: T, kappa0: T, gain: T) -> Result<T> {
    if !(kappa0 > T::zero()) {
        return Err(Error::invalid(
            "kappa0_rad_s",
            format!("must be > 0, got {kappa0}"),
        ));
    }
    if !check_stability(kappa0, gain) {
        return Err(Error::Unstable {
            g_tilde: (gain / kappa0).as_f64(),
        });
    }
    Ok((T::lit(2.0) * kappa0).sqrt() * eps_l / (kappa0 - T::lit(2.0) * gain))
}

/// `0 ≤ G < κ0/2`.
pub fn check_stability<T: Real>(kappa0: T, gain: T) -> bool {
    gain >= T::zero() && gain < kappa0 / T::lit(2.0)
}

/// Reduces laboratory parameters to `(J0, J, G̃, γ̃, θ)`.
pub fn reduce<T: Real>(params: &PhysicalParams<T>) -> Result<ReducedParams<T>> {
    params.validate()?;
    let eps_l = drive_amplitude(params.power, params.wavelength)?;
    let cs0 = steady_state_amplitude(eps_l, params.kappa0, T::zero())?;
    let j0 = Constants::hbar::<T>() * sq(params.eta) * sq(cs0) / (params.mass * params.kappa0);
    ReducedParams::new(
        j0,
        params.gain / params.kappa0,
        params.gamma_m / params.kappa0,
        thermal_scale(params.temperature, params.kappa0),
    )
}
