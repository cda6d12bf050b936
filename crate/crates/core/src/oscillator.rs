//! Harmonically bound comparison model: the free particle replaced by a
//! mechanical oscillator of resonance `ω_m`, lossless only.
//!
//! Sensitivities are normalized by the free-particle `F²_SQL(ω)` so that they
//! compare directly with [`crate::response`]; multiply by `ω̃²/ω̃_m²` (see
//! [`OscillatorPoint::over_resonant_sql`]) for the oscillator's own,
//! frequency-independent limit `F²_moSQL = 2mħω_m²`.

use crate::error::{Error, Result};
use crate::params::ReducedParams;
use crate::scalar::{sq, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorPoint<T> {
    pub omega_tilde: T,
    pub omega_m_tilde: T,
    /// `R_mo(ω)/F²_SQL(ω)` at the requested homodyne angle.
    pub r_mo_rel: T,
    /// `R_mo,min(ω)/F²_SQL(ω)` at `tan φ_opt = −A·𝒦_mo`.
    pub mu_mo: T,
}

impl<T: Real> OscillatorPoint<T> {
    /// `(R_mo/F²_moSQL, R_mo,min/F²_moSQL)`, undefined for `ω_m = 0`.
    pub fn over_resonant_sql(&self) -> Option<(T, T)> {
        if self.omega_m_tilde > T::zero() {
            let scale = sq(self.omega_tilde / self.omega_m_tilde);
            Some((self.r_mo_rel * scale, self.mu_mo * scale))
        } else {
            None
        }
    }
}

/// Force sensitivity of the oscillator model above resonance.
pub fn oscillator_sensitivity<T: Real>(
    rp: &ReducedParams<T>,
    omega_m_tilde: T,
    omega_tilde: T,
    phi: T,
) -> Result<OscillatorPoint<T>> {
    if !rp.is_lossless() {
        return Err(Error::LossyOscillator {
            gamma_tilde: rp.gamma_tilde().as_f64(),
            theta: rp.theta().as_f64(),
        });
    }
    if !(omega_m_tilde >= T::zero()) || !omega_m_tilde.is_finite() {
        return Err(Error::invalid(
            "omega_m_tilde",
            format!("must be finite and >= 0, got {omega_m_tilde}"),
        ));
    }
    if !(omega_tilde > omega_m_tilde) || !omega_tilde.is_finite() {
        return Err(Error::BelowResonance {
            omega_tilde: omega_tilde.as_f64(),
            omega_m_tilde: omega_m_tilde.as_f64(),
        });
    }
    let (sin, cos) = phi.sin_cos();
    if !phi.is_finite() || cos.abs() <= T::epsilon() * T::lit(0.5) {
        return Err(Error::PhaseQuadrature { phi: phi.as_f64() });
    }

    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let g = rp.g_tilde();
    let w2 = sq(omega_tilde);
    let wm2 = sq(omega_m_tilde);
    let d_plus = sq(T::one() + two * g) + w2;
    let d_minus = sq(T::one() - two * g) + w2;
    let k_mo = rp.j() * (w2 + T::lit(16.0) * sq(g)) / (d_plus * (w2 - wm2));
    let a = d_plus / d_minus;
    // F²_moSQL/(u_mo(ω)u_mo(−ω)) = 2mħ(ω² − ω_m²), i.e. (1 − ω_m²/ω²)·F²_SQL(ω).
    let detuning = T::one() - wm2 / w2;

    let mu_mo = detuning / (four * k_mo);
    let r_mo_rel = mu_mo * (T::one() + sq(k_mo + sin / cos / a));
    Ok(OscillatorPoint {
        omega_tilde,
        omega_m_tilde,
        r_mo_rel,
        mu_mo,
    })
}

/// `R_mo,min/R_min = (1 − ω_m²/ω²)²`.
pub fn sensitivity_ratio<T: Real>(omega_m_tilde: T, omega_tilde: T) -> Result<T> {
    if !(omega_tilde > T::zero()) || !omega_tilde.is_finite() {
        return Err(Error::NonPositiveFrequency {
            omega_tilde: omega_tilde.as_f64(),
        });
    }
    Ok(sq(T::one() - sq(omega_m_tilde / omega_tilde)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::response::{mu, sensitivity};
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(sensitivity_ratio(0.3, 0.3).unwrap(), 0.0);
        assert_eq!(sensitivity_ratio(0.25, 0.5).unwrap(), 0.5625);
        for w in [1e-3, 0.7, 9.0] {
            assert_eq!(sensitivity_ratio(0.0, w).unwrap(), 1.0);
        }
        assert!(sensitivity_ratio(0.1, 0.0).is_err());
    }

    #[test]
    fn twice_resonance() {
        let p = ReducedParams::lossless(0.5, 0.2).unwrap();
        let o = oscillator_sensitivity(&p, 0.05, 0.1, -0.3).unwrap();
        let m = mu(&p, 0.1).unwrap();
        assert!(rel(o.mu_mo / m, 0.5625) < 1e-12);
    }

    #[test]
    fn far_above_resonance() {
        let p = ReducedParams::<f64>::lossless(0.5, 0.3).unwrap();
        let wm = 1e-3;
        let o = oscillator_sensitivity(&p, wm, 100.0 * wm, 0.0).unwrap();
        let m = mu(&p, 100.0 * wm).unwrap();
        assert!((o.mu_mo / m - 1.0).abs() < 1e-3);
    }

    #[test]
    fn domain_errors() {
        let p = ReducedParams::lossless(0.5, 0.3).unwrap();
        assert!(matches!(
            oscillator_sensitivity(&p, 0.2, 0.2, 0.0),
            Err(Error::BelowResonance { .. })
        ));
        assert!(oscillator_sensitivity(&p, 0.2, 0.1, 0.0).is_err());
        assert!(matches!(
            oscillator_sensitivity(&p, 0.1, 0.2, std::f64::consts::FRAC_PI_2),
            Err(Error::PhaseQuadrature { .. })
        ));
        let lossy = p.with_damping(1e-5, 0.0).unwrap();
        assert!(matches!(
            oscillator_sensitivity(&lossy, 0.1, 0.2, 0.0),
            Err(Error::LossyOscillator { .. })
        ));
        let hot = p.with_damping(0.0, 10.0).unwrap();
        assert!(oscillator_sensitivity(&hot, 0.1, 0.2, 0.0).is_err());
    }

    #[test]
    fn resonant_normalization() {
        let p = ReducedParams::lossless(0.5, 0.1).unwrap();
        let o = oscillator_sensitivity(&p, 0.2, 0.4, -0.2).unwrap();
        let (r, m) = o.over_resonant_sql().unwrap();
        assert!(rel(r, o.r_mo_rel * 4.0) < 1e-15);
        assert!(rel(m, o.mu_mo * 4.0) < 1e-15);
        let free = oscillator_sensitivity(&p, 0.0, 0.4, -0.2).unwrap();
        assert!(free.over_resonant_sql().is_none());
    }

    proptest! {
        #[test]
        fn free_particle_limit(j0 in 0.01f64..5.0, g in 0.0f64..0.49, w in 1e-4f64..10.0, phi in -1.5f64..1.5) {
            let p = ReducedParams::lossless(j0, g).unwrap();
            let o = oscillator_sensitivity(&p, 0.0, w, phi).unwrap();
            let s = sensitivity(&p, w, phi).unwrap();
            prop_assert!(rel(o.r_mo_rel, s.r_rel) < 1e-12);
            prop_assert!(rel(o.mu_mo, mu(&p, w).unwrap()) < 1e-12);
        }

        #[test]
        fn optimum_cancels_backaction(j0 in 0.01f64..5.0, g in 0.0f64..0.49, wm in 1e-4f64..1.0, f in 1.01f64..50.0) {
            let p = ReducedParams::lossless(j0, g).unwrap();
            let w = wm * f;
            let two = 2.0;
            let d_plus = (1.0 + two * g).powi(2) + w * w;
            let d_minus = (1.0 - two * g).powi(2) + w * w;
            let k_mo = p.j() * (w * w + 16.0 * g * g) / (d_plus * (w * w - wm * wm));
            let phi = (-(d_plus / d_minus) * k_mo).atan();
            prop_assume!(phi.tan().abs() <= 1e4);
            let o = oscillator_sensitivity(&p, wm, w, phi).unwrap();
            prop_assert!(rel(o.r_mo_rel, o.mu_mo) < 1e-12);
        }
    }
}
