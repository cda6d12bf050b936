//! Frequency-domain kernels, output-quadrature spectrum, force sensitivity,
//! optimal homodyne angle and normalized minimum sensitivity of the free
//! particle.
//!
//! All inputs are reduced: frequencies are `ω/κ0`, and spectra and
//! sensitivities are divided by the free-particle standard quantum limit
//! `F²_SQL(ω) = 2mħω²`. With damping `γ̃` and thermal scale `θ` set to zero
//! every expression collapses onto the lossless forms.
//!
//! Shorthands used below (κ0 = 1):
//!
//! * `D₊ = (1+2G̃)² + ω̃²`, `D₋ = (1−2G̃)² + ω̃²`
//! * `N = ω̃² + 16G̃²`
//! * `P = J·N/D₊`, so that `𝒦 = P/ω̃²` and `𝒦_n = P/(ω̃(ω̃+iγ̃))`
//! * `|B|² = 2P/(ω̃²+γ̃²)`

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::params::{Constants, ReducedParams};
use crate::scalar::{sq, Real};

/// Kernels evaluated at one detection frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSet<T> {
    /// Modulus squared of the amplitude-quadrature transfer prefactor.
    pub a: T,
    /// Lossless backaction kernel.
    pub k: T,
    /// Damped backaction kernel.
    pub kn: Complex<T>,
    /// Unit-modulus force phase factor.
    pub u: Complex<T>,
    /// Damped force transfer amplitude.
    pub b: Complex<T>,
}

/// Force sensitivity `R(ω)/F²_SQL(ω)` split into its three noise sources.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivityPoint<T> {
    pub omega_tilde: T,
    pub phi: T,
    pub r_rel: T,
    pub shot: T,
    pub backaction: T,
    pub thermal: T,
}

#[derive(Debug, Clone, Copy)]
struct Reduced<T> {
    d_plus: T,
    d_minus: T,
    n: T,
    p: T,
}

fn check_frequency<T: Real>(omega_tilde: T) -> Result<()> {
    if omega_tilde > T::zero() && omega_tilde.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveFrequency {
            omega_tilde: omega_tilde.as_f64(),
        })
    }
}

fn reduced<T: Real>(rp: &ReducedParams<T>, w: T) -> Reduced<T> {
    let two = T::lit(2.0);
    let g = rp.g_tilde();
    let d_plus = sq(T::one() + two * g) + sq(w);
    let d_minus = sq(T::one() - two * g) + sq(w);
    let n = sq(w) + T::lit(16.0) * sq(g);
    Reduced {
        d_plus,
        d_minus,
        n,
        p: rp.j() * n / d_plus,
    }
}

/// Evaluates `A`, `𝒦`, `𝒦_n`, `u` and `B` at `ω̃ > 0`.
pub fn kernels<T: Real>(rp: &ReducedParams<T>, omega_tilde: T) -> Result<KernelSet<T>> {
    check_frequency(omega_tilde)?;
    let w = omega_tilde;
    let g = rp.g_tilde();
    let gam = rp.gamma_tilde();
    let two = T::lit(2.0);
    let r = reduced(rp, w);
    let i = Complex::<T>::i();

    let a = r.d_plus / r.d_minus;
    let k = r.p / sq(w);
    let kn = Complex::from(r.p) / (Complex::new(w, gam) * w);
    let u = Complex::from(r.n.sqrt() / r.d_plus.sqrt())
        * (Complex::new(T::one() + two * g, -w) / Complex::new(w, T::lit(4.0) * g))
        * i;
    let b = (kn * two).sqrt() / Complex::new(T::one(), gam / w).sqrt();
    Ok(KernelSet { a, k, kn, u, b })
}

/// Standard quantum limit `F_SQL = √(2mħω²)` in N/√Hz (SI inputs).
pub fn sql_force<T: Real>(mass: T, omega: T) -> T {
    (T::lit(2.0) * mass * Constants::hbar::<T>()).sqrt() * omega
}

/// Symmetrized spectrum of the homodyne quadrature at angle `phi`.
///
/// `s_ex_rel` is the external-force spectral density in units of
/// `F²_SQL(ω)`; the thermal force enters as `θ·γ̃/ω̃²` in the same units.
pub fn output_spectrum<T: Real>(
    rp: &ReducedParams<T>,
    omega_tilde: T,
    phi: T,
    s_ex_rel: T,
) -> Result<T> {
    let ks = kernels(rp, omega_tilde)?;
    let w = omega_tilde;
    let r = reduced(rp, w);
    let half = T::lit(0.5);
    let (sin, mut cos) = phi.sin_cos();
    // Same quadrature threshold as `sensitivity`: the phase quadrature is exact.
    if cos.abs() <= T::epsilon() * half {
        cos = T::zero();
    }
    let cos2 = sq(cos);
    let b2 = T::lit(2.0) * r.p / (sq(w) + sq(rp.gamma_tilde()));
    let backaction = (ks.kn * cos + Complex::from(sin / ks.a)).norm_sqr();
    let thermal = rp.theta() * rp.gamma_tilde() / sq(w);
    Ok(ks.a * (half * cos2 + half * backaction + b2 * cos2 * (thermal + s_ex_rel)))
}

/// `R(ω)/F²_SQL(ω)` at homodyne angle `phi`, decomposed into shot,
/// backaction and thermal terms.
///
/// At `J = 0` there is no force transduction: the shot term is infinite and
/// the backaction term is `0` at `phi = 0`, infinite otherwise.
pub fn sensitivity<T: Real>(
    rp: &ReducedParams<T>,
    omega_tilde: T,
    phi: T,
) -> Result<SensitivityPoint<T>> {
    check_frequency(omega_tilde)?;
    let (sin, cos) = phi.sin_cos();
    if !phi.is_finite() || cos.abs() <= T::epsilon() * T::lit(0.5) {
        return Err(Error::PhaseQuadrature { phi: phi.as_f64() });
    }
    let w = omega_tilde;
    let gam = rp.gamma_tilde();
    let r = reduced(rp, w);
    let tan_over_a = sin / cos * r.d_minus / r.d_plus;
    let w2g2 = sq(w) + sq(gam);

    let thermal = rp.theta() * gam / sq(w);
    let (shot, backaction) = if r.p == T::zero() {
        let ba = if tan_over_a == T::zero() {
            T::zero()
        } else {
            T::infinity()
        };
        (T::infinity(), ba)
    } else {
        // 1/(2|B|²) = (ω̃²+γ̃²)/(4P); 𝒦_n + tanφ/A split into real and
        // imaginary parts so that the optimum cancels without residue.
        let inv_2b2 = w2g2 / (T::lit(4.0) * r.p);
        let re = r.p / w2g2 + tan_over_a;
        let im = r.p * gam / (w * w2g2);
        (inv_2b2, inv_2b2 * (sq(re) + sq(im)))
    };
    Ok(SensitivityPoint {
        omega_tilde,
        phi,
        r_rel: shot + backaction + thermal,
        shot,
        backaction,
        thermal,
    })
}

/// `tan φ_opt = −A·P/(ω̃²+γ̃²)`, always real.
pub fn optimal_tan_phase<T: Real>(rp: &ReducedParams<T>, omega_tilde: T) -> Result<T> {
    check_frequency(omega_tilde)?;
    let w = omega_tilde;
    let r = reduced(rp, w);
    Ok(-(r.d_plus / r.d_minus) * r.p / (sq(w) + sq(rp.gamma_tilde())))
}

/// Homodyne angle minimizing `R(ω)`, on the branch `(−π/2, 0]`.
///
/// When `tan φ_opt` is so large that the arctangent rounds onto `−π/2`, the
/// nearest representable angle above `−π/2` is returned instead.
pub fn optimal_phase<T: Real>(rp: &ReducedParams<T>, omega_tilde: T) -> Result<T> {
    let t = optimal_tan_phase(rp, omega_tilde)?;
    let phi = t.atan();
    if phi.cos().abs() <= T::epsilon() * T::lit(0.5) {
        return Ok(-(T::FRAC_PI_2() - T::epsilon()));
    }
    Ok(phi)
}

/// Minimum normalized sensitivity `μ(ω) = R_min(ω)/F²_SQL(ω)` including
/// the damping residue of the backaction and the thermal term.
pub fn mu<T: Real>(rp: &ReducedParams<T>, omega_tilde: T) -> Result<T> {
    check_frequency(omega_tilde)?;
    let w = omega_tilde;
    let gam = rp.gamma_tilde();
    let r = reduced(rp, w);
    let thermal = rp.theta() * gam / sq(w);
    if r.p == T::zero() {
        return Ok(T::infinity());
    }
    let four = T::lit(4.0);
    let w2g2 = sq(w) + sq(gam);
    let shot = w2g2 / (four * r.p);
    let backaction = r.p * sq(gam) / (four * sq(w) * w2g2);
    Ok(shot + backaction + thermal)
}

/// Lossless `μ(ω)` written in terms of the bare drive strength:
/// `(1−2G̃)²·[(1+2G̃)²+ω̃²]·ω̃² / (4J0·(ω̃²+16G̃²))`.
pub fn mu_lossless<T: Real>(j0: T, g_tilde: T, omega_tilde: T) -> T {
    let two = T::lit(2.0);
    let w2 = sq(omega_tilde);
    T::one() / (T::lit(4.0) * j0)
        * sq(T::one() - two * g_tilde)
        * (sq(T::one() + two * g_tilde) + w2)
        * w2
        / (w2 + T::lit(16.0) * sq(g_tilde))
}

/// `μ(ω)` without parametric gain, damped and thermal:
/// `(1+ω̃²)(ω̃²+γ̃²)/(4J0ω̃²) + J0γ̃²/(4(1+ω̃²)(ω̃²+γ̃²)) + θγ̃/ω̃²`.
pub fn mu_without_gain<T: Real>(j0: T, gamma_tilde: T, theta: T, omega_tilde: T) -> T {
    let four = T::lit(4.0);
    let w2 = sq(omega_tilde);
    let g2 = sq(gamma_tilde);
    T::one() / (four * j0) * (T::one() + w2) * (w2 + g2) / w2
        + j0 / four / (T::one() + w2) * w2 / (w2 + g2) * g2 / w2
        + theta * gamma_tilde / w2
}
