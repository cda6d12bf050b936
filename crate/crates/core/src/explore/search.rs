//! One-dimensional minimization: coarse scans refined by golden-section
//! search, and the two minimizations the tables need (over the homodyne
//! angle and over the detection frequency).

use crate::error::{Error, Result};
use crate::params::ReducedParams;
use crate::response::{mu, sensitivity};
use crate::scalar::Real;

/// Lowest detection frequency accepted by sweeps and searches.
pub const OMEGA_FLOOR: f64 = 1e-4;
/// Upper edge of the plotted frequency band.
pub const OMEGA_BAND_TOP: f64 = 2.0;
/// Points in the coarse homodyne-angle scan.
pub const PHASE_SCAN_POINTS: usize = 721;
/// Points in the coarse logarithmic frequency scan.
pub const FREQUENCY_SCAN_POINTS: usize = 2000;

/// Location and value of a minimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum<T> {
    pub x: T,
    pub value: T,
}

/// `n` uniformly spaced values from `lo` to `hi` inclusive.
pub fn linspace<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let last = T::from_usize(n - 1).unwrap();
            (0..n)
                .map(|i| {
                    if i == n - 1 {
                        hi
                    } else {
                        lo + (hi - lo) * T::from_usize(i).unwrap() / last
                    }
                })
                .collect()
        }
    }
}

/// `n` logarithmically spaced values from `lo` to `hi` inclusive.
pub fn logspace<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    let mut v: Vec<T> = linspace(lo.ln(), hi.ln(), n)
        .into_iter()
        .map(T::exp)
        .collect();
    if let Some(first) = v.first_mut() {
        *first = lo;
    }
    if n > 1 {
        v[n - 1] = hi;
    }
    v
}

/// Golden-section search for a minimum of `f` inside `[lo, hi]`, stopping
/// when the bracket is narrower than `tol`.
///
/// Only interior points are evaluated. The best evaluated point is
/// returned.
pub fn golden_section<T: Real, F>(f: F, mut lo: T, mut hi: T, tol: T) -> Minimum<T>
where
    F: Fn(T) -> T,
{
    let inv_phi = T::lit(0.618_033_988_749_894_9);
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut best = if fd < fc {
        Minimum { x: d, value: fd }
    } else {
        Minimum { x: c, value: fc }
    };
    // The bracket shrinks by 0.618 per step; 200 steps exhaust any f64 range.
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
            if fc < best.value {
                best = Minimum { x: c, value: fc };
            }
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
            if fd < best.value {
                best = Minimum { x: d, value: fd };
            }
        }
    }
    best
}

/// Evaluates `f` on `grid`, brackets the best sample by its neighbours and
/// refines with golden-section search.
///
/// `bounds` closes the bracket when the best sample is the first or last
/// grid point. The refined point is kept only if it does not exceed the best
/// sample.
pub fn scan_then_refine<T: Real, F>(f: F, grid: &[T], bounds: (T, T), tol: T) -> Minimum<T>
where
    F: Fn(T) -> T,
{
    assert!(!grid.is_empty(), "scan grid must not be empty");
    let values: Vec<T> = grid.iter().map(|&x| f(x)).collect();
    let mut best_i = 0;
    for (i, v) in values.iter().enumerate() {
        // NaN samples never win.
        if *v < values[best_i] || values[best_i].is_nan() {
            best_i = i;
        }
    }
    let coarse = Minimum {
        x: grid[best_i],
        value: values[best_i],
    };
    let lo = if best_i == 0 {
        bounds.0
    } else {
        grid[best_i - 1]
    };
    let hi = if best_i + 1 == grid.len() {
        bounds.1
    } else {
        grid[best_i + 1]
    };
    if !(lo < hi) {
        return coarse;
    }
    let refined = golden_section(&f, lo, hi, tol);
    if refined.value <= coarse.value {
        refined
    } else {
        coarse
    }
}

/// Homodyne angle minimizing `R(ω)/F²_SQL(ω)`, found numerically.
///
/// Scans 721 angles strictly inside `(−π/2, π/2)` and refines the best one by
/// golden section to a few ulp (well inside `|Δφ| ≤ 1e−9`). At `J = 0` there is nothing to cancel and
/// `φ = 0` is returned with the (infinite) shot-noise value.
pub fn minimize_phase<T: Real>(rp: &ReducedParams<T>, omega_tilde: T) -> Result<Minimum<T>> {
    if rp.j() == T::zero() {
        let s = sensitivity(rp, omega_tilde, T::zero())?;
        return Ok(Minimum {
            x: T::zero(),
            value: s.r_rel,
        });
    }
    let pi = T::PI();
    let n = PHASE_SCAN_POINTS;
    let step = pi / T::from_usize(n + 1).unwrap();
    let grid: Vec<T> = (1..=n)
        .map(|i| -T::FRAC_PI_2() + step * T::from_usize(i).unwrap())
        .collect();
    // The thermal term does not depend on φ and can swamp the rest.
    let thermal = sensitivity(rp, omega_tilde, T::zero())?.thermal;
    let objective = |phi: T| match sensitivity(rp, omega_tilde, phi) {
        Ok(s) => s.shot + s.backaction,
        Err(_) => T::infinity(),
    };
    let bounds = (-T::FRAC_PI_2(), T::FRAC_PI_2());
    // The valley narrows as |tan φ| grows; refine to a few ulp, far below 1e−9.
    let tol = T::epsilon() * T::lit(4.0);
    let m = scan_then_refine(objective, &grid, bounds, tol);
    Ok(Minimum {
        x: m.x,
        value: m.value + thermal,
    })
}

/// Global minimum of `μ(ω)` over `omega_range ⊂ [1e−4, 2]`.
///
/// Logarithmic coarse scan of 2000 points followed by golden-section
/// refinement in `ln ω̃` to a relative tolerance of `1e−6`.
pub fn minimize_mu_over_frequency<T: Real>(
    rp: &ReducedParams<T>,
    omega_range: (T, T),
) -> Result<Minimum<T>> {
    let (lo, hi) = omega_range;
    let floor = T::lit(OMEGA_FLOOR);
    let top = T::lit(OMEGA_BAND_TOP);
    // Small slack so that bounds written as decimal literals are accepted.
    let slack = T::lit(1e-12);
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::range(
            "omega_over_kappa0",
            format!("need lo < hi, got [{lo}, {hi}]"),
        ));
    }
    if lo < floor * (T::one() - slack) || hi > top * (T::one() + slack) {
        return Err(Error::range(
            "omega_over_kappa0",
            format!("[{lo}, {hi}] is not inside [{floor}, {top}]"),
        ));
    }
    mu(rp, lo)?;
    let (ln_lo, ln_hi) = (lo.ln(), hi.ln());
    let grid = linspace(ln_lo, ln_hi, FREQUENCY_SCAN_POINTS);
    // Band edges map back onto the exact bounds.
    let to_omega = |log_w: T| {
        if log_w <= ln_lo {
            lo
        } else if log_w >= ln_hi {
            hi
        } else {
            log_w.exp()
        }
    };
    let objective = |log_w: T| mu(rp, to_omega(log_w)).unwrap_or(T::infinity());
    let best = scan_then_refine(objective, &grid, (ln_lo, ln_hi), T::lit(1e-6));
    Ok(Minimum {
        x: to_omega(best.x),
        value: best.value,
    })
}
