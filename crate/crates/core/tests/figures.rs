//! Figure-data grids and the statements made about them.

use std::f64::consts::PI;

use optoforce::explore::{sweep_with, Execution};
use optoforce::{
    minimize_phase, mu, sweep, thermal_scale, AxisKind, AxisSpec, Phase, Quantity, ReducedParams32,
    ReducedParams64, SweepSpec,
};

fn mu_map(rp: ReducedParams64, n: usize, g_range: (f64, f64)) -> optoforce::SweepGrid64 {
    let spec = SweepSpec::new(
        rp,
        Quantity::Mu,
        AxisSpec::new(AxisKind::OmegaTilde, 1e-4, 2.0, n),
        AxisSpec::new(AxisKind::GTilde, g_range.0, g_range.1, n),
    );
    sweep(&spec).unwrap()
}

#[test]
fn lossless_map_spot_value() {
    let g = mu_map(ReducedParams64::lossless(0.5, 0.0).unwrap(), 5, (0.0, 0.4));
    // ω̃ = 1 is not on this axis; evaluate directly.
    assert!((mu(&ReducedParams64::lossless(0.5, 0.0).unwrap(), 1.0).unwrap() - 1.0).abs() < 1e-15);
    assert_eq!(
        g.at(0, 0),
        mu(&ReducedParams64::lossless(0.5, 0.0).unwrap(), 1e-4).unwrap()
    );
}

#[test]
fn lossless_sub_sql_for_strong_gain() {
    let g = mu_map(
        ReducedParams64::lossless(0.5, 0.0).unwrap(),
        200,
        (0.28, 0.499),
    );
    assert!(g.max() < 0.5, "{}", g.max());
    let below = mu_map(
        ReducedParams64::lossless(0.5, 0.0).unwrap(),
        50,
        (0.0, 0.27),
    );
    assert!(below.max() > 0.5);
}

#[test]
fn thermal_map_region_below_one_tenth() {
    let theta = thermal_scale(1.0, 2.0 * PI * 1e6);
    let rp = ReducedParams64::new(0.5, 0.0, 1e-5, theta).unwrap();
    let g = mu_map(rp, 400, (0.0, 0.499));
    let mut count = 0;
    for j in 0..g.ny() {
        for i in 0..g.nx() {
            if g.at(i, j) < 0.1 {
                count += 1;
                assert!(g.y.values[j] >= 0.426, "G = {}", g.y.values[j]);
                // The text's 1.45 is rounded; the boundary sits at 1.4436.
                assert!(g.x.values[i] >= 1.44, "omega = {}", g.x.values[i]);
            }
        }
    }
    assert!(count > 0);
}

#[test]
fn phase_grid_beats_sql_with_gain() {
    let rp = ReducedParams64::lossless(0.5, 0.4).unwrap();
    let spec = SweepSpec::new(
        rp,
        Quantity::RRel,
        AxisSpec::new(AxisKind::PhiOverPi, -0.499, 0.499, 200),
        AxisSpec::new(AxisKind::OmegaTilde, 1e-4, 2.0, 200),
    );
    assert!(sweep(&spec).unwrap().min() < 0.05);
}

#[test]
fn serial_and_parallel_grids_are_identical() {
    let theta = thermal_scale(1.0, 2.0 * PI * 1e6);
    let rp = ReducedParams64::new(0.1, 0.3, 1e-3, theta).unwrap();
    for quantity in [Quantity::K, Quantity::Mu, Quantity::RRel, Quantity::SZout] {
        let mut spec = SweepSpec::new(
            rp,
            quantity,
            AxisSpec::new(AxisKind::OmegaTilde, 1e-3, 3.0, 64),
            AxisSpec::new(AxisKind::GTilde, 0.0, 0.45, 33),
        );
        spec.phase = Phase::Fixed(-0.2);
        spec.s_ex_rel = 0.5;
        let a = sweep_with(&spec, Execution::Serial).unwrap();
        let b = sweep_with(&spec, Execution::Parallel).unwrap();
        assert!(a
            .values
            .iter()
            .zip(&b.values)
            .all(|(x, y)| x.to_bits() == y.to_bits()));
    }
}

#[test]
fn single_precision_tracks_double() {
    let rp64 = ReducedParams64::new(0.5, 0.3, 1e-5, 100.0).unwrap();
    let rp32 = ReducedParams32::new(0.5, 0.3, 1e-5, 100.0).unwrap();
    for w in [0.05, 0.3, 1.0, 1.9] {
        let a = mu(&rp64, w).unwrap();
        let b = mu(&rp32, w as f32).unwrap() as f64;
        assert!(((a - b) / a).abs() < 1e-5);
        let p = minimize_phase(&rp32, w as f32).unwrap();
        assert!(((p.value as f64 - a) / a).abs() < 1e-4);
    }
}
