//! Subcommand bodies. Each returns the complete CSV text so nothing is
//! written unless the whole run succeeds.

use std::io::Write;

use clap::Args;
use optoforce::explore::search::{logspace, OMEGA_BAND_TOP, OMEGA_FLOOR};
use optoforce::io::{contour_to_csv, fmt_float, grid_to_csv, table_rows_to_csv, CsvTable};
use optoforce::{
    extract_contour, mu, optimal_phase, oscillator_sensitivity, output_spectrum, reproduce_tables,
    sensitivity, sensitivity_ratio, sweep, AxisKind, AxisSpec, Phase, Quantity, ReducedParams64,
    SweepSpec, Table, TableSetup,
};

use crate::config::{parse_numbers, parse_phis, parse_range, FileConfig, PhiChoice, Setup};
use crate::error::CliError;

fn params_meta(rp: &ReducedParams64) -> Vec<(&'static str, String)> {
    vec![
        ("J0", fmt_float(rp.j0())),
        ("G_tilde", fmt_float(rp.g_tilde())),
        ("gamma_tilde", fmt_float(rp.gamma_tilde())),
        ("theta", fmt_float(rp.theta())),
    ]
}

/// Frequencies from `--omega`, else `nx` log-spaced points over the band.
fn omegas(flag: &Option<String>, file: &FileConfig, nx: usize) -> Result<Vec<f64>, CliError> {
    match flag
        .clone()
        .or_else(|| file.omega.as_ref().map(|f| f.to_arg()))
    {
        Some(text) => parse_numbers("omega", &text),
        None => Ok(logspace(OMEGA_FLOOR, OMEGA_BAND_TOP, nx)),
    }
}

fn phis(flag: &Option<String>, file: &FileConfig) -> Result<Vec<PhiChoice>, CliError> {
    match flag
        .clone()
        .or_else(|| file.phi_over_pi.as_ref().map(|f| f.to_arg()))
    {
        Some(text) => parse_phis(&text),
        None => Ok(vec![PhiChoice::Optimal]),
    }
}

fn angle(rp: &ReducedParams64, w: f64, choice: PhiChoice) -> Result<f64, CliError> {
    Ok(match choice {
        PhiChoice::Optimal => optimal_phase(rp, w)?,
        PhiChoice::OverPi(p) => p * std::f64::consts::PI,
    })
}

#[derive(Debug, Clone, Default, Args)]
pub struct PointArgs {
    /// Comma-separated omega/kappa0 values; log-spaced over [1e-4, 2] by default.
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    pub omega: Option<String>,
    /// Comma-separated phi/pi values; `opt` selects the optimal angle.
    #[arg(long = "phi-over-pi", value_name = "LIST", allow_hyphen_values = true)]
    pub phi_over_pi: Option<String>,
}

pub fn sensitivity_csv(
    setup: &Setup,
    file: &FileConfig,
    args: &PointArgs,
) -> Result<String, CliError> {
    let rp = &setup.params;
    let mut t = CsvTable::new([
        "omega_over_kappa0",
        "phi_over_pi",
        "R_rel",
        "shot",
        "backaction",
        "thermal",
    ]);
    t.push_meta(params_meta(rp));
    let phis = phis(&args.phi_over_pi, file)?;
    for w in omegas(&args.omega, file, setup.resolution.0)? {
        for &choice in &phis {
            let s = sensitivity(rp, w, angle(rp, w, choice)?)?;
            t.rows.push(vec![
                w,
                s.phi / std::f64::consts::PI,
                s.r_rel,
                s.shot,
                s.backaction,
                s.thermal,
            ]);
        }
    }
    Ok(t.to_csv(&[]))
}

#[derive(Debug, Clone, Default, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub point: PointArgs,
    /// External-force spectral density in units of the standard quantum limit.
    #[arg(long = "s-ex-rel", allow_negative_numbers = true)]
    pub s_ex_rel: Option<f64>,
}

pub fn spectrum_csv(
    setup: &Setup,
    file: &FileConfig,
    args: &SpectrumArgs,
) -> Result<String, CliError> {
    let rp = &setup.params;
    let s_ex = args.s_ex_rel.or(file.s_ex_rel).unwrap_or(0.0);
    let mut t = CsvTable::new(["omega_over_kappa0", "phi_over_pi", "S_zout"]);
    let mut meta = params_meta(rp);
    meta.push(("s_ex_rel", fmt_float(s_ex)));
    t.push_meta(meta);
    let phis = phis(&args.point.phi_over_pi, file)?;
    for w in omegas(&args.point.omega, file, setup.resolution.0)? {
        for &choice in &phis {
            let phi = angle(rp, w, choice)?;
            let s = output_spectrum(rp, w, phi, s_ex)?;
            t.rows.push(vec![w, phi / std::f64::consts::PI, s]);
        }
    }
    Ok(t.to_csv(&[]))
}

#[derive(Debug, Clone, Default, Args)]
pub struct MapArgs {
    /// omega/kappa0 range, default `1e-4,2`.
    #[arg(long = "x-range", value_name = "LO,HI")]
    pub x_range: Option<String>,
    /// G/kappa0 range, default `0,0.499`.
    #[arg(long = "y-range", value_name = "LO,HI")]
    pub y_range: Option<String>,
}

fn default_range(kind: AxisKind) -> (f64, f64) {
    match kind {
        AxisKind::OmegaTilde => (OMEGA_FLOOR, OMEGA_BAND_TOP),
        AxisKind::GTilde => (0.0, 0.499),
        AxisKind::PhiOverPi => (-0.499, 0.499),
    }
}

fn axis(
    kind: AxisKind,
    flag: &Option<String>,
    from_file: &Option<crate::config::Flexible>,
    field: &str,
    points: usize,
) -> Result<AxisSpec<f64>, CliError> {
    let (lo, hi) = match flag
        .clone()
        .or_else(|| from_file.as_ref().map(|f| f.to_arg()))
    {
        Some(text) => parse_range(field, &text)?,
        None => default_range(kind),
    };
    Ok(AxisSpec::new(kind, lo, hi, points))
}

pub fn mu_map_csv(setup: &Setup, file: &FileConfig, args: &MapArgs) -> Result<String, CliError> {
    let (nx, ny) = setup.resolution;
    let spec = SweepSpec::new(
        setup.params,
        Quantity::Mu,
        axis(
            AxisKind::OmegaTilde,
            &args.x_range,
            &file.x_range,
            "x_range",
            nx,
        )?,
        axis(
            AxisKind::GTilde,
            &args.y_range,
            &file.y_range,
            "y_range",
            ny,
        )?,
    );
    Ok(grid_to_csv(&sweep(&spec)?))
}

#[derive(Debug, Clone, Default, Args)]
pub struct ContourArgs {
    /// Level-set quantity: K, mu or R_rel.
    #[arg(long)]
    pub quantity: Option<String>,
    /// Level value.
    #[arg(long, allow_negative_numbers = true)]
    pub level: Option<f64>,
    /// x axis: omega_over_kappa0, G_over_kappa0 or phi_over_pi.
    #[arg(long = "x-axis")]
    pub x_axis: Option<String>,
    /// y axis: omega_over_kappa0, G_over_kappa0 or phi_over_pi.
    #[arg(long = "y-axis")]
    pub y_axis: Option<String>,
    #[arg(long = "x-range", value_name = "LO,HI", allow_hyphen_values = true)]
    pub x_range: Option<String>,
    #[arg(long = "y-range", value_name = "LO,HI", allow_hyphen_values = true)]
    pub y_range: Option<String>,
    /// omega/kappa0 when it is not an axis.
    #[arg(long)]
    pub omega: Option<f64>,
    /// phi/pi for R_rel when it is not an axis; `opt` by default.
    #[arg(long = "phi-over-pi", allow_hyphen_values = true)]
    pub phi_over_pi: Option<String>,
}

pub fn contour_csv(
    setup: &Setup,
    file: &FileConfig,
    args: &ContourArgs,
) -> Result<String, CliError> {
    let name = args
        .quantity
        .clone()
        .or_else(|| file.quantity.clone())
        .unwrap_or_else(|| "K".to_string());
    let quantity = match Quantity::from_name(&name) {
        Some(q @ (Quantity::K | Quantity::Mu | Quantity::RRel)) => q,
        _ => {
            return Err(CliError::config(format!(
                "quantity: expected K, mu or R_rel, got `{name}`"
            )))
        }
    };
    let level = args
        .level
        .or(file.level)
        .ok_or_else(|| CliError::config("level: required"))?;
    let kind =
        |flag: &Option<String>, from_file: &Option<String>, default: AxisKind, field: &str| {
            match flag.clone().or_else(|| from_file.clone()) {
                None => Ok(default),
                Some(n) => AxisKind::from_name(&n)
                    .ok_or_else(|| CliError::config(format!("{field}: unknown axis `{n}`"))),
            }
        };
    let xk = kind(&args.x_axis, &file.x_axis, AxisKind::OmegaTilde, "x_axis")?;
    let yk = kind(&args.y_axis, &file.y_axis, AxisKind::GTilde, "y_axis")?;
    let (nx, ny) = setup.resolution;
    let mut spec = SweepSpec::new(
        setup.params,
        quantity,
        axis(xk, &args.x_range, &file.x_range, "x_range", nx)?,
        axis(yk, &args.y_range, &file.y_range, "y_range", ny)?,
    );
    if let Some(w) = args.omega.or_else(|| {
        file.omega
            .as_ref()
            .and_then(|f| f.to_arg().parse::<f64>().ok())
    }) {
        spec.omega_tilde = w;
    }
    let phis = phis(&args.phi_over_pi, file)?;
    spec.phase = match phis[..] {
        [PhiChoice::Optimal] => Phase::Optimal,
        [PhiChoice::OverPi(p)] => Phase::Fixed(p * std::f64::consts::PI),
        _ => return Err(CliError::config("phi_over_pi: expected a single value")),
    };
    let grid = sweep(&spec)?;
    Ok(contour_to_csv(&extract_contour(&grid, level)))
}

#[derive(Debug, Clone, Default, Args)]
pub struct TablesArgs {
    /// Which table: 1, 2 or both.
    #[arg(long, value_name = "1|2|both")]
    pub table: Option<String>,
}

pub fn tables_csv(setup: &Setup, file: &FileConfig, args: &TablesArgs) -> Result<String, CliError> {
    let which = args
        .table
        .clone()
        .or_else(|| file.table.as_ref().map(|f| f.to_arg()))
        .unwrap_or_else(|| "both".to_string());
    let keep: Vec<Table> = match which.trim() {
        "1" | "1.0" => vec![Table::I],
        "2" | "2.0" => vec![Table::II],
        "both" => vec![Table::I, Table::II],
        other => {
            return Err(CliError::config(format!(
                "table: expected 1, 2 or both, got `{other}`"
            )))
        }
    };
    let mut table_setup = TableSetup::default();
    if let Some(k) = setup.kappa0_rad_s {
        table_setup.kappa0 = k;
    }
    let rows: Vec<_> = reproduce_tables(&table_setup)?
        .into_iter()
        .filter(|r| keep.contains(&r.table))
        .collect();
    Ok(table_rows_to_csv(&rows))
}

#[derive(Debug, Clone, Default, Args)]
pub struct OscillatorArgs {
    /// Comma-separated omega/kappa0 values; log-spaced over [1e-4, 2] by default.
    #[arg(long, value_name = "LIST")]
    pub omega: Option<String>,
    /// Mechanical resonance omega_m/kappa0.
    #[arg(long = "omega-m-tilde")]
    pub omega_m_tilde: Option<f64>,
}

pub fn oscillator_csv(
    setup: &Setup,
    file: &FileConfig,
    args: &OscillatorArgs,
    diag: &mut dyn Write,
) -> Result<String, CliError> {
    let rp = &setup.params;
    let wm = match args.omega_m_tilde.or(file.omega_m_tilde) {
        Some(v) => v,
        None => match (setup.omega_m_rad_s, setup.kappa0_rad_s) {
            (Some(m), Some(k)) if setup.physical.is_some() => m / k,
            _ => return Err(CliError::config("omega_m_tilde: required")),
        },
    };
    if !(wm > 0.0 && wm.is_finite()) {
        return Err(CliError::config(format!(
            "omega_m_tilde: must be > 0, got {wm}"
        )));
    }
    let mut t = CsvTable::new(["omega_over_kappa0", "mu_mo", "mu_free", "ratio"]);
    let mut meta = params_meta(rp);
    meta.push(("omega_m_tilde", fmt_float(wm)));
    t.push_meta(meta);
    let mut skipped = 0usize;
    for w in omegas(&args.omega, file, setup.resolution.0)? {
        if w.partial_cmp(&wm) != Some(std::cmp::Ordering::Greater) {
            skipped += 1;
            continue;
        }
        let o = oscillator_sensitivity(rp, wm, w, 0.0)?;
        t.rows
            .push(vec![w, o.mu_mo, mu(rp, w)?, sensitivity_ratio(wm, w)?]);
    }
    if skipped > 0 {
        let _ = writeln!(
            diag,
            "skipped {skipped} frequencies at or below omega_m_tilde = {wm}"
        );
    }
    Ok(t.to_csv(&[]))
}
