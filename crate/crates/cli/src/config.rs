//! Run configuration: flat JSON file merged with command-line flags, flags
//! taking precedence.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Args;
use optoforce::{reduce, PhysicalParams64, ReducedParams64};
use serde::Deserialize;

use crate::error::CliError;

/// Default grid resolution per axis.
pub const DEFAULT_RESOLUTION: usize = 400;

/// A JSON value given either as a number, a string or a list of them.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Flexible {
    Number(f64),
    Text(String),
    List(Vec<Flexible>),
}

impl Flexible {
    /// Rendering in the same syntax as the matching flag.
    pub fn to_arg(&self) -> String {
        match self {
            Flexible::Number(x) => format!("{x:?}"),
            Flexible::Text(s) => s.clone(),
            Flexible::List(items) => items
                .iter()
                .map(Flexible::to_arg)
                .collect::<Vec<_>>()
                .join(","),
        }
    }
}

/// Contents of a `--config` file. Keys match the long flags with `_`
/// instead of `-`.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub kappa0_rad_s: Option<f64>,
    #[serde(rename = "G_rad_s")]
    pub g_rad_s: Option<f64>,
    pub eta_per_m: Option<f64>,
    pub mass_kg: Option<f64>,
    pub gamma_m_rad_s: Option<f64>,
    #[serde(rename = "temperature_K")]
    pub temperature_k: Option<f64>,
    #[serde(rename = "power_W")]
    pub power_w: Option<f64>,
    pub wavelength_m: Option<f64>,
    pub omega_m_rad_s: Option<f64>,
    #[serde(rename = "J0")]
    pub j0: Option<f64>,
    #[serde(rename = "G_tilde")]
    pub g_tilde: Option<f64>,
    pub gamma_tilde: Option<f64>,
    pub theta: Option<f64>,
    pub resolution: Option<Flexible>,
    pub omega: Option<Flexible>,
    pub phi_over_pi: Option<Flexible>,
    pub s_ex_rel: Option<f64>,
    pub quantity: Option<String>,
    pub level: Option<f64>,
    pub x_axis: Option<String>,
    pub y_axis: Option<String>,
    pub x_range: Option<Flexible>,
    pub y_range: Option<Flexible>,
    pub table: Option<Flexible>,
    pub omega_m_tilde: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read `{}`: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::config(format!("`{}`: {e}", path.display())))
    }
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Flat JSON file with any of the flag values below.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Grid points per axis: `N` or `NX,NY`.
    #[arg(long, value_name = "N|NX,NY")]
    pub resolution: Option<String>,

    /// Bare cavity decay rate, rad/s.
    #[arg(long = "kappa0-rad-s", value_name = "RAD_S")]
    pub kappa0_rad_s: Option<f64>,
    /// Parametric gain, rad/s.
    #[arg(long = "G-rad-s", value_name = "RAD_S")]
    pub g_rad_s: Option<f64>,
    /// Dissipative coupling, 1/m.
    #[arg(long = "eta-per-m", value_name = "PER_M")]
    pub eta_per_m: Option<f64>,
    /// Particle mass, kg.
    #[arg(long = "mass-kg", value_name = "KG")]
    pub mass_kg: Option<f64>,
    /// Momentum damping rate, rad/s.
    #[arg(long = "gamma-m-rad-s", value_name = "RAD_S")]
    pub gamma_m_rad_s: Option<f64>,
    /// Bath temperature, K.
    #[arg(long = "temperature-K", value_name = "K")]
    pub temperature_k: Option<f64>,
    /// Drive power, W.
    #[arg(long = "power-W", value_name = "W")]
    pub power_w: Option<f64>,
    /// Drive wavelength, m.
    #[arg(long = "wavelength-m", value_name = "M")]
    pub wavelength_m: Option<f64>,
    /// Mechanical resonance, rad/s (oscillator model).
    #[arg(long = "omega-m-rad-s", value_name = "RAD_S")]
    pub omega_m_rad_s: Option<f64>,

    /// Reduced drive strength without gain.
    #[arg(long = "J0")]
    pub j0: Option<f64>,
    /// Reduced gain G/kappa0.
    #[arg(long = "G-tilde")]
    pub g_tilde: Option<f64>,
    /// Reduced damping gamma_m/kappa0.
    #[arg(long = "gamma-tilde")]
    pub gamma_tilde: Option<f64>,
    /// Reduced thermal scale k_B T/(hbar kappa0).
    #[arg(long)]
    pub theta: Option<f64>,
}

/// Parameters after merging file and flags.
#[derive(Debug, Clone)]
pub struct Setup {
    pub params: ReducedParams64,
    /// Set when the run was configured in laboratory units.
    pub physical: Option<PhysicalParams64>,
    pub kappa0_rad_s: Option<f64>,
    pub omega_m_rad_s: Option<f64>,
    pub resolution: (usize, usize),
    pub out: Option<PathBuf>,
}

impl CommonArgs {
    /// Loads the config file, if any.
    pub fn file(&self) -> Result<FileConfig, CliError> {
        match &self.config {
            Some(path) => FileConfig::load(path),
            None => Ok(FileConfig::default()),
        }
    }

    /// Merges flags over `file` and builds the model parameters. Warnings go
    /// to `diag`.
    pub fn resolve(&self, file: &FileConfig, diag: &mut dyn Write) -> Result<Setup, CliError> {
        let physical = [
            ("kappa0_rad_s", self.kappa0_rad_s.or(file.kappa0_rad_s)),
            ("G_rad_s", self.g_rad_s.or(file.g_rad_s)),
            ("eta_per_m", self.eta_per_m.or(file.eta_per_m)),
            ("mass_kg", self.mass_kg.or(file.mass_kg)),
            ("gamma_m_rad_s", self.gamma_m_rad_s.or(file.gamma_m_rad_s)),
            ("temperature_K", self.temperature_k.or(file.temperature_k)),
            ("power_W", self.power_w.or(file.power_w)),
            ("wavelength_m", self.wavelength_m.or(file.wavelength_m)),
            ("omega_m_rad_s", self.omega_m_rad_s.or(file.omega_m_rad_s)),
        ];
        let reduced = [
            self.j0.or(file.j0),
            self.g_tilde.or(file.g_tilde),
            self.gamma_tilde.or(file.gamma_tilde),
            self.theta.or(file.theta),
        ];
        let get = |name: &str| {
            physical
                .iter()
                .find(|(n, _)| *n == name)
                .and_then(|(_, v)| *v)
        };
        let any_physical = physical.iter().any(|(_, v)| v.is_some());
        let any_reduced = reduced.iter().any(Option::is_some);

        let mut lab = None;
        let params = if any_reduced || !any_physical {
            if any_reduced && any_physical {
                let _ = writeln!(
                    diag,
                    "warning: both physical and reduced parameters given; using the reduced ones"
                );
            }
            let [j0, g, gam, theta] = reduced;
            ReducedParams64::new(
                j0.unwrap_or(0.5),
                g.unwrap_or(0.0),
                gam.unwrap_or(0.0),
                theta.unwrap_or(0.0),
            )?
        } else {
            let required = |name: &str| {
                get(name)
                    .ok_or_else(|| CliError::config(format!("missing physical parameter `{name}`")))
            };
            let p = PhysicalParams64 {
                kappa0: required("kappa0_rad_s")?,
                gain: get("G_rad_s").unwrap_or(0.0),
                eta: required("eta_per_m")?,
                mass: required("mass_kg")?,
                gamma_m: get("gamma_m_rad_s").unwrap_or(0.0),
                temperature: get("temperature_K").unwrap_or(0.0),
                power: required("power_W")?,
                wavelength: required("wavelength_m")?,
                omega_m: get("omega_m_rad_s").unwrap_or(0.0),
            };
            let rp = reduce(&p)?;
            lab = Some(p);
            rp
        };

        let resolution = match self
            .resolution
            .clone()
            .or_else(|| file.resolution.as_ref().map(Flexible::to_arg))
        {
            Some(text) => parse_resolution(&text)?,
            None => (DEFAULT_RESOLUTION, DEFAULT_RESOLUTION),
        };
        Ok(Setup {
            params,
            physical: lab,
            kappa0_rad_s: get("kappa0_rad_s"),
            omega_m_rad_s: get("omega_m_rad_s"),
            resolution,
            out: self.out.clone(),
        })
    }
}

/// `N` or `NX,NY`, each at least 1.
pub fn parse_resolution(text: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::config(format!("resolution: expected `N` or `NX,NY`, got `{text}`"));
    let parts: Vec<usize> = text
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.fract() == 0.0 && *v >= 1.0)
        })
        .map(|v| v.map(|v| v as usize).ok_or_else(bad))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [n] => Ok((n, n)),
        [nx, ny] => Ok((nx, ny)),
        _ => Err(bad()),
    }
}

/// Comma-separated numbers.
pub fn parse_numbers(field: &str, text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::config(format!("{field}: `{s}` is not a number")))
        })
        .collect()
}

/// `LO,HI`.
pub fn parse_range(field: &str, text: &str) -> Result<(f64, f64), CliError> {
    match parse_numbers(field, text)?[..] {
        [lo, hi] => Ok((lo, hi)),
        _ => Err(CliError::config(format!(
            "{field}: expected `LO,HI`, got `{text}`"
        ))),
    }
}

/// Homodyne angle requested on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhiChoice {
    Optimal,
    OverPi(f64),
}

/// Comma-separated `φ/π` values; `opt` selects the optimal angle.
pub fn parse_phis(text: &str) -> Result<Vec<PhiChoice>, CliError> {
    text.split(',')
        .map(|s| match s.trim() {
            "opt" => Ok(PhiChoice::Optimal),
            v => v.parse::<f64>().map(PhiChoice::OverPi).map_err(|_| {
                CliError::config(format!("phi_over_pi: `{v}` is neither a number nor `opt`"))
            }),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolution_forms() {
        assert_eq!(parse_resolution("400").unwrap(), (400, 400));
        assert_eq!(parse_resolution("3,7").unwrap(), (3, 7));
        for bad in ["", "0", "2.5", "1,2,3", "x"] {
            assert_eq!(parse_resolution(bad).unwrap_err().exit_code(), 2, "{bad}");
        }
    }

    #[test]
    fn lists() {
        assert_eq!(parse_numbers("omega", "0.1, 2").unwrap(), vec![0.1, 2.0]);
        assert!(parse_numbers("omega", "0.1,,2").is_err());
        assert_eq!(parse_range("x_range", "-0.4,0.4").unwrap(), (-0.4, 0.4));
        assert!(parse_range("x_range", "1").is_err());
        assert_eq!(
            parse_phis("opt,-0.25").unwrap(),
            vec![PhiChoice::Optimal, PhiChoice::OverPi(-0.25)]
        );
        assert!(parse_phis("best").is_err());
    }

    #[test]
    fn flexible_values() {
        let f: FileConfig = serde_json::from_str(
            r#"{"omega": [0.1, 0.5], "phi_over_pi": "opt", "resolution": 20}"#,
        )
        .unwrap();
        assert_eq!(f.omega.unwrap().to_arg(), "0.1,0.5");
        assert_eq!(f.phi_over_pi.unwrap().to_arg(), "opt");
        assert_eq!(
            parse_resolution(&f.resolution.unwrap().to_arg()).unwrap(),
            (20, 20)
        );
        assert!(serde_json::from_str::<FileConfig>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn parameter_sources() {
        let file = FileConfig::default();
        let mut sink = Vec::new();
        let s = CommonArgs::default().resolve(&file, &mut sink).unwrap();
        assert_eq!(s.params.j0(), 0.5);
        assert!(s.physical.is_none());

        let lab = CommonArgs {
            kappa0_rad_s: Some(2.0 * std::f64::consts::PI * 1e6),
            eta_per_m: Some(4.182e8),
            mass_kg: Some(100e-12),
            power_w: Some(10.0),
            wavelength_m: Some(1064e-9),
            ..CommonArgs::default()
        };
        let s = lab.resolve(&file, &mut sink).unwrap();
        assert!((s.params.j0() - 0.5).abs() < 0.01);
        assert!(sink.is_empty());

        let both = CommonArgs {
            j0: Some(0.1),
            ..lab.clone()
        };
        let s = both.resolve(&file, &mut sink).unwrap();
        assert_eq!(s.params.j0(), 0.1);
        assert!(String::from_utf8(sink).unwrap().contains("warning"));

        let partial = CommonArgs {
            mass_kg: Some(1e-10),
            ..CommonArgs::default()
        };
        let err = partial.resolve(&file, &mut Vec::new()).unwrap_err();
        assert!(err.to_string().contains("kappa0_rad_s"));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn flags_override_file() {
        let file: FileConfig = serde_json::from_str(r#"{"J0": 0.1, "G_tilde": 0.3}"#).unwrap();
        let args = CommonArgs {
            j0: Some(0.02),
            ..CommonArgs::default()
        };
        let s = args.resolve(&file, &mut Vec::new()).unwrap();
        assert_eq!(s.params.j0(), 0.02);
        assert_eq!(s.params.g_tilde(), 0.3);
    }

    #[test]
    fn unstable_gain_is_a_domain_error() {
        let args = CommonArgs {
            g_tilde: Some(0.5),
            ..CommonArgs::default()
        };
        assert_eq!(
            args.resolve(&FileConfig::default(), &mut Vec::new())
                .unwrap_err()
                .exit_code(),
            3
        );
    }
}
