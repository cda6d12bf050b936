//! Plain-text CSV with `#` metadata lines.
//!
//! Floats are written with 17 significant digits so every value re-parses to
//! the same bits. Lines end in `\n`.

use core::fmt::Write as _;

use thiserror::Error;

use crate::explore::contour::ContourSet;
use crate::explore::sweep::{Axis, AxisKind, Quantity, SweepGrid};
use crate::explore::tables::{Table, TableRow};
use crate::params::ReducedParams;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("missing metadata `{0}`")]
    MissingMeta(String),
    #[error("unexpected columns: {0}")]
    Columns(String),
    #[error("inconsistent data: {0}")]
    Shape(String),
}

/// Metadata, column names and numeric rows of one file.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CsvTable {
    pub meta: Vec<Vec<(String, String)>>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// Formats a float with 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

impl CsvTable {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            ..Self::default()
        }
    }

    /// Adds one `# key=value ...` line.
    pub fn push_meta<K: Into<String>>(&mut self, pairs: impl IntoIterator<Item = (K, String)>) {
        self.meta
            .push(pairs.into_iter().map(|(k, v)| (k.into(), v)).collect());
    }

    /// First value of `key` across all metadata lines.
    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta
            .iter()
            .flatten()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn meta_f64(&self, key: &str) -> Result<f64, ParseError> {
        let v = self
            .meta_value(key)
            .ok_or_else(|| ParseError::MissingMeta(key.to_string()))?;
        v.parse()
            .map_err(|_| ParseError::MissingMeta(format!("{key} (not a number: {v})")))
    }

    /// Serializes. Columns listed in `integer_columns` are written without
    /// a fractional part.
    pub fn to_csv(&self, integer_columns: &[usize]) -> String {
        let mut out = String::new();
        for line in &self.meta {
            out.push('#');
            for (k, v) in line {
                let _ = write!(out, " {k}={v}");
            }
            out.push('\n');
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(c, &v)| {
                    if integer_columns.contains(&c) {
                        format!("{}", v as i64)
                    } else {
                        fmt_float(v)
                    }
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut table = CsvTable::default();
        let mut have_header = false;
        for (n, line) in text.lines().enumerate() {
            let line_no = n + 1;
            if line.trim().is_empty() {
                continue;
            }
            if let Some(meta) = line.strip_prefix('#') {
                let pairs = meta
                    .split_whitespace()
                    .map(|kv| {
                        kv.split_once('=')
                            .map(|(k, v)| (k.to_string(), v.to_string()))
                            .ok_or_else(|| ParseError::Syntax {
                                line: line_no,
                                reason: format!("expected key=value, got `{kv}`"),
                            })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                table.meta.push(pairs);
            } else if !have_header {
                table.columns = line.split(',').map(|s| s.trim().to_string()).collect();
                have_header = true;
            } else {
                let row = line
                    .split(',')
                    .map(|s| {
                        s.trim().parse::<f64>().map_err(|_| ParseError::Syntax {
                            line: line_no,
                            reason: format!("not a number: `{s}`"),
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if row.len() != table.columns.len() {
                    return Err(ParseError::Syntax {
                        line: line_no,
                        reason: format!(
                            "expected {} fields, got {}",
                            table.columns.len(),
                            row.len()
                        ),
                    });
                }
                table.rows.push(row);
            }
        }
        if !have_header {
            return Err(ParseError::Columns("no header line".into()));
        }
        Ok(table)
    }

    fn expect_columns(&self, expected: &[&str]) -> Result<(), ParseError> {
        if self
            .columns
            .iter()
            .map(String::as_str)
            .eq(expected.iter().copied())
        {
            Ok(())
        } else {
            Err(ParseError::Columns(format!(
                "expected `{}`, got `{}`",
                expected.join(","),
                self.columns.join(",")
            )))
        }
    }
}

fn params_meta<T: Real>(rp: &ReducedParams<T>) -> Vec<(&'static str, String)> {
    vec![
        ("J0", fmt_float(rp.j0().as_f64())),
        ("G_tilde", fmt_float(rp.g_tilde().as_f64())),
        ("gamma_tilde", fmt_float(rp.gamma_tilde().as_f64())),
        ("theta", fmt_float(rp.theta().as_f64())),
    ]
}

/// Grid as `x,y,quantity` rows, `y` outer and `x` inner.
pub fn grid_to_csv<T: Real>(grid: &SweepGrid<T>) -> String {
    let mut t = CsvTable::new([grid.x.kind.name(), grid.y.kind.name(), grid.quantity.name()]);
    let mut meta = vec![("quantity", grid.quantity.name().to_string())];
    meta.extend(params_meta(&grid.params));
    t.push_meta(meta);
    for (j, &y) in grid.y.values.iter().enumerate() {
        for (i, &x) in grid.x.values.iter().enumerate() {
            t.rows
                .push(vec![x.as_f64(), y.as_f64(), grid.at(i, j).as_f64()]);
        }
    }
    t.to_csv(&[])
}

pub fn grid_from_csv<T: Real>(text: &str) -> Result<SweepGrid<T>, ParseError> {
    let t = CsvTable::parse(text)?;
    if t.columns.len() != 3 {
        return Err(ParseError::Columns(t.columns.join(",")));
    }
    let axis = |name: &str| {
        AxisKind::from_name(name)
            .ok_or_else(|| ParseError::Columns(format!("unknown axis `{name}`")))
    };
    let (xk, yk) = (axis(&t.columns[0])?, axis(&t.columns[1])?);
    let quantity = Quantity::from_name(&t.columns[2])
        .ok_or_else(|| ParseError::Columns(format!("unknown quantity `{}`", t.columns[2])))?;
    let rp = ReducedParams::new(
        T::lit(t.meta_f64("J0")?),
        T::lit(t.meta_f64("G_tilde")?),
        T::lit(t.meta_f64("gamma_tilde")?),
        T::lit(t.meta_f64("theta")?),
    )
    .map_err(|e| ParseError::Shape(e.to_string()))?;

    let first_y = t.rows.first().map(|r| r[1]);
    let xs: Vec<f64> = t
        .rows
        .iter()
        .take_while(|r| Some(r[1]) == first_y)
        .map(|r| r[0])
        .collect();
    let nx = xs.len();
    if nx == 0 || t.rows.len() % nx != 0 {
        return Err(ParseError::Shape(format!(
            "{} rows do not form rows of {nx}",
            t.rows.len()
        )));
    }
    let ys: Vec<f64> = t.rows.iter().step_by(nx).map(|r| r[1]).collect();
    for (k, r) in t.rows.iter().enumerate() {
        if r[0] != xs[k % nx] || r[1] != ys[k / nx] {
            return Err(ParseError::Shape(format!(
                "row {} breaks the grid order",
                k + 1
            )));
        }
    }
    let increasing = |v: &[f64]| v.windows(2).all(|w| w[1] > w[0]);
    if !increasing(&xs) || !increasing(&ys) {
        return Err(ParseError::Shape("axes must be strictly increasing".into()));
    }
    let to_t = |v: Vec<f64>| v.into_iter().map(T::lit).collect::<Vec<T>>();
    Ok(SweepGrid {
        quantity,
        params: rp,
        x: Axis {
            kind: xk,
            values: to_t(xs),
        },
        y: Axis {
            kind: yk,
            values: to_t(ys),
        },
        values: t.rows.iter().map(|r| T::lit(r[2])).collect(),
    })
}

pub const CONTOUR_COLUMNS: [&str; 3] = ["polyline_id", "x", "y"];

pub fn contour_to_csv<T: Real>(set: &ContourSet<T>) -> String {
    let mut t = CsvTable::new(CONTOUR_COLUMNS);
    t.push_meta([
        ("level", fmt_float(set.level.as_f64())),
        ("x_axis", set.x_kind.name().to_string()),
        ("y_axis", set.y_kind.name().to_string()),
    ]);
    for (id, line) in set.polylines.iter().enumerate() {
        for &(x, y) in line {
            t.rows.push(vec![id as f64, x.as_f64(), y.as_f64()]);
        }
    }
    t.to_csv(&[0])
}

pub fn contour_from_csv<T: Real>(text: &str) -> Result<ContourSet<T>, ParseError> {
    let t = CsvTable::parse(text)?;
    t.expect_columns(&CONTOUR_COLUMNS)?;
    let axis = |key: &str| {
        let name = t
            .meta_value(key)
            .ok_or_else(|| ParseError::MissingMeta(key.into()))?;
        AxisKind::from_name(name).ok_or_else(|| ParseError::MissingMeta(format!("{key}={name}")))
    };
    let mut polylines: Vec<Vec<(T, T)>> = Vec::new();
    for r in &t.rows {
        let id = r[0] as usize;
        if id == polylines.len() {
            polylines.push(Vec::new());
        } else if id + 1 != polylines.len() {
            return Err(ParseError::Shape(format!("polyline id {id} out of order")));
        }
        polylines[id].push((T::lit(r[1]), T::lit(r[2])));
    }
    Ok(ContourSet {
        level: T::lit(t.meta_f64("level")?),
        x_kind: axis("x_axis")?,
        y_kind: axis("y_axis")?,
        polylines,
    })
}

pub const TABLE_COLUMNS: [&str; 7] = [
    "table",
    "J0",
    "T_K",
    "G_over_kappa0",
    "omega_argmin",
    "mu_min",
    "power_W",
];

/// Table rows; `γ̃` goes to one `# table=N gamma_tilde=...` line per table.
pub fn table_rows_to_csv<T: Real>(rows: &[TableRow<T>]) -> String {
    let mut t = CsvTable::new(TABLE_COLUMNS);
    let mut seen: Vec<Table> = Vec::new();
    for r in rows {
        if !seen.contains(&r.table) {
            seen.push(r.table);
            t.push_meta([
                ("table", r.table.number().to_string()),
                ("gamma_tilde", fmt_float(r.gamma_tilde.as_f64())),
            ]);
        }
        t.rows.push(vec![
            f64::from(r.table.number()),
            r.j0.as_f64(),
            r.temperature_k.as_f64(),
            r.g_tilde.as_f64(),
            r.omega_tilde_argmin.as_f64(),
            r.mu_min.as_f64(),
            r.power_w.as_f64(),
        ]);
    }
    t.to_csv(&[0])
}

pub fn table_rows_from_csv<T: Real>(text: &str) -> Result<Vec<TableRow<T>>, ParseError> {
    let t = CsvTable::parse(text)?;
    t.expect_columns(&TABLE_COLUMNS)?;
    let gamma_of = |n: u8| -> Result<f64, ParseError> {
        let line = t
            .meta
            .iter()
            .find(|l| l.iter().any(|(k, v)| k == "table" && v.parse() == Ok(n)))
            .ok_or_else(|| ParseError::MissingMeta(format!("table={n}")))?;
        line.iter()
            .find(|(k, _)| k == "gamma_tilde")
            .and_then(|(_, v)| v.parse().ok())
            .ok_or_else(|| ParseError::MissingMeta(format!("gamma_tilde for table {n}")))
    };
    t.rows
        .iter()
        .map(|r| {
            let n = r[0] as u8;
            let table = Table::from_number(n)
                .filter(|_| r[0] == f64::from(n))
                .ok_or_else(|| ParseError::Shape(format!("unknown table {}", r[0])))?;
            Ok(TableRow {
                table,
                j0: T::lit(r[1]),
                temperature_k: T::lit(r[2]),
                g_tilde: T::lit(r[3]),
                omega_tilde_argmin: T::lit(r[4]),
                mu_min: T::lit(r[5]),
                gamma_tilde: T::lit(gamma_of(n)?),
                power_w: T::lit(r[6]),
            })
        })
        .collect()
}
