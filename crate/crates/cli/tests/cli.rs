use std::path::Path;
use std::process::{Command, Output};

use optoforce::io::{contour_from_csv, grid_from_csv, table_rows_from_csv, CsvTable};
use optoforce::{Table, TableRow};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_optoforce"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(
        o.status.success(),
        "exit {:?}: {}",
        o.status.code(),
        String::from_utf8_lossy(&o.stderr)
    );
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn column(t: &CsvTable, name: &str) -> Vec<f64> {
    let c = t.columns.iter().position(|n| n == name).unwrap();
    t.rows.iter().map(|r| r[c]).collect()
}

#[test]
fn sensitivity_point_matches_table_cell() {
    let o = run(&[
        "sensitivity",
        "--J0",
        "0.5",
        "--gamma-tilde",
        "1e-5",
        "--temperature-K",
        "1",
        "--kappa0-rad-s",
        "6283185.307179586",
        "--omega",
        "0.8",
    ]);
    // Mixed sources: the reduced values win, θ stays 0 and a warning is printed.
    let text = stdout(&o);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let t = CsvTable::parse(&text).unwrap();
    assert_eq!(
        t.columns,
        [
            "omega_over_kappa0",
            "phi_over_pi",
            "R_rel",
            "shot",
            "backaction",
            "thermal"
        ]
    );
    assert_eq!(column(&t, "thermal"), vec![0.0]);

    let o = run(&[
        "sensitivity",
        "--J0",
        "0.5",
        "--gamma-tilde",
        "1e-5",
        "--theta",
        "20836.6",
        "--omega",
        "0.8",
    ]);
    let t = CsvTable::parse(&stdout(&o)).unwrap();
    let r = column(&t, "R_rel")[0];
    assert!((r - 1.14).abs() / 1.14 < 0.02, "{r}");
}

#[test]
fn phase_quadrature_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let o = run(&[
        "sensitivity",
        "--omega",
        "0.5",
        "--phi-over-pi",
        "0,0.5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("phase quadrature carries no force signal"));
    assert!(!out.exists());
}

#[test]
fn zero_drive_has_no_backaction() {
    let o = run(&[
        "sensitivity",
        "--J0",
        "0",
        "--omega",
        "0.1,1",
        "--phi-over-pi",
        "0",
    ]);
    let t = CsvTable::parse(&stdout(&o)).unwrap();
    assert!(column(&t, "backaction").iter().all(|&b| b == 0.0));
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.csv");
    let out_s = out.to_str().unwrap();
    for args in [
        vec!["mu-map", "--resolution", "0", "--out", out_s],
        vec!["mu-map", "--x-range", "0,3", "--out", out_s],
        vec!["mu-map", "--mass-kg", "1e-10", "--out", out_s],
        vec!["contour", "--out", out_s],
        vec!["tables", "--table", "3", "--out", out_s],
        vec!["oscillator", "--out", out_s],
        vec!["sensitivity", "--omega", "abc", "--out", out_s],
        vec!["mu-map", "--config", "/nonexistent.json", "--out", out_s],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!out.exists(), "{args:?}");
    }
}

#[test]
fn domain_errors_exit_3() {
    for args in [
        vec!["mu-map", "--G-tilde", "0.5"],
        vec!["sensitivity", "--omega", "0"],
        vec![
            "oscillator",
            "--omega-m-tilde",
            "0.1",
            "--gamma-tilde",
            "1e-3",
        ],
        vec![
            "mu-map",
            "--kappa0-rad-s",
            "1e6",
            "--G-rad-s",
            "6e5",
            "--eta-per-m",
            "4e8",
            "--mass-kg",
            "1e-10",
            "--power-W",
            "1",
            "--wavelength-m",
            "1e-6",
        ],
    ] {
        assert_eq!(run(&args).status.code(), Some(3), "{args:?}");
    }
}

#[test]
fn mu_map_grid_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("mu.csv");
    let o = run(&[
        "mu-map",
        "--resolution",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# quantity=mu J0="));
    let g = grid_from_csv::<f64>(&text).unwrap();
    assert_eq!(g.values.len(), 4);
    assert_eq!(optoforce::io::grid_to_csv(&g), text);
    // μ(G̃=0, ω̃=2) = (1+4)/(4·J0) at J0 = 1/2.
    assert_eq!(g.at(1, 0), 2.5);
}

#[test]
fn mu_map_lossless_sub_sql_band() {
    let o = run(&["mu-map", "--resolution", "60", "--y-range", "0.28,0.499"]);
    let g = grid_from_csv::<f64>(&stdout(&o)).unwrap();
    assert!(g.max() < 0.5, "{}", g.max());
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"J0": 0.1, "G_tilde": 0.46, "gamma_tilde": 1e-3, "theta": 208.366, "omega": [1.0, 1.5], "phi_over_pi": "opt"}"#,
    )
    .unwrap();
    let cfg_s = cfg.to_str().unwrap();
    let t = CsvTable::parse(&stdout(&run(&["sensitivity", "--config", cfg_s]))).unwrap();
    assert_eq!(column(&t, "omega_over_kappa0"), vec![1.0, 1.5]);
    assert!(t
        .meta_value("J0")
        .unwrap()
        .starts_with("1.0000000000000001e-1"));
    let t = CsvTable::parse(&stdout(&run(&[
        "sensitivity",
        "--config",
        cfg_s,
        "--J0",
        "0.02",
    ])))
    .unwrap();
    assert!(t
        .meta_value("J0")
        .unwrap()
        .starts_with("2.0000000000000000e-2"));

    std::fs::write(&cfg, r#"{"J0": 0.1, "unknown_key": 1}"#).unwrap();
    assert_eq!(
        run(&["sensitivity", "--config", cfg_s]).status.code(),
        Some(2)
    );
}

#[test]
fn contour_near_derived_crossing() {
    let o = run(&[
        "contour",
        "--quantity",
        "K",
        "--level",
        "0.5",
        "--resolution",
        "200",
    ]);
    let c = contour_from_csv::<f64>(&stdout(&o)).unwrap();
    let mut hit = false;
    for line in &c.polylines {
        for w in line.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if (y0 - 0.1) * (y1 - 0.1) <= 0.0 && y0 != y1 {
                let x = x0 + (0.1 - y0) / (y1 - y0) * (x1 - x0);
                assert!((x - 0.752).abs() < 5e-3, "{x}");
                hit = true;
            }
        }
    }
    assert!(hit);
}

#[test]
fn contour_above_max_is_header_only() {
    let o = run(&[
        "contour",
        "--quantity",
        "mu",
        "--level",
        "1e9",
        "--resolution",
        "20",
    ]);
    let text = stdout(&o);
    assert_eq!(
        text.lines()
            .filter(|l| !l.starts_with('#'))
            .collect::<Vec<_>>(),
        ["polyline_id,x,y"]
    );
}

#[test]
fn contour_sub_sql_boundary() {
    let o = run(&[
        "contour",
        "--quantity",
        "mu",
        "--level",
        "0.5",
        "--resolution",
        "80",
    ]);
    let c = contour_from_csv::<f64>(&stdout(&o)).unwrap();
    assert!(!c.is_empty());
    assert!(c.polylines.iter().flatten().all(|&(_, g)| g < 0.28));
}

#[test]
fn tables_selector() {
    let rows: Vec<TableRow<f64>> =
        table_rows_from_csv(&stdout(&run(&["tables", "--table", "2"]))).unwrap();
    assert_eq!(rows.len(), 4);
    let cell = rows
        .iter()
        .find(|r| r.j0 == 0.02 && r.g_tilde == 0.0)
        .unwrap();
    assert!((cell.mu_min - 15.73).abs() / 15.73 < 0.02);
    let cell = rows
        .iter()
        .find(|r| r.j0 == 0.1 && r.g_tilde == 0.46)
        .unwrap();
    assert!((cell.omega_tilde_argmin - 1.9).abs() <= 0.1);

    let rows: Vec<TableRow<f64>> =
        table_rows_from_csv(&stdout(&run(&["tables", "--table", "1"]))).unwrap();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r.table == Table::I));
    let cell = rows
        .iter()
        .find(|r| r.j0 == 0.5 && r.temperature_k == 1.0 && r.g_tilde == 0.46)
        .unwrap();
    assert!((cell.mu_min - 0.07).abs() / 0.07 < 0.02);

    let text = stdout(&run(&["tables"]));
    assert_eq!(table_rows_from_csv::<f64>(&text).unwrap().len(), 16);
}

#[test]
fn oscillator_rows() {
    let o = run(&[
        "oscillator",
        "--omega-m-tilde",
        "0.01",
        "--omega",
        "0.005,0.01,0.02,1",
        "--G-tilde",
        "0.3",
    ]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("skipped 2"));
    let t = CsvTable::parse(&stdout(&o)).unwrap();
    assert_eq!(
        t.columns,
        ["omega_over_kappa0", "mu_mo", "mu_free", "ratio"]
    );
    let ratio = column(&t, "ratio");
    assert_eq!(ratio[0], 0.5625);
    // (1 − 10⁻⁴)², i.e. 2e−4 below one.
    assert!((ratio[1] - 0.999_800_01).abs() < 1e-15);
    for r in &t.rows {
        assert!(((r[1] / r[2]) - r[3]).abs() <= 1e-12);
    }

    let o = run(&[
        "oscillator",
        "--omega-m-tilde",
        "1e-9",
        "--resolution",
        "50",
    ]);
    let t = CsvTable::parse(&stdout(&o)).unwrap();
    assert_eq!(t.rows.len(), 50);
    for r in &t.rows {
        assert!(((r[1] - r[2]) / r[2]).abs() < 1e-6);
    }
}

#[test]
fn spectrum_rows() {
    let o = run(&[
        "spectrum",
        "--omega",
        "1",
        "--phi-over-pi",
        "0",
        "--J0",
        "0.5",
    ]);
    let t = CsvTable::parse(&stdout(&o)).unwrap();
    assert_eq!(t.columns, ["omega_over_kappa0", "phi_over_pi", "S_zout"]);
    assert!((t.rows[0][2] - 0.53125).abs() < 1e-15);
}

#[test]
fn output_is_newline_terminated_lf() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    assert!(
        run(&["tables", "--table", "2", "--out", out.to_str().unwrap()])
            .status
            .success()
    );
    let bytes = std::fs::read(Path::new(&out)).unwrap();
    assert!(!bytes.contains(&b'\r'));
    assert_eq!(bytes.last(), Some(&b'\n'));
}
