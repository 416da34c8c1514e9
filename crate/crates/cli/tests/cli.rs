use std::process::{Command, Output};

use qshape::{full_report, sample_curve, ConvergenceControl, LevelSpec, LineShape};
use qshape_cli::commands::{AnalyzeReport, ConvertReport, CurveData, RlcReport};
use qshape_cli::format::{OutputFormat, Precision};
use qshape_cli::report::Report;
use qshape_cli::tables::Table;

fn qshape(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qshape"))
        .args(args)
        .env_remove("Q_ANALYZER_TOL")
        .output()
        .expect("binary runs")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = qshape(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    qshape(args).status.code().expect("exit code")
}

fn table_json(id: &str, extra: &[&str]) -> Table {
    let mut args = vec!["table", id, "--format", "json"];
    args.extend_from_slice(extra);
    serde_json::from_str(&stdout_ok(&args)).unwrap()
}

#[test]
fn exit_codes_follow_the_contract() {
    assert_eq!(code(&["table", "VI"]), 0);
    assert_eq!(code(&["table", "VII"]), 2);
    assert_eq!(code(&["analyze", "--shape", "thermal"]), 2);
    assert_eq!(
        code(&["analyze", "--shape", "thermal", "--m", "3", "--q", "1"]),
        2
    );
    assert_eq!(code(&["analyze", "--shape", "thermal", "--m", "0.5"]), 2);
    assert_eq!(
        code(&["analyze", "--shape", "rlc", "--q", "1", "--level", "1.5"]),
        2
    );
    assert_eq!(
        code(&["curve", "--shape", "rlc", "--q", "2", "--from", "-1", "--to", "2"]),
        2
    );
    assert_eq!(
        code(&[
            "curve",
            "--shape",
            "gaussian",
            "--from",
            "-1",
            "--to",
            "2",
            "--rj-asymptote"
        ]),
        2
    );
    assert_eq!(code(&["convert", "--temperature", "0", "--x", "1"]), 2);
    assert_eq!(code(&["convert", "--temperature", "300"]), 2);
    assert_eq!(code(&["rlc", "--q", "2", "--decrement", "0.1"]), 2);
    assert_eq!(code(&["rlc", "--r", "1", "--l", "1"]), 2);
}

#[test]
fn numerical_failure_exits_3_and_names_the_stage() {
    let out = qshape(&["analyze", "--shape", "bvd", "--q", "0.5", "--r", "50"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("stage 'peak'"), "{err}");
}

#[test]
fn bad_tolerance_variable_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_qshape"))
        .args(["table", "III"])
        .env("Q_ANALYZER_TOL", "tight")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_qshape"))
        .args(["table", "III"])
        .env("Q_ANALYZER_TOL", "1e-10")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn table_vi_cells_are_the_engine_values() {
    let ctrl = ConvergenceControl::default();
    let t = table_json("VI", &[]);
    assert_eq!(t.rows.len(), 3);
    for (row, n) in t.rows.iter().zip([-1.0, 0.0, 1.0]) {
        let r = full_report(
            &LineShape::GeneralizedThermal { m: 3.0, n },
            LevelSpec::half_power(),
            &ctrl,
        )
        .unwrap();
        let values: Vec<f64> = row[2..].iter().map(|c| c.value.unwrap()).collect();
        // bit-for-bit: no second computation path
        assert_eq!(values, vec![r.x_lower, r.x_peak, r.x_upper, r.q_direct]);
    }
    let published = [
        [1.157465, 2.821439, 5.411575, 0.6632],
        [1.394137, 3.0, 5.525350, 0.7262],
        [1.536495, 3.131020, 5.616138, 0.7675],
    ];
    for (row, want) in t.rows.iter().zip(published) {
        for (cell, w) in row[2..].iter().zip(want) {
            let tol = if w == want[3] { 5e-5 } else { 5e-7 };
            assert!(
                (cell.value.unwrap() - w).abs() < tol,
                "{} vs {w}",
                cell.display
            );
        }
    }
}

#[test]
fn table_iv_reciprocal_column() {
    let t = table_json("IV", &[]);
    let ys: Vec<f64> = t.rows.iter().map(|r| r[1].value.unwrap()).collect();
    for (y, want) in ys.iter().zip([0.1235, 0.1779, 0.2014, 0.3660]) {
        assert!((y - want).abs() < 5e-5, "{y} vs {want}");
    }
    let xs: Vec<f64> = t.rows.iter().map(|r| r[3].value.unwrap()).collect();
    for (x, want) in xs.iter().zip([8.0966, 5.6218, 4.9651, 2.7326]) {
        assert!((x - want).abs() < 5e-5, "{x} vs {want}");
    }
    let q_lambda = t.notes[1].cell.value.unwrap();
    let q_nu = t.notes[2].cell.value.unwrap();
    assert!((q_lambda - 0.831).abs() < 5e-4 && (q_nu - 0.926).abs() < 5e-4);
}

#[test]
fn table_v_ratio_column() {
    let t = table_json("V", &[]);
    let ratios: Vec<f64> = t.rows.iter().map(|r| 100.0 * r[2].value.unwrap()).collect();
    let published = [76.10, 50.0, 50.0, 75.36, 75.36, 74.81, 74.46];
    for (got, want) in ratios.iter().zip(published) {
        assert!((got - want).abs() < 0.01, "{got} vs {want}");
    }
    assert_eq!(t.rows[4][3].display, "0.830726");
}

#[test]
fn json_round_trips_to_identical_text() {
    for id in ["III", "IV", "V", "VI"] {
        for extra in [&[][..], &["--full-precision"][..]] {
            let mut args = vec!["table", id];
            args.extend_from_slice(extra);
            let text = stdout_ok(&args);
            assert_eq!(
                table_json(id, extra).render(OutputFormat::Text),
                text,
                "table {id} {extra:?}"
            );
        }
    }
    let base = ["analyze", "--shape", "thermal", "--m", "5", "--stats", "be"];
    for full in [false, true] {
        let mut args = base.to_vec();
        if full {
            args.push("--full-precision");
        }
        let text = stdout_ok(&args);
        args.extend(["--format", "json"]);
        let parsed: AnalyzeReport = serde_json::from_str(&stdout_ok(&args)).unwrap();
        assert_eq!(
            parsed.render(OutputFormat::Text, Precision::from_flag(full)),
            text
        );
    }
    let rlc_args = ["rlc", "--q", "50", "--shunt-ratio", "5"];
    let text = stdout_ok(&rlc_args);
    let parsed: RlcReport =
        serde_json::from_str(&stdout_ok(&[&rlc_args[..], &["--format", "json"]].concat())).unwrap();
    assert_eq!(parsed.render(OutputFormat::Text, Precision::DISPLAY), text);
}

#[test]
fn analyze_json_schema_is_fixed() {
    let json = stdout_ok(&["analyze", "--shape", "gaussian", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    let mut want = vec![
        "shape",
        "m",
        "n",
        "level_fraction",
        "x_peak",
        "f_peak",
        "x_lower",
        "x_upper",
        "bandwidth",
        "q_direct",
        "q_reciprocal",
        "x_median",
        "area_fraction",
    ];
    let mut got = keys.clone();
    got.sort_unstable();
    want.sort_unstable();
    assert_eq!(got, want);
    assert!(v["q_reciprocal"].is_null());
    assert_eq!(v["shape"], "gaussian");
}

#[test]
fn analyze_examples() {
    let r: AnalyzeReport = serde_json::from_str(&stdout_ok(&[
        "analyze", "--shape", "thermal", "--m", "3", "--stats", "mb", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(r.x_peak, 3.0);
    assert!((r.q_direct - 0.7262).abs() < 5e-5);

    let r: AnalyzeReport = serde_json::from_str(&stdout_ok(&[
        "analyze", "--shape", "rlc", "--q", "1", "--format", "json",
    ]))
    .unwrap();
    assert!((r.x_lower - 0.618034).abs() < 1e-6 && (r.x_upper - 1.618034).abs() < 1e-6);

    let r: AnalyzeReport = serde_json::from_str(&stdout_ok(&[
        "analyze", "--shape", "thermal", "--m", "3", "--n", "-1", "--db", "3", "--format", "json",
    ]))
    .unwrap();
    assert!((r.level_fraction - 0.501187).abs() < 1e-6);

    let json = stdout_ok(&[
        "analyze", "--shape", "bvd", "--q", "50", "--r", "0.5", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(v["x_median"].is_null() && v["area_fraction"].is_null());
}

#[test]
fn curve_csv_matches_engine_bit_for_bit() {
    let csv = stdout_ok(&[
        "curve",
        "--shape",
        "thermal",
        "--m",
        "3",
        "--n",
        "-1",
        "--from",
        "0.01",
        "--to",
        "20",
        "--points",
        "500",
        "--log",
        "--full-precision",
    ]);
    assert!(!csv.contains('\r'));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,f"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let (x, f) = l.split_once(',').unwrap();
            (x.parse().unwrap(), f.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 500);
    let shape = LineShape::GeneralizedThermal { m: 3.0, n: -1.0 };
    let engine = sample_curve(
        &shape,
        0.01,
        20.0,
        500,
        true,
        &ConvergenceControl::default(),
    )
    .unwrap();
    assert_eq!(rows, engine);
    let (x_max, _) = rows
        .iter()
        .cloned()
        .fold((0.0, f64::MIN), |a, b| if b.1 > a.1 { b } else { a });
    assert!((x_max - 2.8214).abs() < 0.05, "{x_max}");
}

#[test]
fn curve_headers_and_asymptote() {
    let csv = stdout_ok(&[
        "curve", "--shape", "rlc", "--q", "10", "--from", "0.5", "--to", "2", "--points", "300",
    ]);
    assert!(csv.starts_with("omega,g\n"));
    assert_eq!(csv.lines().count(), 301);

    let json = stdout_ok(&[
        "curve",
        "--shape",
        "thermal",
        "--m",
        "3",
        "--n",
        "-1",
        "--from",
        "0.5",
        "--to",
        "4",
        "--points",
        "8",
        "--rj-asymptote",
        "--format",
        "json",
    ]);
    let c: CurveData = serde_json::from_str(&json).unwrap();
    for [x, f] in c.points {
        assert_eq!(f, x.powf(2.0));
    }
}

#[test]
fn convert_examples() {
    let get = |args: &[&str]| -> ConvertReport {
        serde_json::from_str(&stdout_ok(&[args, &["--format", "json"]].concat())).unwrap()
    };
    let sun = get(&["convert", "--temperature", "5778", "--peak-of", "m5"]);
    assert!(
        (sun.lambda_m - 501.5e-9).abs() < 0.05e-9,
        "{}",
        sun.lambda_m
    );
    assert!((sun.lambda_p_times_t.unwrap() - 2.897_771_955e-3).abs() < 1e-12);

    let unit = get(&["convert", "--temperature", "1", "--x", "1"]);
    assert!((unit.nu_hz / 2.0837e10 - 1.0).abs() < 1e-4);
    assert_eq!(unit.nu_hz * unit.lambda_m, 299_792_458.0);

    let cmb = get(&["convert", "--temperature", "2.725", "--peak-of", "m3"]);
    assert!((cmb.nu_hz - 160.2e9).abs() < 0.05e9, "{}", cmb.nu_hz);
}

#[test]
fn rlc_examples() {
    let get = |args: &[&str]| -> RlcReport {
        serde_json::from_str(&stdout_ok(&[args, &["--format", "json"]].concat())).unwrap()
    };
    assert!((get(&["rlc", "--restitution", "0.85"]).q - 9.66).abs() < 0.01);
    assert!((get(&["rlc", "--q", "5"]).bandwidth - 0.2).abs() < 1e-14);
    let e = get(&["rlc", "--r", "1", "--l", "1", "--c", "1"]);
    assert_eq!(e.q, 1.0);
    assert!((e.f1_hz.unwrap() - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-15);
    let b = get(&["rlc", "--q", "50", "--shunt-ratio", "0.001"]);
    assert_eq!(b.bvd_status.as_deref(), Some("resonant"));
    assert!((b.bvd_q_estimate.unwrap() - 50.0).abs() < 0.5);
}

#[test]
fn csv_tables_share_display_values() {
    let csv = stdout_ok(&["table", "VI", "--format", "csv"]);
    let t = table_json("VI", &[]);
    let first = csv.lines().nth(1).unwrap();
    let want: Vec<&str> = t.rows[0].iter().map(|c| c.display.as_str()).collect();
    assert_eq!(first, want.join(","));
}
