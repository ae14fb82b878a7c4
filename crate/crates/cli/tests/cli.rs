use std::io::Write;
use std::process::{Command, Output};

use meandro::models::{default_ray_angle, ray_trace, QLogModel};
use meandro::C64;
use meandro_cli::{Cell, Table};

fn meandro(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meandro"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn table(o: &Output) -> Table {
    Table::from_csv(&stdout(o)).unwrap()
}

fn float(c: &Cell) -> f64 {
    match c {
        Cell::Float(v) => *v,
        Cell::Int(v) => *v as f64,
        Cell::Text(s) => panic!("expected a number, got {s:?}"),
    }
}

fn config_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn meander_at_origin_sums_to_one() {
    let o = meandro(&["eval", "--z", "0", "--tol", "1e-12"]);
    assert_eq!(o.status.code(), Some(0));
    let t = table(&o);
    assert_eq!(
        t.columns,
        [
            "z_re",
            "z_im",
            "S_re",
            "S_im",
            "tail_bound",
            "terms_used",
            "status"
        ]
    );
    assert!((float(&t.rows[0][2]) - 1.0).abs() < 1e-12);
    assert!(float(&t.rows[0][4]) <= 1e-12);
    assert_eq!(t.rows[0][6], Cell::Text("ok".into()));
}

#[test]
fn malformed_json_exits_with_two() {
    let f = config_file("{\"poles\": \"meander\", \"radius\": {");
    let path = f.path().to_str().unwrap();
    let o = meandro(&["eval", "--z", "0", "--config", path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    assert!(o.stdout.is_empty());

    let o = meandro(&["--json", "eval", "--z", "0", "--config", path]);
    assert_eq!(o.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "config");
}

#[test]
fn schema_violations_exit_with_two() {
    let cases = [
        // pole family does not match the model
        r#"{"poles": "roots_of_unity", "radius": {"c": 0.05, "alpha": 2}, "lambda": 1.5}"#,
        // unknown field
        r#"{"poles": "meander", "radius": {"c": 0.05, "alpha": 2}, "lambda": 1.5, "extra": 1}"#,
        // c outside (0, 1]
        r#"{"poles": "meander", "radius": {"c": 3.0, "alpha": 2}, "lambda": 1.5}"#,
        // models need a Diophantine radius
        r#"{"poles": "meander", "radius": {"table": [[1, 0.1]]}, "lambda": 1.5}"#,
    ];
    for text in cases {
        let f = config_file(text);
        let o = meandro(&["eval", "--z", "0", "--config", f.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{text}");
    }
    assert_eq!(
        meandro(&["eval", "--z", "0", "--x", "1.5"]).status.code(),
        Some(2)
    );
    assert_eq!(meandro(&["eval"]).status.code(), Some(2));
    assert_eq!(meandro(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn config_file_is_used() {
    let f = config_file(r#"{"poles": "meander", "radius": {"c": 0.1, "alpha": 2}, "lambda": 1.5}"#);
    let o = meandro(&[
        "eval",
        "--z",
        "-0.5",
        "--config",
        f.path().to_str().unwrap(),
    ]);
    // -1/2 is a pole of sheet 2
    assert_eq!(o.status.code(), Some(1));
    let t = table(&o);
    assert_eq!(t.rows[0][6], Cell::Text("pole_proximity".into()));
    assert!(float(&t.rows[0][2]).is_nan());
}

#[test]
fn jet_has_order_plus_one_rows() {
    let o = meandro(&["jet", "--order", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let t = table(&o);
    assert_eq!(t.rows.len(), 9);
    // a_k = (-1)^k sum n^k x^n: 1, -2, 6, -26, 150
    for (k, want) in [1.0, -2.0, 6.0, -26.0, 150.0].iter().enumerate() {
        assert_eq!(t.rows[k][0], Cell::Int(k as i64));
        assert!((float(&t.rows[k][1]) - want).abs() < 1e-9 * want.abs());
    }
}

#[test]
fn qlog_ray_matches_the_library() {
    let o = meandro(&["--model", "qlog-shifted", "--tol", "1e-10", "eval", "--ray"]);
    assert_eq!(o.status.code(), Some(0));
    let t = table(&o);
    assert_eq!(t.rows.len(), 40);
    let model = QLogModel::shifted(C64::new(0.5, 0.0), 0.05, 2.0, 1.5).unwrap();
    let grid: Vec<f64> = (0..40).map(|i| i as f64 * 0.05).collect();
    for (row, p) in t
        .rows
        .iter()
        .zip(ray_trace(&model, default_ray_angle(), &grid, 1e-10))
    {
        let r = p.outcome.unwrap();
        assert!((float(&row[2]) - r.value.re).abs() < 1e-12);
        assert!((float(&row[3]) - r.value.im).abs() < 1e-12);
    }
}

#[test]
fn curve_rows_cover_the_range() {
    let o = meandro(&["curve", "--n", "3", "--x-range", "0,0.9", "--steps", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let t = table(&o);
    assert_eq!(t.columns, ["x", "branch", "root"]);
    let xs: std::collections::BTreeSet<u64> =
        t.rows.iter().map(|r| float(&r[0]).to_bits()).collect();
    assert_eq!(xs.len(), 10);
    assert!(t.rows.iter().all(|r| float(&r[2]).is_finite()));
}

#[test]
fn covering_sweep() {
    let o = meandro(&["covering", "--alpha", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let t = table(&o);
    assert_eq!(t.rows.len(), 8);
    assert!(t.rows.iter().all(|r| r[8] == Cell::Text("pass".into())));

    let o = meandro(&["covering", "--alpha", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let t = table(&o);
    let bad: Vec<_> = t
        .rows
        .iter()
        .filter(|r| r[8] != Cell::Text("pass".into()))
        .collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0][8], Cell::Text("hypothesis_violated".into()));
}

#[test]
fn residual_scan_marks_poles() {
    let o = meandro(&[
        "residual",
        "--re-range",
        "-1,0.5",
        "--im-range",
        "0,0",
        "--nx",
        "4",
        "--ny",
        "1",
        "--cutoff",
        "1000",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let t = table(&o);
    // -1 is the pole of sheet 1, 0.5 lies far from every pole
    assert_eq!(t.rows[0][2], Cell::Text("out".into()));
    assert_eq!(t.rows[0][3], Cell::Int(1));
    assert_eq!(t.rows[3][2], Cell::Text("in".into()));
}

#[test]
fn polar_commands() {
    let o = meandro(&["--model", "qlog", "polar", "--omega", "1", "--z", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!((float(&table(&o).rows[0][2]) - 2f64.ln()).abs() < 1e-12);

    let o = meandro(&["--model", "qlog", "polar", "--omega", "1", "--sheet", "3"]);
    let t = table(&o);
    assert_eq!(t.rows.len(), 1);
    assert!((float(&t.rows[0][1]) - 0.125 / 3.0).abs() < 1e-10);
}

#[test]
fn gevrey_summary_and_smallest_term() {
    let o = meandro(&["gevrey", "--z", "0.01"]);
    assert_eq!(o.status.code(), Some(0));
    let t = table(&o);
    let alpha = float(&t.rows[0][1]);
    assert!((alpha - 1.0).abs() < 0.15);
    assert_eq!(t.rows[0][5], Cell::Text("divergent_like".into()));
    assert_eq!(t.rows[0][8], Cell::Int(69));
    assert!(float(&t.rows[0][11]) < -60.0);
}

#[test]
fn csv_output_round_trips() {
    let runs: [&[&str]; 5] = [
        &["--model", "qlog", "eval", "--ray", "--t-max", "1.5"],
        &["jet", "--order", "12"],
        &["curve"],
        &["covering", "--alpha", "3"],
        &["residual", "--nx", "9", "--ny", "9"],
    ];
    for args in runs {
        let text = stdout(&meandro(args));
        assert!(!text.is_empty());
        assert_eq!(Table::from_csv(&text).unwrap().to_csv(), text, "{args:?}");
    }
}

#[test]
fn output_is_independent_of_thread_count() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_meandro"))
            .args(["--model", "qlog", "eval", "--ray"])
            .env("MEANDRO_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(one, run("7"));
}

#[test]
fn json_format_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("jet.json");
    let o = meandro(&[
        "jet",
        "--order",
        "3",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[1]["k"], 1);
    assert!((rows[1]["a_re"].as_f64().unwrap() + 2.0).abs() < 1e-9);
}
