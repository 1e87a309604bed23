use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use greyfrac::io::{parse_curve_csv, parse_series_csv, parse_trace_csv, write_series_csv};
use greyfrac::results::{parse_fit, parse_results};
use greyfrac::{benchmark, datasets};
use greyfrac_core::{frac_reduce, time_response, FracOrder, GreyParams};

fn greyfrac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_greyfrac")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn lsm_fit_prints_the_reference_error() {
    let out = greyfrac(&["fit", "--dataset", "wuhan", "--r", "0.25", "--estimator", "lsm"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let line = text.lines().find(|l| l.starts_with("MAPE")).unwrap();
    let mape: f64 = line.split_whitespace().nth(1).unwrap().trim_end_matches('%').parse().unwrap();
    assert!((mape - 1.57).abs() <= 0.3);
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = ["fit", "--dataset", "wuhan", "--r", "0.25", "--estimator", "adcso", "--seed", "1"];
    let first = greyfrac(&args);
    let second = greyfrac(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let args = ["order-search", "--dataset", "zhejiang", "--step", "0.1", "--estimator", "pso", "--repeats", "2", "--seed", "5"];
    assert_eq!(greyfrac(&args).stdout, greyfrac(&args).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(greyfrac(&["fit", "--dataset", "wuhan", "--r", "0"]).status.code(), Some(1));
    assert_eq!(greyfrac(&["fit", "--dataset", "wuhan"]).status.code(), Some(1));
    assert_eq!(greyfrac(&["forecast", "--dataset", "wuhan", "--horizon", "0"]).status.code(), Some(1));
    assert_eq!(greyfrac(&["order-search", "--dataset", "wuhan", "--step", "0"]).status.code(), Some(1));
    assert_eq!(greyfrac(&["fit", "--csv", "/nonexistent/x.csv", "--r", "0.5"]).status.code(), Some(2));
    assert_eq!(greyfrac(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.csv", "label,value\n1,10\n2,abc\n3,12\n");
    let out = greyfrac(&["fit", "--csv", &bad, "--r", "0.5", "--estimator", "lsm"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    // Constant accumulation differences make the design singular.
    let flat = write(dir.path(), "flat.csv", "label,value\n1,5\n2,5\n3,5\n4,5\n");
    let out = greyfrac(&["fit", "--csv", &flat, "--r", "1", "--estimator", "lsm"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));

    let cfg = write(dir.path(), "bad.toml", "[cso]\nN = 0\n");
    let out = greyfrac(&["fit", "--dataset", "wuhan", "--r", "0.5", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn csv_of_the_reference_table_loads_as_the_embedded_series() {
    let dir = tempfile::tempdir().unwrap();
    let text = "label,value\n2011,714700\n2012,765000\n2013,860412\n2014,1005200\n2015,1061400\n";
    let path = write(dir.path(), "wuhan.csv", text);
    assert_eq!(greyfrac::io::load_csv(Path::new(&path)).unwrap(), datasets::wuhan().series);
    let from_csv = greyfrac(&["fit", "--csv", &path, "--r", "0.5", "--estimator", "lsm"]);
    let embedded = greyfrac(&["fit", "--dataset", "wuhan", "--r", "0.5", "--estimator", "lsm"]);
    let body = |o: &Output| stdout(o).lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(body(&from_csv), body(&embedded));
}

#[test]
fn fit_report_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fit.json");
    let out = greyfrac(&["fit", "--dataset", "zhejiang", "--r", "0.5", "--estimator", "pso", "--repeats", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let record = parse_fit(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(record.estimator, "PSO");
    assert_eq!(record.repeats, 3);
    assert_eq!(record.actual, datasets::ZHEJIANG_VALUES.to_vec());
    assert!(stdout(&out).contains(&format!("{:.2}%", record.mape)));
}

#[test]
fn forecast_one_step_on_wuhan() {
    let out = greyfrac(&["forecast", "--dataset", "wuhan", "--horizon", "1", "--repeats", "1", "--step", "0.05"]);
    assert!(out.status.success());
    let rows = parse_series_csv(&format!("{}3000,1\n3001,1\n", stdout(&out)));
    // One data row labelled 2016; pad rows only satisfy the minimum length.
    assert!(rows.is_err());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    let (label, value) = lines[1].split_once(',').unwrap();
    assert_eq!(label, "2016");
    assert!(value.parse::<f64>().unwrap() > 0.0);
}

#[test]
fn forecast_continues_a_model_generated_series() {
    let (r, a, b, x1) = (0.5, -0.002, 5.0, 100.0);
    let params = GreyParams::new(FracOrder::new(r).unwrap(), a, b).unwrap();
    let acc: Vec<f64> = (0..11).map(|k| time_response(&params, x1, k).unwrap()).collect();
    let full = frac_reduce(&acc, params.r).unwrap();
    let labels: Vec<i64> = (1..=8).collect();
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "gen.csv", &write_series_csv(&labels, &full[..8]));
    let out_path = dir.path().join("pred.csv");
    let out = greyfrac(&["forecast", "--csv", &path, "--horizon", "3", "--estimator", "lsm", "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&out_path).unwrap(), stdout(&out));
    let text = stdout(&out);
    let rows: Vec<(i64, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let (k, v) = l.split_once(',').unwrap();
            (k.parse().unwrap(), v.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.iter().map(|r| r.0).collect::<Vec<_>>(), vec![9, 10, 11]);
    for ((_, got), want) in rows.iter().zip(&full[8..]) {
        assert!(((got - want) / want).abs() < 1e-6, "{got} vs {want}");
    }
}

#[test]
fn order_search_curve_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let out = greyfrac(&["order-search", "--dataset", "wuhan", "--estimator", "lsm", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let curve = parse_curve_csv(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(curve.len(), 100);
    let best = curve.iter().min_by(|x, y| x.mean_error.total_cmp(&y.mean_error)).unwrap();
    assert!(stdout(&out).contains(&format!("argmin     r={} ", best.r)));
}

#[test]
fn benchmark_outputs_agree_with_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = greyfrac(&["benchmark", "--dataset", "wuhan", "--repeats", "3", "--seed", "7", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let table = stdout(&out);
    let records = parse_results(&fs::read_to_string(dir.path().join("results.json")).unwrap()).unwrap();
    assert_eq!(records.len(), 9);
    for (row, chunk) in table.lines().skip(2).zip(records.chunks(3)) {
        assert!(row.starts_with(&chunk[0].estimator));
        for record in chunk {
            assert!(row.contains(&benchmark::cell_text(record)), "{row}");
        }
    }
    for record in &records {
        if record.estimator == "LSM" {
            assert_eq!(record.stddev, 0.0);
            assert_eq!(record.repeats, 1);
        } else {
            assert_eq!(record.seed, Some(7));
            assert_eq!(record.repeats, 3);
        }
    }
    let traces: Vec<_> = fs::read_dir(dir.path().join("traces")).unwrap().collect();
    assert_eq!(traces.len(), 3 + 2 * 3 * 3);
    for entry in traces {
        let trace = parse_trace_csv(&fs::read_to_string(entry.unwrap().path()).unwrap()).unwrap();
        assert!(trace.windows(2).all(|w| w[1] <= w[0]));
    }
}
