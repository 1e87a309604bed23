use greyfrac::config::{parse_config, Config};
use greyfrac::datasets;
use greyfrac::io::{
    parse_curve_csv, parse_series_csv, parse_trace_csv, write_curve_csv, write_series_csv, write_trace_csv,
    CurveRow,
};
use greyfrac::results::{parse_results, write_results, ResultRecord};
use proptest::prelude::*;

#[test]
fn embedded_datasets_are_literal() {
    let w = datasets::wuhan();
    assert_eq!(w.series.labels(), &[2011, 2012, 2013, 2014, 2015]);
    assert_eq!(w.series.values(), &[714700.0, 765000.0, 860412.0, 1005200.0, 1061400.0]);
    let z = datasets::zhejiang();
    assert_eq!(z.series.labels(), &[2007, 2008, 2009, 2010, 2011, 2012, 2013]);
    assert_eq!(
        z.series.values(),
        &[3210300.0, 3272300.0, 3152300.0, 3279100.0, 3411200.0, 3474600.0, 3606700.0]
    );
}

#[test]
fn default_config_matches_reference_settings() {
    let cfg = Config::default();
    assert_eq!((cfg.cso.n_agents, cfg.cso.smp, cfg.cso.srd, cfg.cso.mr), (40, 30, 0.2, 0.2));
    assert_eq!((cfg.cso.c0, cfg.cso.w0, cfg.cso.iter_max), (1.05, 0.6, 300));
    assert_eq!((cfg.pso.n_particles, cfg.pso.c1, cfg.pso.c2), (40, 1.5, 1.5));
    assert_eq!((cfg.pso.w, cfg.pso.iter_max), (0.7, 300));
}

fn series_strategy() -> impl Strategy<Value = (Vec<i64>, Vec<f64>)> {
    (-10_000i64..10_000, 1i64..50, prop::collection::vec(1e-6f64..1e12, 3..20)).prop_map(
        |(start, step, values)| ((0..values.len() as i64).map(|i| start + i * step).collect(), values),
    )
}

fn record_strategy() -> impl Strategy<Value = ResultRecord> {
    (
        "[a-z]{1,8}",
        prop::sample::select(vec!["LSM", "PSO", "ADCSO"]),
        1e-6f64..=2.0,
        0.0f64..100.0,
        0.0f64..10.0,
        1usize..50,
        any::<u64>(),
        any::<u64>(),
    )
        .prop_map(|(dataset, est, r, mean, sd, repeats, seed, ms)| ResultRecord {
            dataset,
            estimator: est.into(),
            r,
            mean_error_pct: mean,
            stddev: sd,
            repeats,
            seed: (est != "LSM").then_some(seed),
            elapsed_ms: ms,
        })
}

proptest! {
    #[test]
    fn series_csv_round_trips((labels, values) in series_strategy()) {
        let series = parse_series_csv(&write_series_csv(&labels, &values)).unwrap();
        prop_assert_eq!(series.labels(), &labels[..]);
        prop_assert_eq!(series.values(), &values[..]);
    }

    #[test]
    fn trace_csv_round_trips(trace in prop::collection::vec(prop_oneof![Just(f64::INFINITY), 0.0f64..1e6], 0..50)) {
        prop_assert_eq!(parse_trace_csv(&write_trace_csv(&trace)).unwrap(), trace);
    }

    #[test]
    fn curve_csv_round_trips(errors in prop::collection::vec((0.0f64..100.0, 0.0f64..5.0), 1..100)) {
        let curve: Vec<CurveRow> = errors
            .iter()
            .enumerate()
            .map(|(i, &(e, s))| CurveRow { r: (i + 1) as f64 / 100.0, mean_error: e, stddev: s })
            .collect();
        prop_assert_eq!(parse_curve_csv(&write_curve_csv(&curve)).unwrap(), curve);
    }

    #[test]
    fn results_round_trip(records in prop::collection::vec(record_strategy(), 0..10)) {
        prop_assert_eq!(parse_results(&write_results(&records)).unwrap(), records);
    }

    #[test]
    fn config_round_trips(n in 1usize..100, m in 2usize..50, srd in 0.01f64..0.99, w in 0.0f64..1.0, spc: bool) {
        let text = format!("[cso]\nN = {n}\nM = {m}\nSRD = {srd}\nSPC = {spc}\n[pso]\nw = {w}\n");
        let cfg = parse_config(&text).unwrap();
        prop_assert_eq!(parse_config(&cfg.to_toml()).unwrap(), cfg);
    }

    #[test]
    fn parsers_never_panic(text in "\\PC{0,200}") {
        let _ = parse_series_csv(&text);
        let _ = parse_trace_csv(&text);
        let _ = parse_curve_csv(&text);
        let _ = parse_results(&text);
        let _ = parse_config(&text);
    }
}
