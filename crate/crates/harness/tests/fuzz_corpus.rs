use std::fs;
use std::path::Path;

use greyfrac::config::parse_config;
use greyfrac::io::{parse_curve_csv, parse_series_csv, parse_trace_csv, write_curve_csv, write_series_csv, write_trace_csv};
use greyfrac::results::{parse_fit, parse_results, write_results};

fn seeds(target: &str) -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn corpus_seeds_round_trip_through_the_fuzzed_parsers() {
    for text in seeds("series_csv") {
        if let Ok(s) = parse_series_csv(&text) {
            assert_eq!(parse_series_csv(&write_series_csv(s.labels(), s.values())).unwrap(), s);
        }
    }
    for text in seeds("trace_csv") {
        if let Ok(t) = parse_trace_csv(&text) {
            assert_eq!(parse_trace_csv(&write_trace_csv(&t)).unwrap(), t);
        }
    }
    for text in seeds("curve_csv") {
        if let Ok(c) = parse_curve_csv(&text) {
            assert_eq!(parse_curve_csv(&write_curve_csv(&c)).unwrap(), c);
        }
    }
    for text in seeds("config_toml") {
        if let Ok(c) = parse_config(&text) {
            assert_eq!(parse_config(&c.to_toml()).unwrap(), c);
        }
    }
    for text in seeds("results_json") {
        let r = parse_results(&text).unwrap();
        assert_eq!(parse_results(&write_results(&r)).unwrap(), r);
    }
    for text in seeds("fit_json") {
        parse_fit(&text).unwrap();
    }
}

#[test]
fn corpus_contains_accepted_and_rejected_inputs() {
    let accepted = |target: &str, parse: &dyn Fn(&str) -> bool| {
        let seeds = seeds(target);
        let ok = seeds.iter().filter(|s| parse(s)).count();
        assert!(ok > 0, "{target}: no accepted seed");
        ok < seeds.len()
    };
    assert!(accepted("series_csv", &|s| parse_series_csv(s).is_ok()));
    assert!(accepted("trace_csv", &|s| parse_trace_csv(s).is_ok()));
    assert!(accepted("curve_csv", &|s| parse_curve_csv(s).is_ok()));
    assert!(accepted("config_toml", &|s| parse_config(s).is_ok()));
}
