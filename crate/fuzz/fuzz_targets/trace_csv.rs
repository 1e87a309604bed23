#![no_main]

use greyfrac::io::{parse_trace_csv, write_trace_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(trace) = parse_trace_csv(text) {
        assert_eq!(parse_trace_csv(&write_trace_csv(&trace)).unwrap(), trace);
    }
});
