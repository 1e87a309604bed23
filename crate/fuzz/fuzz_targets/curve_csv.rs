#![no_main]

use greyfrac::io::{parse_curve_csv, write_curve_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(curve) = parse_curve_csv(text) {
        assert_eq!(parse_curve_csv(&write_curve_csv(&curve)).unwrap(), curve);
    }
});
