#![no_main]

use greyfrac::io::{parse_series_csv, write_series_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(series) = parse_series_csv(text) {
        // Anything accepted must survive a write/parse round trip.
        let again = parse_series_csv(&write_series_csv(series.labels(), series.values())).unwrap();
        assert_eq!(again, series);
    }
});
