#![no_main]

use greyfrac::results::{parse_results, write_results};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(records) = parse_results(text) {
        assert_eq!(parse_results(&write_results(&records)).unwrap(), records);
    }
});
