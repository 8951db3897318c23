#![no_main]

use libfuzzer_sys::fuzz_target;
use polythresh::experiments::parse_point_csv;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(point) = parse_point_csv(text) {
        assert!(point.iter().all(|v| v.is_finite()));
    }
});
