#![no_main]

use libfuzzer_sys::fuzz_target;
use polythresh::experiments::{parse_range, MAX_RANGE_LEN};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(values) = parse_range(text) {
        assert!(!values.is_empty() && values.len() <= MAX_RANGE_LEN);
        assert!(values.windows(2).all(|w| w[0] < w[1]));
    }
});
