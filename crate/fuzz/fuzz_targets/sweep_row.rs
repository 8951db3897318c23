#![no_main]

use libfuzzer_sys::fuzz_target;
use polythresh::experiments::{read_csv, write_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(rows) = read_csv(data) else {
        return;
    };
    // Anything that decodes must re-encode to the same cells.
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf).expect("encode");
    let again = read_csv(buf.as_slice()).expect("re-decode");
    assert_eq!(rows.len(), again.len());
    for (a, b) in rows.iter().zip(&again) {
        assert_eq!(a.to_record(), b.to_record());
    }
});
