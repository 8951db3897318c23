#![no_main]

use libfuzzer_sys::fuzz_target;
use polythresh::experiments::SweepConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cfg) = SweepConfig::from_toml_str(text) {
        // Validation expands the grid without sampling; it must not panic.
        let _ = cfg.validate();
    }
});
