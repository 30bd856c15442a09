#![no_main]

use std::path::Path;

use libfuzzer_sys::fuzz_target;
use rbc_cli::scenario::parse_scenario;

// Relative channel paths resolve under a directory that never exists, so
// only the in-memory parsing and validation run.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let _ = parse_scenario(s, Path::new("/nonexistent-fuzz-base"));
});
