#![no_main]

use libfuzzer_sys::fuzz_target;
use rbc_core::info::JointPmf;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(j) = JointPmf::from_json_str(s) {
        let total: f64 = j.probs().iter().sum();
        assert!((total - 1.0).abs() <= 1e-9, "accepted a table summing to {total}");
        let _ = JointPmf::from_json_str(&j.to_json().to_string()).expect("own output parses");
    }
});
