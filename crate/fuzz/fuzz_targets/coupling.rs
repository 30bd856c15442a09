#![no_main]

use libfuzzer_sys::fuzz_target;
use rbc_core::dmc::AuxiliaryCoupling;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = AuxiliaryCoupling::from_json_str(s) {
        let again = AuxiliaryCoupling::from_json_str(&c.to_json().to_string()).expect("own output parses");
        assert_eq!(again.theorem, c.theorem);
    }
});
