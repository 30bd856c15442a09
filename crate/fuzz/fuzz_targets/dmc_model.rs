#![no_main]

use libfuzzer_sys::fuzz_target;
use rbc_core::dmc::DmcModel;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let _ = DmcModel::from_json_str(s);
});
