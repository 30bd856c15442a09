#![no_main]

use libfuzzer_sys::fuzz_target;
use rbc_core::dmc::{Term, TheoremId};
use rbc_core::gaussian::Strategy;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(t) = Term::parse(s) {
        assert_eq!(Term::parse(&t.to_string()).expect("own output parses"), t);
    }
    let _ = s.parse::<TheoremId>();
    let _ = s.parse::<Strategy>();
});
