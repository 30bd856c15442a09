#![no_main]

use libfuzzer_sys::fuzz_target;
use rbc_core::gaussian::GaussianModel;
use rbc_core::table::{parse_number, read_frontier_table, Table};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let _ = parse_number(s);
    if let Ok(t) = Table::parse(s) {
        let again = Table::parse(&t.to_csv()).expect("own output parses");
        assert_eq!(again.to_csv(), t.to_csv());
        let _ = read_frontier_table(GaussianModel::B, &t);
        let _ = read_frontier_table(GaussianModel::C, &t);
    }
});
