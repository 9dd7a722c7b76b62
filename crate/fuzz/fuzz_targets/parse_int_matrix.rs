#![no_main]

use libfuzzer_sys::fuzz_target;
use topcoh::lifting::parse_int_matrix;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(rows) = parse_int_matrix(text) {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n));
    }
});
