#![no_main]

use libfuzzer_sys::fuzz_target;
use topcoh::homology::{parse_coo, write_coo};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(m) = parse_coo(text) else { return };
    assert_eq!(parse_coo(&write_coo(&m)).expect("written matrix parses"), m);
});
