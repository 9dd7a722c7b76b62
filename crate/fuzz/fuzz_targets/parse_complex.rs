#![no_main]

use libfuzzer_sys::fuzz_target;
use topcoh::complexes::{parse_complex, write_complex};

// Anything that parses must survive a write/parse cycle unchanged.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(k) = parse_complex(text) else { return };
    let written = write_complex(&k);
    let again = parse_complex(&written).expect("written complex parses");
    assert_eq!(write_complex(&again), written);
});
